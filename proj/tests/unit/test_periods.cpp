#include <doctest.h>

#include <cmath>
#include <numeric>

#include "gfc/contour.hpp"
#include "gfc/errors.hpp"
#include "gfc/lattice.hpp"
#include "gfc/periods.hpp"

using namespace gfc;

TEST_SUITE("periods") {
TEST_CASE("matrix shapes") {
    const QuadConfig cfg{};
    const auto a = assemble(validate_spec(2, 3, {2.0}), cfg);
    CHECK(a.entries.rows() == 24);
    CHECK(a.entries.cols() == 1);
    CHECK(lattice_rank(real_split(a)) == 2);
    const auto b = assemble(validate_spec(3, 2, {}), cfg);
    CHECK(b.entries.rows() == 9);
    CHECK(b.entries.cols() == 1);
    CHECK(b.cols[0].alpha == std::vector<int>{0, 2});
    const auto c = assemble(validate_spec(4, 2, {}), cfg, true);
    CHECK(c.entries.rows() == 18);
    CHECK(c.entries.cols() == 3);
    CHECK(c.base_integrals.rows() == 2);
    CHECK(c.base_point == default_base_point(c.spec.branch_points));
    for (Eigen::Index col = 0; col < 3; ++col) {
        CHECK(c.entries(0, col) == Complex(0.0, 0.0));
        CHECK(c.entries(1, col) == Complex(0.0, 0.0));
    }
}

TEST_CASE("base integrals are finite and nonzero") {
    const auto spec = validate_spec(3, 3, {Complex(2.0, 1.0)});
    const auto J = base_integrals(spec, QuadConfig{});
    CHECK(J.rows() == 3);
    CHECK(J.cols() == genus(spec));
    for (Eigen::Index i = 0; i < J.rows(); ++i) {
        for (Eigen::Index c = 0; c < J.cols(); ++c) {
            CHECK(std::isfinite(std::abs(J(i, c))));
            CHECK(std::abs(J(i, c)) > 1e-6);
        }
    }
}

TEST_CASE("Beta magnitude for k=4, alpha=(0,2)") {
    const auto pm = assemble(validate_spec(4, 2, {}), QuadConfig{});
    const double b = std::tgamma(0.25) * std::tgamma(0.5) / std::tgamma(0.75);
    CHECK(std::abs(std::abs(pm.base_integrals(1, 0) - pm.base_integrals(0, 0)) - b) / b < 1e-9);
}

TEST_CASE("unconjugated commutator entry") {
    const auto spec = validate_spec(4, 2, {});
    const auto pm = assemble(spec, QuadConfig{});
    for (Eigen::Index col = 0; col < pm.entries.cols(); ++col) {
        const auto& f = pm.cols[col];
        const Complex pre = (1.0 - zeta_power(4, f.m[0])) * (1.0 - zeta_power(4, f.m[1])) / 4.0;
        CHECK(std::abs(commutator_prefactor(f, 1, 2, 4) - pre) < 1e-15);
        const Complex expected = pre * (pm.base_integrals(1, col) - pm.base_integrals(0, col));
        CHECK(std::abs(pm.entries(0, col) - expected) <= 1e-14 * std::abs(expected));
    }
}

TEST_CASE("zero-prefactor law is exact") {
    for (int k = 2; k <= 4; ++k) {
        const auto spec = validate_spec(k, 3, {Complex(2.0, 0.5)});
        const auto pm = assemble(spec, QuadConfig{});
        for (Eigen::Index r = 0; r < pm.entries.rows(); ++r) {
            const auto& w = std::get<ConjCommWord>(pm.rows[r]);
            for (Eigen::Index c = 0; c < pm.entries.cols(); ++c) {
                const auto& m = pm.cols[c].m;
                if (m[w.j - 1] % k == 0 || m[w.l - 1] % k == 0) {
                    CHECK(pm.entries(r, c) == Complex(0.0, 0.0));
                    CHECK(commutator_prefactor(pm.cols[c], w.j, w.l, k) == Complex(0.0, 0.0));
                }
            }
        }
    }
}

TEST_CASE("conjugated entries differ by the conjugation phase") {
    const auto spec = validate_spec(3, 3, {Complex(-1.5, 0.0)});
    const auto pm = assemble(spec, QuadConfig{});
    const Eigen::Index per_pair = 27;
    for (Eigen::Index r = 0; r < pm.entries.rows(); ++r) {
        const auto& w = std::get<ConjCommWord>(pm.rows[r]);
        const Eigen::Index base_row = (r / per_pair) * per_pair;
        const auto& b = std::get<ConjCommWord>(pm.rows[base_row]);
        REQUIRE(b.g == std::vector<int>{0, 0, 0});
        REQUIRE(b.j == w.j);
        REQUIRE(b.l == w.l);
        for (Eigen::Index c = 0; c < pm.entries.cols(); ++c) {
            const Complex base = pm.entries(base_row, c);
            if (std::abs(base) == 0.0) continue;
            CHECK(std::abs(pm.entries(r, c) / base - conjugation_phase(w, pm.cols[c], 3)) < 1e-10);
        }
    }
}

TEST_CASE("root-of-unity sums vanish") {
    for (int k = 2; k <= 8; ++k) {
        for (int m = -2 * k; m <= 2 * k; ++m) {
            // Exact arithmetic: the exponents m * j mod k hit each residue class of
            // the subgroup generated by m equally often, so count them.
            std::vector<int> hits(k, 0);
            for (int j = 0; j < k; ++j) ++hits[((m * j) % k + k) % k];
            if (m % k == 0) {
                CHECK(hits[0] == k);
                continue;
            }
            const int period = k / std::gcd(std::abs(m), k);
            for (int e = 0; e < k; ++e) CHECK(hits[e] == (e % (k / period) == 0 ? k / period : 0));
            Complex sum = 0.0;
            for (int j = 0; j < k; ++j) sum += zeta_power(k, static_cast<std::int64_t>(m) * j);
            CHECK(std::abs(sum) < 1e-13);
        }
    }
}

TEST_CASE("tighter tolerance moves entries by less than ten times the looser one") {
    const auto spec = validate_spec(3, 3, {Complex(2.0, 1.0)});
    const QuadConfig loose{10, 1e-8, 14};
    const QuadConfig tight{10, 1e-11, 14};
    const auto a = assemble(spec, loose);
    const auto b = assemble(spec, tight);
    const double scale = b.entries.cwiseAbs().maxCoeff();
    CHECK((a.entries - b.entries).cwiseAbs().maxCoeff() <= 10.0 * loose.rel_tol * scale);
}

TEST_CASE("power rows and explicit base points") {
    const auto spec = validate_spec(3, 2, {});
    const auto pm = assemble(spec, QuadConfig{}, true, Complex(0.5, 1.0));
    CHECK(pm.base_point == Complex(0.5, 1.0));
    CHECK_THROWS_AS(assemble(spec, QuadConfig{}, false, Complex(1.0, 0.0)), BasePointOnBranchPoint);
    const auto other = assemble(spec, QuadConfig{});
    // A different base point changes J but not the lattice.
    CHECK(same_lattice(extract_basis(real_split(pm), spec).basis, extract_basis(real_split(other), spec).basis));
}
}
