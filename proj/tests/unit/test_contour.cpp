#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gfc/contour.hpp"
#include "gfc/errors.hpp"

using namespace gfc;
using std::numbers::pi;

namespace {
const Complex I{0.0, 1.0};

Path circle(Complex center, double radius, double start, int orientation) {
    Path p;
    p.segments.push_back(ArcSegment{center, radius, start, start + orientation * 2.0 * pi, orientation});
    return p;
}

double max_log_diff(const BranchState& a, const BranchState& b) {
    double m = 0.0;
    for (std::size_t t = 0; t < a.logs.size(); ++t) m = std::max(m, std::abs(a.logs[t] - b.logs[t]));
    return m;
}

void check_log_identities(const BranchState& s, std::span<const Complex> R) {
    CHECK(std::abs(std::exp(s.logs[0]) + s.point) <= 1e-12 * std::abs(s.point));
    for (std::size_t t = 1; t < R.size(); ++t) {
        const Complex d = s.point - R[t];
        CHECK(std::abs(std::exp(s.logs[t]) - d) <= 1e-12 * std::abs(d));
    }
}
}  // namespace

TEST_SUITE("contour") {
TEST_CASE("principal logs at the base point") {
    const std::vector<Complex> R{0.0, 1.0};
    const auto s = init_branch(I, R);
    CHECK(std::abs(s.logs[0] - Complex(0.0, -pi / 2)) < 1e-15);
    CHECK(std::abs(s.logs[1] - Complex(0.5 * std::log(2.0), 3.0 * pi / 4)) < 1e-15);
    CHECK_THROWS_AS(init_branch(0.0, R), BasePointOnBranchPoint);
    const std::vector<Complex> R3{0.0, 1.0, 2.0};
    const auto s3 = init_branch(2.0 * I, R3);
    REQUIRE(s3.logs.size() == 3);
    check_log_identities(s3, R3);
    CHECK(std::abs(s3.logs[2] - std::log(2.0 * I - 2.0)) < 1e-15);
}

TEST_CASE("monodromy of single loops") {
    const std::vector<Complex> R{0.0, 1.0};
    const auto start = init_branch(0.25, R);
    const auto ccw = continue_adaptive(start, circle(0.0, 0.25, 0.0, 1), R);
    CHECK(std::abs(ccw.logs[0] - start.logs[0] - Complex(0.0, 2.0 * pi)) < 1e-10);
    CHECK(std::abs(ccw.logs[1] - start.logs[1]) < 1e-10);
    check_log_identities(ccw, R);

    const auto s2 = init_branch(1.25, R);
    const auto cw = continue_adaptive(s2, circle(1.0, 0.25, 0.0, -1), R);
    CHECK(std::abs(cw.logs[1] - s2.logs[1] - Complex(0.0, -2.0 * pi)) < 1e-10);
    CHECK(std::abs(cw.logs[0] - s2.logs[0]) < 1e-10);
}

TEST_CASE("empty path leaves the state unchanged") {
    const std::vector<Complex> R{0.0, 1.0};
    const auto s = init_branch(I, R);
    const auto t = continue_along(s, Path{}, 8, R);
    CHECK(t.point == s.point);
    CHECK(t.logs == s.logs);
}

TEST_CASE("coarse steps are reported") {
    const std::vector<Complex> R{0.0, 1.0};
    const auto s = init_branch(0.25, R);
    CHECK_THROWS_AS(continue_along(s, circle(0.0, 0.25, 0.0, 1), 2, R), StepTooCoarse);
}

TEST_CASE("path reversal and refinement stability") {
    const std::vector<Complex> R{0.0, 1.0, Complex(2.0, 1.0)};
    const Complex z0 = default_base_point(R);
    for (int target = 1; target <= 3; ++target) {
        const Path loop = loop_path(z0, target, R, 1);
        const auto s = init_branch(z0, R);
        const auto there = continue_adaptive(s, loop, R);
        const auto back = continue_adaptive(there, reversed(loop), R);
        CHECK(max_log_diff(back, s) < 1e-10);
        CHECK(std::abs(back.point - s.point) < 1e-12);

        const auto coarse = continue_along(s, loop, 64, R);
        const auto fine = continue_along(s, loop, 128, R);
        CHECK(max_log_diff(coarse, fine) < 1e-12);
        for (std::size_t t = 0; t < R.size(); ++t) {
            const Complex expected = (static_cast<int>(t) == target - 1) ? Complex(0.0, 2.0 * pi) : 0.0;
            CHECK(std::abs(there.logs[t] - s.logs[t] - expected) < 1e-10);
        }
    }
}

TEST_CASE("W at principal logs and its monodromy") {
    const Complex lambda{2.0, 0.5};
    const std::vector<Complex> R{0.0, 1.0, lambda};
    const auto form = make_form({0, 1, 1}, 2);
    const Complex w{0.3, 0.7};
    const auto s = init_branch(w, R);
    // Principal logs give the principal square roots factor by factor.
    const Complex expected = 1.0 / (std::sqrt(-w) * std::sqrt(w - 1.0) * std::sqrt(w - lambda));
    CHECK(std::abs(eval_W(s, form, 2) - expected) < 1e-14);

    const auto f4 = make_form({1, 3}, 4);
    const std::vector<Complex> R2{0.0, 1.0};
    const Complex z0 = default_base_point(R2);
    const auto s0 = init_branch(z0, R2);
    const Complex w0 = eval_W(s0, f4, 4);
    const auto c = w_exponents(f4, 4);
    CHECK(c[0] == doctest::Approx(2.0 / 4.0 - 1.0));
    CHECK(c[1] == doctest::Approx(-3.0 / 4.0));
    const auto after1 = continue_adaptive(s0, loop_path(z0, 1, R2, 1), R2);
    CHECK(std::abs(eval_W(after1, f4, 4) - w0 * std::polar(1.0, 2.0 * pi * 2.0 / 4.0)) < 1e-12);
    const auto after2 = continue_adaptive(s0, loop_path(z0, 2, R2, 1), R2);
    CHECK(std::abs(eval_W(after2, f4, 4) - w0 * std::polar(1.0, -2.0 * pi * 3.0 / 4.0)) < 1e-12);
}

TEST_CASE("geometry of the standard loops") {
    const std::vector<Complex> R{0.0, 1.0, 3.0};
    CHECK(branch_diameter(R) == doctest::Approx(3.0));
    CHECK(min_pairwise_distance(R) == doctest::Approx(1.0));
    CHECK(min_clearance(R) == doctest::Approx(1e-3));
    CHECK(loop_radius(R, 1) == doctest::Approx(0.25));
    CHECK(loop_radius(R, 3) == doctest::Approx(0.5));
    const Complex z0 = default_base_point(R);
    CHECK(z0.real() == doctest::Approx(4.0 / 3.0));
    CHECK(z0.imag() == doctest::Approx(6.0));

    const std::vector<Complex> R2{0.0, 1.0};
    const Path p = loop_path(I, 1, R2, 1);
    REQUIRE(p.segments.size() == 3);
    const auto* arc = std::get_if<ArcSegment>(&p.segments[1]);
    REQUIRE(arc != nullptr);
    CHECK(arc->orientation == 1);
    CHECK(arc->end_angle - arc->start_angle == doctest::Approx(2.0 * pi));
    CHECK(std::abs(arc->center) < 1e-15);
    CHECK(std::abs(start_point(p.segments.front()) - I) < 1e-15);
    CHECK(std::abs(end_point(p.segments.back()) - I) < 1e-15);
    for (std::size_t i = 1; i < p.segments.size(); ++i) {
        CHECK(std::abs(end_point(p.segments[i - 1]) - start_point(p.segments[i])) < 1e-12);
    }
    const Path q = loop_path(I, 1, R2, -1);
    const auto* arc_cw = std::get_if<ArcSegment>(&q.segments[1]);
    REQUIRE(arc_cw != nullptr);
    CHECK(arc_cw->orientation == -1);
    CHECK(arc_cw->end_angle - arc_cw->start_angle == doctest::Approx(-2.0 * pi));
}

TEST_CASE("legs keep clearance from other branch points") {
    // r3 sits almost on the straight line from the base point to r1.
    const std::vector<Complex> R{0.0, 1.0, Complex(0.0, 1e-9 + 1.0)};
    const Complex z0{0.0, 3.0};
    CHECK(segment_clearance(z0, 0.0, R, 1) < min_clearance(R));
    try {
        const auto verts = leg_vertices(z0, 1, R);
        REQUIRE(verts.size() == 3);
        for (std::size_t i = 1; i < verts.size(); ++i) {
            CHECK(segment_clearance(verts[i - 1], verts[i], R, 1) >= min_clearance(R));
        }
        CHECK(verts.back() == R[0]);
    } catch (const ClearanceUnachievable&) {
        CHECK(true);
    }
    const Complex z_default = default_base_point(std::vector<Complex>{0.0, 1.0, Complex(0.5, 1e-9)});
    const std::vector<Complex> tight{0.0, 1.0, Complex(0.5, 1e-9)};
    for (int target = 1; target <= 3; ++target) {
        const Path loop = loop_path(z_default, target, tight, 1);
        CHECK_FALSE(loop.empty());
    }
}
}
