#include "gfc/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "gfc/errors.hpp"
#include "gfc/lattice.hpp"
#include "gfc/periods.hpp"

namespace gfc {

Path word_path(const LetterSequence& letters, const CurveSpec& spec, Complex base_point) {
    Path path;
    for (const Letter& letter : letters) {
        path.append(loop_path(base_point, letter.generator, spec.branch_points, letter.sign));
    }
    return path;
}

Complex integrate_letters(const LetterSequence& letters, const FormIndex& form,
                          const CurveSpec& spec, const QuadConfig& cfg, Complex base_point) {
    const Path path = word_path(letters, spec, base_point);
    const BranchState start = init_branch(base_point, spec.branch_points);
    const auto [value, end] = integrate_smooth(path, start, form, spec, cfg);
    return -value / static_cast<double>(spec.k);
}

Complex integrate_word(const HomologyWord& word, const FormIndex& form, const CurveSpec& spec,
                       const QuadConfig& cfg, Complex base_point) {
    check_word(word, spec.k, spec.n);
    return integrate_letters(expand(word, spec.k), form, spec, cfg, base_point);
}

Complex integrate_word(const HomologyWord& word, const FormIndex& form, const CurveSpec& spec,
                       const QuadConfig& cfg) {
    return integrate_word(word, form, spec, cfg, default_base_point(spec.branch_points));
}

double beta_function(double a, double b) {
    return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

double beta_closed_form(const FormIndex& form, int k) {
    if (form.alpha.size() != 2) {
        throw InvalidArity("Beta closed form needs n = 2, got n = " +
                           std::to_string(form.alpha.size()));
    }
    return beta_function(static_cast<double>(form.alpha[0] + 1) / k,
                         1.0 - static_cast<double>(form.alpha[1]) / k);
}

Complex agm(Complex a, Complex b) {
    for (int iter = 0; iter < 200; ++iter) {
        if (std::abs(a - b) <= 4e-16 * std::abs(a)) break;
        const Complex mean = 0.5 * (a + b);
        Complex root = std::sqrt(a * b);
        if (std::abs(mean - root) > std::abs(mean + root)) root = -root;
        a = mean;
        b = root;
    }
    return 0.5 * (a + b);
}

namespace {

// 2 * integral from e_i to e_j of dx / sqrt(-(x - e_i)(x - e_j)(x - e_m))
// along the segment. Substituting x = e_i - (e_i - e_j) sin^2 turns it into
// a Gauss integral, pi / M(sqrt(e_i - e_m), sqrt(e_j - e_m)).
Complex pair_period(Complex ei, Complex ej, Complex em) {
    const Complex a = std::sqrt(ei - em);
    Complex b = std::sqrt(ej - em);
    if (std::abs(a - b) > std::abs(a + b)) b = -b;
    return 2.0 * std::numbers::pi / agm(a, b);
}

}  // namespace

std::pair<Complex, Complex> agm_elliptic_periods(Complex lambda) {
    if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()) || lambda == 0.0 ||
        lambda == 1.0) {
        throw DegenerateLambda("lambda must be finite and differ from 0 and 1");
    }
    const std::array<Complex, 3> e{Complex(0.0), Complex(1.0), lambda};
    // The shared vertex of the two segments is the one with the widest angle,
    // so the segments meet only there even for collinear roots.
    int mid = 0;
    double widest = -1.0;
    for (int v = 0; v < 3; ++v) {
        const Complex u = e[(v + 1) % 3] - e[v];
        const Complex w = e[(v + 2) % 3] - e[v];
        const double angle = std::abs(std::arg(u / w));
        if (angle > widest) {
            widest = angle;
            mid = v;
        }
    }
    const Complex ea = e[(mid + 1) % 3];
    const Complex eb = e[mid];
    const Complex ec = e[(mid + 2) % 3];
    // dx/sqrt(cubic) = i dx/sqrt(-cubic) up to sign.
    const Complex i(0.0, 1.0);
    const Complex w1 = i * pair_period(ea, eb, ec);
    const Complex w2 = i * pair_period(eb, ec, ea);
    if (std::abs((w2 / w1).imag()) < 1e-12) throw DegenerateLambda("periods are collinear");
    return {w1, w2};
}

std::pair<Complex, Complex> fermat23_lattice_from_legendre(std::pair<Complex, Complex> legendre) {
    const Complex i(0.0, 1.0);
    return {i * legendre.first, i * legendre.second};
}

bool CrosscheckReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

constexpr double kOracleRelTol = 1e-8;
constexpr double kZeroFloor = 1e-10;
constexpr double kBetaTol = 1e-9;
constexpr double kLatticeTol = 1e-6;

double relative_gap(Complex got, Complex want) {
    const double scale = std::abs(want);
    return scale > 0.0 ? std::abs(got - want) / scale : std::abs(got);
}

}  // namespace

CrosscheckReport crosscheck_report(const CurveSpec& spec, const QuadConfig& cfg, int sample,
                                   std::uint64_t seed) {
    CrosscheckReport report;
    const PeriodMatrix pm = assemble(spec, cfg, false);
    const auto& forms = pm.cols;
    const auto& J = pm.base_integrals;
    const int k = spec.k;

    if (forms.empty()) {
        report.checks.push_back({"genus_zero", true, 0.0, 0.0, "no holomorphic forms; nothing to check"});
        return report;
    }

    {
        CheckResult check{"power_vanishing", true, 0.0, kOracleRelTol, ""};
        for (std::size_t c = 0; c < forms.size(); ++c) {
            const double scale = J.col(static_cast<Eigen::Index>(c)).cwiseAbs().maxCoeff();
            for (int i = 1; i <= spec.n; ++i) {
                const Complex v = integrate_word(PowerWord{i}, forms[c], spec, cfg, pm.base_point);
                const double dev = std::abs(v) / scale;
                check.max_deviation = std::max(check.max_deviation, dev);
            }
        }
        check.passed = check.max_deviation <= check.tolerance;
        check.detail = "max |integral over phi_i^k| / max_i |J_i|";
        report.checks.push_back(check);
    }

    // Sample ConjComm rows without replacement.
    std::vector<std::size_t> picks(pm.rows.size());
    for (std::size_t s = 0; s < picks.size(); ++s) picks[s] = s;
    std::mt19937_64 rng(seed);
    const std::size_t take = std::min<std::size_t>(std::max(sample, 0), picks.size());
    for (std::size_t s = 0; s < take; ++s) {
        const std::size_t r = s + static_cast<std::size_t>(rng() % (picks.size() - s));
        std::swap(picks[s], picks[r]);
    }
    picks.resize(take);
    std::sort(picks.begin(), picks.end());

    CheckResult closed{"closed_form_vs_contour", true, 0.0, kOracleRelTol, ""};
    CheckResult zeros{"zero_prefactor_entries", true, 0.0, kZeroFloor, ""};
    CheckResult covariance{"conjugation_covariance", true, 0.0, kOracleRelTol, ""};
    std::map<std::pair<int, std::size_t>, Complex> bare;  // ((j,l) code, form) -> oracle
    for (std::size_t row : picks) {
        const auto& word = std::get<ConjCommWord>(pm.rows[row]);
        for (std::size_t c = 0; c < forms.size(); ++c) {
            const Complex oracle = integrate_word(word, forms[c], spec, cfg, pm.base_point);
            const Complex entry = pm.entries(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(c));
            if (entry == Complex(0.0, 0.0)) {
                zeros.max_deviation = std::max(zeros.max_deviation, std::abs(oracle));
            } else {
                closed.max_deviation = std::max(closed.max_deviation, relative_gap(oracle, entry));
            }

            const auto key = std::make_pair(word.j * 64 + word.l, c);
            auto it = bare.find(key);
            if (it == bare.end()) {
                ConjCommWord plain{std::vector<int>(spec.n, 0), word.j, word.l};
                const Complex v = integrate_word(plain, forms[c], spec, cfg, pm.base_point);
                it = bare.emplace(key, v).first;
            }
            const Complex predicted = conjugation_phase(word, forms[c], k) * it->second;
            // Relative below |predicted| = 1e-2, absolute 1e-10 floor otherwise.
            const double dev = std::abs(oracle - predicted) /
                               std::max(std::abs(predicted), kZeroFloor / kOracleRelTol);
            covariance.max_deviation = std::max(covariance.max_deviation, dev);
        }
    }
    std::ostringstream sampled;
    sampled << take << " sampled generators x " << forms.size() << " forms";
    closed.detail = sampled.str() + "; relative deviation on nonzero entries";
    zeros.detail = sampled.str() + "; absolute oracle value where the prefactor vanishes";
    covariance.detail = sampled.str() + "; oracle(rho[.,.]rho^-1) vs phase * oracle([.,.])";
    closed.passed = closed.max_deviation <= closed.tolerance;
    zeros.passed = zeros.max_deviation <= zeros.tolerance;
    covariance.passed = covariance.max_deviation <= covariance.tolerance;
    report.checks.push_back(closed);
    report.checks.push_back(zeros);
    report.checks.push_back(covariance);

    const Eigen::MatrixXd split = real_split(pm);
    {
        const int rank = lattice_rank(split, 1e-8);
        const auto want = 2 * genus(spec);
        CheckResult check{"lattice_rank", rank == want, static_cast<double>(std::abs(rank - want)), 0.0,
                          "rank " + std::to_string(rank) + ", expected " + std::to_string(want)};
        report.checks.push_back(check);
    }

    if (spec.n == 2) {
        CheckResult magnitude{"beta_magnitude", true, 0.0, kBetaTol, ""};
        CheckResult phase{"beta_phase_consistency", true, 0.0, kBetaTol, ""};
        Complex reference = 0.0;
        for (std::size_t c = 0; c < forms.size(); ++c) {
            const Complex span = J(1, static_cast<Eigen::Index>(c)) - J(0, static_cast<Eigen::Index>(c));
            const double beta = beta_closed_form(forms[c], k);
            magnitude.max_deviation = std::max(magnitude.max_deviation, std::abs(std::abs(span) - beta) / beta);
            // With principal logs at a base point in the upper half plane the
            // segment (0, 1) is reached from above, where
            // W = -exp(-i pi (a1 + a2 + 1)/k) |W|.
            const double turn = -std::numbers::pi * (forms[c].alpha[0] + forms[c].alpha[1] + 1) / k;
            const Complex predicted = -std::polar(1.0, turn);
            const Complex unit = span / std::abs(span) / predicted;
            if (c == 0) reference = unit;
            phase.max_deviation = std::max(phase.max_deviation, std::abs(unit - reference));
        }
        magnitude.passed = magnitude.max_deviation <= magnitude.tolerance;
        phase.passed = phase.max_deviation <= phase.tolerance;
        magnitude.detail = "| |J2 - J1| - B((a1+1)/k, 1-a2/k) | / B";
        phase.detail = "spread of (J2 - J1) / (B * predicted unit) across forms";
        report.checks.push_back(magnitude);
        report.checks.push_back(phase);
    }

    if (spec.k == 2 && spec.n == 3) {
        CheckResult check{"agm_lattice", false, 0.0, kLatticeTol, ""};
        try {
            const LatticeBasis lb = extract_basis(split, spec);
            const auto [w1, w2] = fermat23_lattice_from_legendre(agm_elliptic_periods(spec.lambdas[0]));
            Eigen::MatrixXd agm_basis(2, 2);
            agm_basis << w1.real(), w1.imag(), w2.real(), w2.imag();
            const Expressibility fwd = express_in_basis(lb.basis, agm_basis, kLatticeTol);
            const Expressibility back = express_in_basis(agm_basis, lb.basis, kLatticeTol);
            check.max_deviation = std::max({fwd.max_coordinate_error, fwd.residual,
                                            back.max_coordinate_error, back.residual});
            check.passed = fwd.integral && back.integral;
            check.detail = "mutual integer expressibility of extracted and AGM bases";
        } catch (const Error& e) {
            check.detail = e.what();
        }
        report.checks.push_back(check);
    }
    return report;
}

}  // namespace gfc
