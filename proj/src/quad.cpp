#include "gfc/quad.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "gfc/errors.hpp"

namespace gfc {
namespace {

// s(t) reaches kEndpointClip near |t| = 6.07, so this window loses nothing.
constexpr double kTanhSinhHalfWidth = 6.1;
constexpr int kMaxRuleLevel = 20;
constexpr int kPanelOrder = 16;
constexpr int kMaxPanelDoublings = 16;

TanhSinhRule build_rule(int level) {
    const std::size_t count = std::size_t{1} << level;
    const double h = 2.0 * kTanhSinhHalfWidth / static_cast<double>(count);
    TanhSinhRule rule;
    rule.s.resize(count);
    rule.one_minus_s.resize(count);
    rule.weight.resize(count);
    for (std::size_t j = 0; j < count; ++j) {
        const double t = -kTanhSinhHalfWidth + (static_cast<double>(j) + 0.5) * h;
        const double u = std::numbers::pi * std::sinh(t);
        // Logistic form of (1 + tanh(u/2)) / 2, each side evaluated without cancellation.
        double s = 1.0 / (1.0 + std::exp(-u));
        double c = 1.0 / (1.0 + std::exp(u));
        rule.weight[j] = h * std::numbers::pi * std::cosh(t) * s * c;
        rule.s[j] = std::max(s, kEndpointClip);
        rule.one_minus_s[j] = std::max(c, kEndpointClip);
    }
    return rule;
}

Complex dot_logs(const std::vector<double>& c, const std::vector<Complex>& logs) {
    Complex sum = 0.0;
    for (std::size_t t = 0; t < c.size(); ++t) sum += c[t] * logs[t];
    return sum;
}

}  // namespace

void QuadConfig::validate() const {
    if (!(rel_tol > 0.0)) throw DegenerateInput("rel_tol must be positive");
    if (level < 1 || level > kMaxRuleLevel) throw DegenerateInput("level out of range");
    if (max_level < level || max_level > kMaxRuleLevel) {
        throw DegenerateInput("max_level must lie in [level, " + std::to_string(kMaxRuleLevel) + "]");
    }
}

const TanhSinhRule& tanh_sinh_rule(int level) {
    if (level < 1 || level > kMaxRuleLevel) throw DegenerateInput("tanh-sinh level out of range");
    static std::array<TanhSinhRule, kMaxRuleLevel + 1> rules;
    static std::array<std::once_flag, kMaxRuleLevel + 1> flags;
    std::call_once(flags[level], [level] { rules[level] = build_rule(level); });
    return rules[level];
}

Complex tanh_sinh_adaptive(const std::function<Complex(double, double)>& f, const QuadConfig& cfg,
                           std::vector<Complex>* history) {
    cfg.validate();
    Complex previous = tanh_sinh_unit(f, cfg.level);
    if (history) history->push_back(previous);
    for (int level = cfg.level + 1; level <= cfg.max_level; ++level) {
        const Complex current = tanh_sinh_unit(f, level);
        if (history) history->push_back(current);
        if (std::abs(current - previous) <= cfg.rel_tol * std::abs(current)) return current;
        previous = current;
    }
    throw NoConvergence("tanh-sinh did not reach rel_tol by level " + std::to_string(cfg.max_level));
}

Complex branch_leg_estimate(const BranchState& at_start, int target, const FormIndex& form,
                            const CurveSpec& spec, int level) {
    const auto& R = spec.branch_points;
    const std::size_t n = R.size();
    const std::size_t ti = static_cast<std::size_t>(target - 1);
    const Complex r = R[ti];
    const Complex a = at_start.point;
    const Complex span = a - r;
    const std::vector<double> c = w_exponents(form, spec.k);

    // Along the final straight piece w - r = span * s with s real, so the
    // target's log is exact: log at a plus ln s. The other factors are
    // continued node to node.
    const Complex target_log_at_a = at_start.logs[ti];
    std::vector<Complex> logs = at_start.logs;
    std::vector<Complex> diff(n);
    for (std::size_t t = 0; t < n; ++t) diff[t] = a - R[t];

    auto diff_at = [&](std::size_t t, double s) { return (r - R[t]) + span * s; };

    double s_prev = 1.0;
    auto advance_to = [&](double s_new) {
        struct Step {
            double from, to;
            int depth;
        };
        std::vector<Step> pending{{s_prev, s_new, 0}};
        while (!pending.empty()) {
            const Step st = pending.back();
            pending.pop_back();
            bool coarse = false;
            std::vector<Complex> inc(n);
            for (std::size_t t = 0; t < n && !coarse; ++t) {
                if (t == ti) continue;
                const Complex next = diff_at(t, st.to);
                inc[t] = std::log(next / diff[t]);
                coarse = !(std::abs(inc[t].imag()) < std::numbers::pi / 2.0);
            }
            if (coarse) {
                if (st.depth > 50) throw StepTooCoarse("branch leg continuation failed to refine");
                const double mid = 0.5 * (st.from + st.to);
                pending.push_back({mid, st.to, st.depth + 1});
                pending.push_back({st.from, mid, st.depth + 1});
                continue;
            }
            for (std::size_t t = 0; t < n; ++t) {
                if (t == ti) continue;
                logs[t] += inc[t];
                diff[t] = diff_at(t, st.to);
            }
        }
        s_prev = s_new;
    };

    const TanhSinhRule& rule = tanh_sinh_rule(level);
    Complex sum = 0.0;
    for (std::size_t j = rule.s.size(); j-- > 0;) {
        const double s = rule.s[j];
        advance_to(s);
        logs[ti] = target_log_at_a + std::log(s);
        sum += rule.weight[j] * std::exp(dot_logs(c, logs));
    }
    return -span * sum;
}

Complex integrate_to_branch_point(const BranchState& at_base, int target, const FormIndex& form,
                                  const CurveSpec& spec, const QuadConfig& cfg,
                                  std::vector<Complex>* history) {
    cfg.validate();
    const auto& R = spec.branch_points;
    const auto verts = leg_vertices(at_base.point, target, R);

    Complex total = 0.0;
    BranchState state = at_base;
    if (verts.size() > 2) {
        Path head;
        for (std::size_t m = 0; m + 2 < verts.size(); ++m) {
            head.segments.push_back(LineSegment{verts[m], verts[m + 1]});
        }
        auto [value, end] = integrate_smooth(head, state, form, spec, cfg);
        total += value;
        state = std::move(end);
    }

    Complex previous = branch_leg_estimate(state, target, form, spec, cfg.level);
    if (history) history->push_back(previous);
    for (int level = cfg.level + 1; level <= cfg.max_level; ++level) {
        const Complex current = branch_leg_estimate(state, target, form, spec, level);
        if (history) history->push_back(current);
        if (std::abs(current - previous) <= cfg.rel_tol * std::abs(current)) {
            return total + current;
        }
        previous = current;
    }
    throw NoConvergence("leg integral to r" + std::to_string(target) + " for form " +
                        to_string(form) + " did not converge by level " +
                        std::to_string(cfg.max_level));
}

GaussLegendreRule gauss_legendre(int order) {
    GaussLegendreRule rule;
    rule.x.resize(order);
    rule.w.resize(order);
    for (int i = 0; i < (order + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 1; j <= order; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p2) / j;
            }
            dp = order * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.x[i] = -x;
        rule.x[order - 1 - i] = x;
        rule.w[i] = rule.w[order - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

std::pair<Complex, BranchState> integrate_smooth(const Path& path, const BranchState& state,
                                                 const FormIndex& form, const CurveSpec& spec,
                                                 const QuadConfig& cfg) {
    cfg.validate();
    static const GaussLegendreRule gl = gauss_legendre(kPanelOrder);
    const auto& R = spec.branch_points;
    const std::vector<double> c = w_exponents(form, spec.k);

    Complex total = 0.0;
    BranchState current = state;
    for (const Segment& seg : path.segments) {
        struct Pass {
            Complex value;
            double magnitude;
            BranchState end;
        };
        auto run = [&](int panels) {
            Pass pass{0.0, 0.0, current};
            BranchState& st = pass.end;
            double t_prev = 0.0;
            for (int p = 0; p < panels; ++p) {
                const double lo = static_cast<double>(p) / panels;
                const double hi = static_cast<double>(p + 1) / panels;
                const double half = 0.5 * (hi - lo);
                for (int q = 0; q < kPanelOrder; ++q) {
                    const double t = lo + half * (gl.x[q] + 1.0);
                    advance_on(st, seg, t_prev, t, R);
                    t_prev = t;
                    const Complex term = gl.w[q] * half * std::exp(dot_logs(c, st.logs)) *
                                         tangent_at(seg, t);
                    pass.value += term;
                    pass.magnitude += std::abs(term);
                }
            }
            advance_on(st, seg, t_prev, 1.0, R);
            return pass;
        };

        Pass coarse = run(1);
        bool converged = false;
        for (int d = 1; d <= kMaxPanelDoublings; ++d) {
            Pass fine = run(1 << d);
            const double change = std::abs(fine.value - coarse.value);
            coarse = std::move(fine);
            if (change <= cfg.rel_tol * coarse.magnitude) {
                converged = true;
                break;
            }
        }
        if (!converged) throw NoConvergence("panel doubling did not converge on a path segment");
        total += coarse.value;
        current = std::move(coarse.end);
    }
    return {total, current};
}

}  // namespace gfc
