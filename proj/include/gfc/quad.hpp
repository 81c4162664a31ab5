#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "gfc/contour.hpp"
#include "gfc/curve.hpp"

namespace gfc {

/// Refinement controls. A tanh-sinh level l uses 2^l nodes.
struct QuadConfig {
    int level = 10;
    double rel_tol = 1e-10;
    int max_level = 14;

    void validate() const;
};

/// Tanh-sinh rule on (0, 1) with both endpoint distances stored directly, so
/// integrands singular at either end can be evaluated without cancellation.
struct TanhSinhRule {
    std::vector<double> s;
    std::vector<double> one_minus_s;
    std::vector<double> weight;
};

/// Nodes are sorted by increasing s. Rules are built once per level.
const TanhSinhRule& tanh_sinh_rule(int level);

/// Smallest endpoint distance (relative to the interval) a node may have.
inline constexpr double kEndpointClip = 1e-290;

/// Integral over (0, 1) of f(s, 1 - s) at one refinement level.
template <class F>
auto tanh_sinh_unit(F&& f, int level) {
    const TanhSinhRule& rule = tanh_sinh_rule(level);
    decltype(f(0.5, 0.5)) sum{};
    for (std::size_t j = 0; j < rule.s.size(); ++j) {
        sum += rule.weight[j] * f(rule.s[j], rule.one_minus_s[j]);
    }
    return sum;
}

/// Level doubling from cfg.level until successive estimates agree to
/// cfg.rel_tol; throws NoConvergence past cfg.max_level.
Complex tanh_sinh_adaptive(const std::function<Complex(double, double)>& f, const QuadConfig& cfg,
                           std::vector<Complex>* history = nullptr);

/// One tanh-sinh estimate of the last (singular) piece of the leg to r_target,
/// starting from `at_start`, the continued state at the start of that piece.
Complex branch_leg_estimate(const BranchState& at_start, int target, const FormIndex& form,
                            const CurveSpec& spec, int level);

/// Integral of W(R, alpha) dw from the state's point to r_target along the
/// standard leg, with W continued from the given state.
Complex integrate_to_branch_point(const BranchState& at_base, int target, const FormIndex& form,
                                  const CurveSpec& spec, const QuadConfig& cfg,
                                  std::vector<Complex>* history = nullptr);

/// Integral of W dw along a path avoiding R, plus the continued end state.
/// Gauss-Legendre panels, doubled per segment until converged.
std::pair<Complex, BranchState> integrate_smooth(const Path& path, const BranchState& state,
                                                 const FormIndex& form, const CurveSpec& spec,
                                                 const QuadConfig& cfg);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> x;
    std::vector<double> w;
};
GaussLegendreRule gauss_legendre(int order);

}  // namespace gfc
