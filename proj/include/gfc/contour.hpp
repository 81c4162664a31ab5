#pragma once

#include <span>
#include <variant>
#include <vector>

#include "gfc/curve.hpp"

namespace gfc {

/// Continued logarithms at the current point w:
///   logs[0]   ~ log(-w)
///   logs[t-1] ~ log(w - r_t),  t = 2..n
/// so exp(logs[0]) == -w and exp(logs[t-1]) == w - r_t.
struct BranchState {
    Complex point;
    std::vector<Complex> logs;
};

struct LineSegment {
    Complex from;
    Complex to;
};

/// Circular arc traversed from start_angle to end_angle; orientation is the
/// sign of (end_angle - start_angle), +1 counterclockwise.
struct ArcSegment {
    Complex center;
    double radius = 0.0;
    double start_angle = 0.0;
    double end_angle = 0.0;
    int orientation = 1;
};

using Segment = std::variant<LineSegment, ArcSegment>;

struct Path {
    std::vector<Segment> segments;

    bool empty() const { return segments.empty(); }
    void append(const Path& other);
};

Complex point_at(const Segment& seg, double t);
Complex tangent_at(const Segment& seg, double t);
Complex start_point(const Segment& seg);
Complex end_point(const Segment& seg);
Segment reversed(const Segment& seg);
Path reversed(const Path& path);

BranchState init_branch(Complex base_point, std::span<const Complex> branch_points);

/// Moves the state to `to` with one ratio-log step per factor. Throws
/// StepTooCoarse if any increment has |arg| >= pi/2.
void step_to(BranchState& state, Complex to, std::span<const Complex> branch_points);

/// Moves the state from parameter t0 to t1 of `seg`, bisecting in parameter
/// until every increment is below a quarter turn.
void advance_on(BranchState& state, const Segment& seg, double t0, double t1,
                std::span<const Complex> branch_points);

/// Fixed-step continuation; StepTooCoarse signals that more steps are needed.
BranchState continue_along(const BranchState& state, const Path& path, int steps_per_segment,
                           std::span<const Complex> branch_points);

/// continue_along with step doubling on StepTooCoarse.
BranchState continue_adaptive(const BranchState& state, const Path& path,
                              std::span<const Complex> branch_points, int initial_steps = 8);

/// Exponent coefficients c with W = exp(sum_t c_t * logs[t]).
std::vector<double> w_exponents(const FormIndex& form, int k);

Complex eval_W(const BranchState& state, const FormIndex& form, int k);

// Geometry of the standard loops.
double branch_diameter(std::span<const Complex> branch_points);
double min_pairwise_distance(std::span<const Complex> branch_points);
double min_clearance(std::span<const Complex> branch_points);
double loop_radius(std::span<const Complex> branch_points, int target);
Complex default_base_point(std::span<const Complex> branch_points);

/// Smallest distance from segment [a, b] to the branch points, skipping the
/// 1-based index `exclude` (0 skips nothing).
double segment_clearance(Complex a, Complex b, std::span<const Complex> branch_points,
                         int exclude);

/// Polyline from base_point ending exactly at r_target (1-based). Straight
/// when clearance allows, otherwise bent once at an offset midpoint.
std::vector<Complex> leg_vertices(Complex base_point, int target,
                                  std::span<const Complex> branch_points);

Path leg_path(Complex base_point, int target, std::span<const Complex> branch_points);

/// Standard loop for phi_target^orientation: leg in, full circle of radius
/// loop_radius around r_target, same leg back.
Path loop_path(Complex base_point, int target, std::span<const Complex> branch_points,
               int orientation);

}  // namespace gfc
