#include "gfc/contour.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gfc/errors.hpp"

namespace gfc {
namespace {

constexpr double kQuarterTurn = std::numbers::pi / 2.0;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

void Path::append(const Path& other) {
    segments.insert(segments.end(), other.segments.begin(), other.segments.end());
}

Complex point_at(const Segment& seg, double t) {
    if (const auto* line = std::get_if<LineSegment>(&seg)) {
        if (t == 1.0) return line->to;
        return line->from + (line->to - line->from) * t;
    }
    const auto& arc = std::get<ArcSegment>(seg);
    const double theta = arc.start_angle + t * (arc.end_angle - arc.start_angle);
    return arc.center + std::polar(arc.radius, theta);
}

Complex tangent_at(const Segment& seg, double t) {
    if (const auto* line = std::get_if<LineSegment>(&seg)) return line->to - line->from;
    const auto& arc = std::get<ArcSegment>(seg);
    const double sweep = arc.end_angle - arc.start_angle;
    const double theta = arc.start_angle + t * sweep;
    return Complex(0.0, sweep) * std::polar(arc.radius, theta);
}

Complex start_point(const Segment& seg) { return point_at(seg, 0.0); }
Complex end_point(const Segment& seg) { return point_at(seg, 1.0); }

Segment reversed(const Segment& seg) {
    if (const auto* line = std::get_if<LineSegment>(&seg)) return LineSegment{line->to, line->from};
    auto arc = std::get<ArcSegment>(seg);
    std::swap(arc.start_angle, arc.end_angle);
    arc.orientation = -arc.orientation;
    return arc;
}

Path reversed(const Path& path) {
    Path out;
    out.segments.reserve(path.segments.size());
    for (auto it = path.segments.rbegin(); it != path.segments.rend(); ++it) {
        out.segments.push_back(reversed(*it));
    }
    return out;
}

BranchState init_branch(Complex base_point, std::span<const Complex> branch_points) {
    BranchState state;
    state.point = base_point;
    state.logs.resize(branch_points.size());
    for (std::size_t t = 0; t < branch_points.size(); ++t) {
        if (base_point == branch_points[t]) {
            throw BasePointOnBranchPoint("base point coincides with r" + std::to_string(t + 1));
        }
        state.logs[t] = t == 0 ? std::log(-base_point) : std::log(base_point - branch_points[t]);
    }
    return state;
}

void step_to(BranchState& state, Complex to, std::span<const Complex> branch_points) {
    if (to == state.point) return;
    std::vector<Complex> increments(branch_points.size());
    for (std::size_t t = 0; t < branch_points.size(); ++t) {
        const Complex ratio = (to - branch_points[t]) / (state.point - branch_points[t]);
        const Complex inc = std::log(ratio);
        if (!(std::abs(inc.imag()) < kQuarterTurn)) {
            throw StepTooCoarse("argument increment " + std::to_string(inc.imag()) +
                                " around r" + std::to_string(t + 1));
        }
        increments[t] = inc;
    }
    for (std::size_t t = 0; t < increments.size(); ++t) state.logs[t] += increments[t];
    state.point = to;
}

void advance_on(BranchState& state, const Segment& seg, double t0, double t1,
                std::span<const Complex> branch_points) {
    // Explicit stack keeps the bisection ordered without recursion.
    struct Span {
        double a, b;
        int depth;
    };
    std::vector<Span> pending{{t0, t1, 0}};
    while (!pending.empty()) {
        const Span s = pending.back();
        pending.pop_back();
        try {
            step_to(state, point_at(seg, s.b), branch_points);
        } catch (const StepTooCoarse&) {
            if (s.depth > 50) throw;
            const double mid = 0.5 * (s.a + s.b);
            pending.push_back({mid, s.b, s.depth + 1});
            pending.push_back({s.a, mid, s.depth + 1});
        }
    }
}

BranchState continue_along(const BranchState& state, const Path& path, int steps_per_segment,
                           std::span<const Complex> branch_points) {
    if (steps_per_segment < 1) throw DegenerateInput("steps_per_segment must be positive");
    BranchState out = state;
    for (const Segment& seg : path.segments) {
        for (int m = 1; m <= steps_per_segment; ++m) {
            const double t = static_cast<double>(m) / steps_per_segment;
            step_to(out, point_at(seg, t), branch_points);
        }
    }
    return out;
}

BranchState continue_adaptive(const BranchState& state, const Path& path,
                              std::span<const Complex> branch_points, int initial_steps) {
    int steps = std::max(1, initial_steps);
    for (int attempt = 0; attempt < 20; ++attempt, steps *= 2) {
        try {
            return continue_along(state, path, steps, branch_points);
        } catch (const StepTooCoarse&) {
        }
    }
    throw StepTooCoarse("continuation did not settle after repeated step doubling");
}

std::vector<double> w_exponents(const FormIndex& form, int k) {
    std::vector<double> c(form.alpha.size());
    c[0] = static_cast<double>(form.alpha[0] + 1) / k - 1.0;
    for (std::size_t t = 1; t < c.size(); ++t) c[t] = -static_cast<double>(form.alpha[t]) / k;
    return c;
}

Complex eval_W(const BranchState& state, const FormIndex& form, int k) {
    const std::vector<double> c = w_exponents(form, k);
    Complex sum = 0.0;
    for (std::size_t t = 0; t < c.size(); ++t) sum += c[t] * state.logs[t];
    return std::exp(sum);
}

double branch_diameter(std::span<const Complex> branch_points) {
    double d = 0.0;
    for (std::size_t a = 0; a < branch_points.size(); ++a) {
        for (std::size_t b = a + 1; b < branch_points.size(); ++b) {
            d = std::max(d, std::abs(branch_points[a] - branch_points[b]));
        }
    }
    return d;
}

double min_pairwise_distance(std::span<const Complex> branch_points) {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < branch_points.size(); ++a) {
        for (std::size_t b = a + 1; b < branch_points.size(); ++b) {
            d = std::min(d, std::abs(branch_points[a] - branch_points[b]));
        }
    }
    return d;
}

double min_clearance(std::span<const Complex> branch_points) {
    return 1e-3 * min_pairwise_distance(branch_points);
}

double loop_radius(std::span<const Complex> branch_points, int target) {
    const Complex r = branch_points[target - 1];
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < branch_points.size(); ++t) {
        if (static_cast<int>(t) == target - 1) continue;
        nearest = std::min(nearest, std::abs(branch_points[t] - r));
    }
    return 0.25 * nearest;
}

Complex default_base_point(std::span<const Complex> branch_points) {
    Complex centroid = 0.0;
    for (const Complex& r : branch_points) centroid += r;
    centroid /= static_cast<double>(branch_points.size());
    return centroid + Complex(0.0, 2.0 * branch_diameter(branch_points));
}

double segment_clearance(Complex a, Complex b, std::span<const Complex> branch_points,
                         int exclude) {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < branch_points.size(); ++t) {
        if (static_cast<int>(t) == exclude - 1) continue;
        const Complex ar = branch_points[t] - a;
        double s = len2 > 0.0 ? (ar.real() * ab.real() + ar.imag() * ab.imag()) / len2 : 0.0;
        s = std::clamp(s, 0.0, 1.0);
        best = std::min(best, std::abs(branch_points[t] - (a + s * ab)));
    }
    return best;
}

std::vector<Complex> leg_vertices(Complex base_point, int target,
                                  std::span<const Complex> branch_points) {
    if (target < 1 || target > static_cast<int>(branch_points.size())) {
        throw DegenerateInput("branch index out of range");
    }
    const Complex r = branch_points[target - 1];
    const double clearance = min_clearance(branch_points);
    if (segment_clearance(base_point, r, branch_points, target) >= clearance) {
        return {base_point, r};
    }

    const Complex mid = 0.5 * (base_point + r);
    const Complex dir = r - base_point;
    const Complex normal = Complex(-dir.imag(), dir.real()) / std::abs(dir);
    const double diam = branch_diameter(branch_points);
    constexpr int kTries = 16;
    for (int j = 1; j <= kTries; ++j) {
        for (int sign : {+1, -1}) {
            const Complex bend = mid + normal * (sign * diam * j / kTries);
            if (segment_clearance(base_point, bend, branch_points, 0) >= clearance &&
                segment_clearance(bend, r, branch_points, target) >= clearance) {
                return {base_point, bend, r};
            }
        }
    }
    throw ClearanceUnachievable("no detour keeps clearance on the leg to r" +
                                std::to_string(target));
}

Path leg_path(Complex base_point, int target, std::span<const Complex> branch_points) {
    const auto v = leg_vertices(base_point, target, branch_points);
    Path path;
    for (std::size_t m = 0; m + 1 < v.size(); ++m) path.segments.push_back(LineSegment{v[m], v[m + 1]});
    return path;
}

Path loop_path(Complex base_point, int target, std::span<const Complex> branch_points,
               int orientation) {
    if (orientation != 1 && orientation != -1) throw DegenerateInput("orientation must be +1 or -1");
    auto v = leg_vertices(base_point, target, branch_points);
    const Complex r = branch_points[target - 1];
    const double radius = loop_radius(branch_points, target);
    const Complex approach = v[v.size() - 2];
    if (std::abs(approach - r) <= radius) {
        throw ClearanceUnachievable("leg to r" + std::to_string(target) +
                                    " bends inside the loop circle");
    }
    const Complex unit = (approach - r) / std::abs(approach - r);
    v.back() = r + radius * unit;

    Path in;
    for (std::size_t m = 0; m + 1 < v.size(); ++m) in.segments.push_back(LineSegment{v[m], v[m + 1]});

    const double start = std::arg(unit);
    ArcSegment circle{r, radius, start, start + orientation * kTwoPi, orientation};

    Path out = in;
    out.segments.push_back(circle);
    out.append(reversed(in));
    return out;
}

}  // namespace gfc
