#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "gfc/curve.hpp"
#include "gfc/quad.hpp"

namespace gfc::cli {

enum ExitCode : int {
    kOk = 0,
    kVerifyFailed = 1,
    kInvalidInput = 2,
    kNoConvergence = 3,
    kLatticeFailure = 4,
};

struct JobConfig {
    std::string command;
    int k = 0;
    int n = 0;
    std::vector<Complex> lambdas;
    QuadConfig quad;
    std::string format = "json";
    std::string out;
    std::uint64_t seed = 0;
    int sample = 25;
    /// Lattice overrides; 0 keeps the default denominator bound k^(2n).
    std::int64_t max_denominator = 0;
    double rank_tol = 1e-8;
    bool include_powers = false;
};

/// Accepts "a", "a+bi", "a-bi", "bi", "i", "a,b" (j may replace i).
Complex parse_complex(std::string_view text);

/// Runs one job and writes its result to `out` (or to cfg.out if set).
int execute(const JobConfig& cfg, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gfc::cli
