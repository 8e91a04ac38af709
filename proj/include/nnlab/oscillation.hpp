#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nnlab/words.hpp"

namespace nnlab {

struct AccumulationEstimate {
    Block block;
    std::size_t r = 0;
    std::uint64_t n0 = 0, n1 = 0;  // window (n0, n1]
    Rat lo, hi;                    // min/max of P^(r)(b, n) over the window
    bool gap_bound_ok = true;      // every consecutive step obeyed <= 1/(n+1)
    bool exact = true;
};

/// Exact (or float, converted back to rationals) min/max of P^(r)(b, n) over
/// n in (n0, n1], verifying the gap bound along the way.
AccumulationEstimate accumulation_interval(const Word& stream, const Block& b, std::size_t r,
                                           std::uint64_t n0, std::uint64_t n1, bool exact = true);

struct TheoreticalRange {
    Rat lo, hi;  // [0, 1/per(b)]
};

TheoreticalRange theoretical_range(const Block& b);

struct LimitCheckpoint {
    std::uint64_t n = 0;
    Rat tail_sup;  // sup over n' in [n, n_max] of |P^(r)(b~^inf, b, n') - 1/p|
};

struct BasicFactorLimitReport {
    Block block;
    std::size_t r = 0;
    std::uint64_t p = 1;
    std::uint64_t n_max = 0;
    std::vector<LimitCheckpoint> checkpoints;
    bool coarse_bound_ok = false;  // |P^(0)(n) - 1/p| <= (k+p)/n for all k <= n <= n_max
    Rat final_deviation;           // |P^(r)(n_max) - 1/p|
    bool exact = true;
};

/// Runs the periodic stream of the basic factor of b and tracks the approach
/// of the level-r frequency to 1/per(b).
BasicFactorLimitReport basic_factor_limit_check(const Block& b, std::size_t r,
                                                std::uint64_t n_max, bool exact = true,
                                                double rho = 1.25);

struct OscillationRow {
    Block block;
    std::size_t r = 0;
    std::uint64_t n0 = 0, n1 = 0;
    Rat lo, hi;
    std::uint64_t per = 1;
    Rat shortfall;  // max(lo - 0, 1/per - hi), clamped at 0
    bool gap_bound_ok = true;
    bool exact = true;
};

struct OscillationReport {
    std::vector<OscillationRow> rows;
    Rat tolerance;
    bool desk_realized = false;  // every shortfall <= tolerance
};

/// Per-block, per-level comparison of the observed accumulation interval
/// against the theoretical range [0, 1/p].  Default window: the last three
/// quarters of the stream; default tolerance 1/50; levels above 0 switch to
/// float once the window outgrows exact_cap.
OscillationReport oscillation_report(const Word& stream, const std::vector<Block>& blocks,
                                     std::size_t r_max,
                                     std::optional<std::pair<std::uint64_t, std::uint64_t>>
                                         window = {},
                                     std::optional<Rat> tolerance = {},
                                     std::uint64_t exact_cap = 5000);

}  // namespace nnlab
