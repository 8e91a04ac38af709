#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nnlab/simplex.hpp"
#include "nnlab/wordfactory.hpp"
#include "nnlab/words.hpp"

namespace nnlab {

/// Iterated base-2 exponential phi_m(x): phi_1(x) = 2^x,
/// phi_m = phi_1 of phi_{m-1}.  Throws TowerOverflowError with the depth at
/// which the value would exceed bit_cap bits.
BigInt tower(unsigned m, const BigInt& x, std::uint64_t bit_cap = (1u << 24));

/// min(phi_m(2^j), cap) as a saturating 64-bit value.
std::uint64_t tower_window_end(unsigned m, std::uint64_t j, std::uint64_t cap);

/// One synthesis target: approach q within epsilon = 1/h on a window opened
/// at some j >= i with j/2^j < epsilon, of nominal length phi_m(2^j).
struct Stage {
    SimplexVector q;
    unsigned m = 1;      // tower depth
    std::uint64_t i = 1; // minimum admissible j
    std::uint64_t h = 1; // tolerance 1/h
    std::size_t k = 1;   // block length (matches q.k)

    // Absolute stream-length budget for this stage.  Unset: the remaining
    // budget is split geometrically over the remaining stages.
    std::optional<std::uint64_t> window_cap;

    Rat epsilon() const { return make_rat(1, static_cast<unsigned long>(h)); }
};

struct Schedule {
    std::vector<Stage> stages;
    std::uint64_t max_length = 0;
};

/// Per-stage certificate: the chosen j, the window (j, window_end], and the
/// exact sup of the l1 distance over it.
struct Witness {
    std::size_t stage_index = 0;
    std::uint64_t j = 0;
    std::uint64_t window_end = 0;
    bool truncated = false;   // tower end exceeded the budget
    bool from_lemma = false;  // j cleared the padding bound L; otherwise the
                              // window was certified by exact measurement
    bool exact = true;        // sup computed with exact arithmetic
    bool passed = false;
    bool skipped = false;
    Rat sup_dist = Rat(0);
    std::string note;
};

struct SynthesisResult {
    Word stream;
    std::vector<Witness> witnesses;
    bool all_passed() const;
};

/// Absolute end-of-stage stream lengths implied by a schedule.
std::vector<std::uint64_t> stage_budgets(const Schedule& schedule);

/// Emits the digit stream stage by stage: extends with gamma^* from the
/// stage's Z_{6h} word, prefers the Lemma-guaranteed j >= max(L, i, t+1)
/// when it fits the stage budget and otherwise certifies the smallest
/// admissible j by exact measurement.
SynthesisResult synthesize(const Schedule& schedule);

struct VerifyResult {
    std::vector<Witness> witnesses;
    bool ok = false;
};

/// Independent re-verification: for each stage searches j in increasing
/// order inside the stage's budgeted region for a window satisfying the
/// three property-P conditions on the level-r Cesaro vectors.  Distances are
/// exact up to exact_cap digits, float beyond.
VerifyResult verify_property_p(const Word& stream, const Schedule& schedule, std::size_t r,
                               std::uint64_t exact_cap = 200000);

struct LiftReport {
    bool conclusive = false;
    bool premise_ok = false;   // level-r within eps/3 on (j', trunc phi_{m+1}(2^j')]
    bool conclusion_ok = false;  // level-(r+1) within eps on (2^j', hi]
    std::uint64_t premise_lo = 0, premise_hi = 0;
    std::uint64_t lo = 0, hi = 0;
    Rat premise_max = Rat(0);
    Rat conclusion_max = Rat(0);
    bool exact = true;
    std::string note;
};

/// Checks the Cesaro lifting step: a level-r witness at j' with tolerance
/// eps/3 = 1/stage.h yields the level-(r+1) bound eps = 3/stage.h on the
/// window starting at 2^j'.  window_hi overrides the upper endpoint
/// (default: phi_{m+1}(2^j') truncated to the stream).  Values are
/// recomputed exactly when the stream fits under exact_cap.
LiftReport cesaro_lift_check(const Word& stream, const Stage& stage, std::uint64_t j_prime,
                             std::size_t r = 0, std::optional<std::uint64_t> window_hi = {},
                             std::uint64_t exact_cap = 200000);

}  // namespace nnlab
