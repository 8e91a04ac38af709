#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "nnlab/words.hpp"

namespace nnlab {

/// Shift-invariant probability vector on k-blocks supported inside {1..N}^k.
/// Construct through validate() or one of the generators below; instances
/// always satisfy: entries >= 0, sum exactly 1, and equal left/right
/// (k-1)-block marginals.
struct SimplexVector {
    std::size_t k = 1;
    Digit N = 1;  // alphabet cutoff
    std::map<Block, Rat> entries;

    Rat at(const Block& b) const {
        auto it = entries.find(b);
        return it == entries.end() ? Rat(0) : it->second;
    }

    // Least common multiple of the entry denominators.
    BigInt common_denominator() const;

    bool operator==(const SimplexVector&) const = default;
};

/// Checks a candidate map and returns it as a SimplexVector.
/// Throws NotProbabilityError or NotShiftInvariantError (naming the
/// violating (k-1)-block).
SimplexVector validate(std::size_t k, Digit N, const std::map<Block, Rat>& candidate);

Rat l1_distance(const FreqVector& a, const FreqVector& b);
Rat l1_distance(const FreqVector& a, const SimplexVector& b);
Rat l1_distance(const SimplexVector& a, const SimplexVector& b);

using RatMatrix = std::vector<std::vector<Rat>>;

/// Exact stationary distribution of an irreducible stochastic matrix,
/// solved over the rationals.
std::vector<Rat> stationary_distribution(const RatMatrix& P);

/// Product vector q_{i1..ik} = pi_{i1} P_{i1 i2} ... P_{i_{k-1} i_k} of the
/// stationary Markov chain of P.
SimplexVector markov_vector(const RatMatrix& P, std::size_t k);

/// Block distribution of the periodic orbit of basic_factor(b) repeated,
/// mass 1/per(b) per orbit position.
SimplexVector periodic_orbit_vector(const Block& b, std::size_t k);

/// q with all mass on the block d...d (k times).
SimplexVector point_mass_vector(Digit d, std::size_t k);

/// Deterministic duplicate-free stream of rational shift-invariant vectors:
/// stationary Markov products over all stochastic matrices with a common row
/// denominator d <= denom_max on alphabets {1..N}, N <= N_max (ordered by
/// (N, d, entries)), followed by periodic-orbit vectors of all blocks of
/// length <= k+2 with digits <= N_max in length-then-lex order.
class DenseEnumerator {
  public:
    DenseEnumerator(std::size_t k, Digit N_max, std::uint64_t denom_max);

    // Vector at position i of the stream; extends the materialized prefix on
    // demand.  Returns nullptr when the stream is exhausted.
    const SimplexVector* at(std::size_t i);

    // Materializes the whole stream.
    const std::vector<SimplexVector>& all();

  private:
    void generate_all();

    std::size_t k_;
    Digit n_max_;
    std::uint64_t denom_max_;
    bool done_ = false;
    std::vector<SimplexVector> cache_;
};

/// Convenience wrapper: the fully materialized enumeration.
std::vector<SimplexVector> enumerate_dense(std::size_t k, Digit N_max, std::uint64_t denom_max);

}  // namespace nnlab
