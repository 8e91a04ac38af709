#pragma once

#include <cstdint>
#include <deque>

#include "nnlab/simplex.hpp"
#include "nnlab/words.hpp"

namespace nnlab {

/// Target for word construction: words over {1..N} of length >= k*n*N^k whose
/// k-block frequency vector lies within 1/n of q in l1.
struct ZnSpec {
    SimplexVector q;
    std::uint64_t n = 1;  // tolerance parameter, target distance <= 1/n

    Digit N() const { return q.N; }
    std::size_t k() const { return q.k; }
    BigInt min_length() const {
        return BigInt(k()) * BigInt(static_cast<unsigned long>(n)) *
               big_pow(BigInt(static_cast<unsigned long>(q.N)), static_cast<unsigned long>(k()));
    }
};

/// Exact running l1 distance between the k-block frequency vector of a
/// growing word and a fixed target.  All arithmetic is integer: with D the
/// common denominator of q, the distance at length n equals
///   (sum_supp |c_b*D - qhat_b*n| + junk*D) / (n*D).
class DistanceTracker {
  public:
    explicit DistanceTracker(const SimplexVector& q);

    void push(Digit d);
    std::uint64_t length() const { return n_; }

    Rat distance() const;
    bool within(const Rat& eps) const;  // distance() <= eps, cross-multiplied

  private:
    BigInt numerator() const;  // distance = numerator / (n * D)

    const SimplexVector& q_;
    BigInt D_;
    std::map<Block, BigInt> qhat_;       // q_b * D
    std::map<Block, std::uint64_t> counts_;
    std::uint64_t junk_ = 0;             // occurrences outside the support
    std::uint64_t n_ = 0;
    std::deque<Digit> recent_;
};

bool is_in_zn(const Word& w, const ZnSpec& spec);

/// Builds a word of Z_n(q, N, k) deterministically: scale q to integer edge
/// multiplicities on the de Bruijn graph over (k-1)-blocks (shift invariance
/// is exactly the Eulerian degree condition), walk one Eulerian circuit per
/// weakly connected component (Hierholzer, lexicographically smallest
/// available edge), then repeat the circuit words until the length gate and
/// the exact distance check both pass.
Word construct_zn_word(const ZnSpec& spec);

/// The Lemma-bound L = t + gamma_len * max(n, (t/k) * max(1, M^k / N^k)),
/// computed exactly and rounded up.
std::uint64_t padding_length(std::uint64_t t, std::uint64_t gamma_len, std::size_t k,
                             std::uint64_t n, Digit M, Digit N);

struct ExtensionPlan {
    Word gamma;
    std::uint64_t L = 0;
};

/// gamma and L for extending a prefix of length t and max digit M toward q.
ExtensionPlan plan_extension(std::uint64_t t, Digit M, const SimplexVector& q, std::uint64_t n);

/// omega followed by gamma repeated cyclically, truncated to ell digits;
/// guarantees ||P_k(result) - q||_1 <= 6/n once ell >= L.
Word extend_to_target(const Word& omega, const SimplexVector& q, std::uint64_t n,
                      std::uint64_t ell);

}  // namespace nnlab
