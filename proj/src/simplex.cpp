#include "nnlab/simplex.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>

namespace nnlab {

namespace {

// l1 over the union of two finitely supported maps.
Rat l1_maps(const std::map<Block, Rat>& a, const std::map<Block, Rat>& b) {
    Rat sum(0);
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
            sum += abs(ia->second);
            ++ia;
        } else if (ia == a.end() || ib->first < ia->first) {
            sum += abs(ib->second);
            ++ib;
        } else {
            sum += abs(ia->second - ib->second);
            ++ia;
            ++ib;
        }
    }
    return sum;
}

void require_same_k(std::size_t ka, std::size_t kb) {
    if (ka != kb)
        throw InvalidComparisonError("l1_distance: operands have different block lengths (" +
                                     std::to_string(ka) + " vs " + std::to_string(kb) + ")");
}

}  // namespace

BigInt SimplexVector::common_denominator() const {
    BigInt d(1);
    for (const auto& [b, v] : entries) {
        BigInt l;
        mpz_lcm(l.get_mpz_t(), d.get_mpz_t(), v.get_den().get_mpz_t());
        d = l;
    }
    return d;
}

SimplexVector validate(std::size_t k, Digit N, const std::map<Block, Rat>& candidate) {
    if (k < 1) throw InvalidOrderError("validate: k must be >= 1");
    if (N < 1) throw InvalidDigitError("validate: N must be >= 1");
    SimplexVector q;
    q.k = k;
    q.N = N;

    Rat sum(0);
    for (const auto& [b, v] : candidate) {
        if (b.k() != k)
            throw InvalidOrderError("validate: block " + b.to_text() + " has length " +
                                    std::to_string(b.k()) + ", expected " + std::to_string(k));
        if (v < 0) throw NotProbabilityError("validate: negative entry at block " + b.to_text());
        if (v == 0) continue;
        if (b.max_digit() > N)
            throw InvalidDigitError("validate: supporting block " + b.to_text() +
                                    " uses digits above N=" + std::to_string(N));
        sum += v;
        q.entries.emplace(b, v);
    }
    if (sum != 1)
        throw NotProbabilityError("validate: entries sum to " + rat_str(sum) + ", expected 1");

    if (k >= 2) {
        // left marginal of i: mass of blocks ending with i; right: starting with i
        std::map<Block, Rat> left, right;
        for (const auto& [b, v] : q.entries) {
            std::vector<Digit> suf(b.digits().begin() + 1, b.digits().end());
            std::vector<Digit> pre(b.digits().begin(), b.digits().end() - 1);
            left[Block(std::move(suf))] += v;
            right[Block(std::move(pre))] += v;
        }
        std::set<Block> keys;
        for (const auto& [i, v] : left) keys.insert(i);
        for (const auto& [i, v] : right) keys.insert(i);
        for (const Block& i : keys) {
            Rat lv = left.count(i) ? left.at(i) : Rat(0);
            Rat rv = right.count(i) ? right.at(i) : Rat(0);
            if (lv != rv)
                throw NotShiftInvariantError("validate: marginal mismatch at block " + i.to_text() +
                                                 " (left " + rat_str(lv) + ", right " + rat_str(rv) +
                                                 ")",
                                             i.to_text());
        }
    }
    return q;
}

Rat l1_distance(const FreqVector& a, const FreqVector& b) {
    require_same_k(a.k, b.k);
    return l1_maps(a.entries, b.entries);
}

Rat l1_distance(const FreqVector& a, const SimplexVector& b) {
    require_same_k(a.k, b.k);
    return l1_maps(a.entries, b.entries);
}

Rat l1_distance(const SimplexVector& a, const SimplexVector& b) {
    require_same_k(a.k, b.k);
    return l1_maps(a.entries, b.entries);
}

std::vector<Rat> stationary_distribution(const RatMatrix& P) {
    const std::size_t n = P.size();
    if (n == 0) throw InvalidOrderError("stationary_distribution: empty matrix");
    for (const auto& row : P) {
        if (row.size() != n) throw InvalidOrderError("stationary_distribution: matrix not square");
        Rat s(0);
        for (const Rat& v : row) {
            if (v < 0) throw ConstructionError("stationary_distribution: negative entry");
            s += v;
        }
        if (s != 1)
            throw ConstructionError("stationary_distribution: row sums to " + rat_str(s) +
                                    ", expected 1");
    }

    // irreducibility: strong connectivity of the positive-entry digraph
    auto reach = [&](bool forward) {
        std::vector<char> seen(n, 0);
        std::queue<std::size_t> bfs;
        bfs.push(0);
        seen[0] = 1;
        while (!bfs.empty()) {
            std::size_t u = bfs.front();
            bfs.pop();
            for (std::size_t v = 0; v < n; ++v) {
                bool edge = forward ? (P[u][v] > 0) : (P[v][u] > 0);
                if (edge && !seen[v]) {
                    seen[v] = 1;
                    bfs.push(v);
                }
            }
        }
        return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
    };
    if (!reach(true) || !reach(false))
        throw ConstructionError("stationary_distribution: matrix is reducible");

    // solve pi P = pi, sum pi = 1: rows of A are (P^T - I), last row replaced by ones
    std::vector<std::vector<Rat>> A(n, std::vector<Rat>(n + 1, Rat(0)));
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) A[i][j] = P[j][i] - Rat(i == j ? 1 : 0);
        A[i][n] = 0;
    }
    for (std::size_t j = 0; j < n; ++j) A[n - 1][j] = 1;
    A[n - 1][n] = 1;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && A[piv][col] == 0) ++piv;
        if (piv == n) throw ConstructionError("stationary_distribution: singular system");
        std::swap(A[col], A[piv]);
        Rat inv = A[col][col];
        for (std::size_t j = col; j <= n; ++j) A[col][j] /= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || A[r][col] == 0) continue;
            Rat f = A[r][col];
            for (std::size_t j = col; j <= n; ++j) A[r][j] -= f * A[col][j];
        }
    }
    std::vector<Rat> pi(n);
    for (std::size_t i = 0; i < n; ++i) pi[i] = A[i][n];
    return pi;
}

SimplexVector markov_vector(const RatMatrix& P, std::size_t k) {
    const std::size_t n = P.size();
    std::vector<Rat> pi = stationary_distribution(P);

    std::map<Block, Rat> q;
    // depth-first over digit tuples, pruning zero products
    std::vector<Digit> tuple(k);
    auto rec = [&](auto&& self, std::size_t depth, const Rat& prob) -> void {
        if (prob == 0) return;
        if (depth == k) {
            q.emplace(Block(tuple), prob);
            return;
        }
        for (std::size_t d = 1; d <= n; ++d) {
            tuple[depth] = d;
            Rat next = depth == 0 ? pi[d - 1] : prob * P[tuple[depth - 1] - 1][d - 1];
            self(self, depth + 1, next);
        }
    };
    rec(rec, 0, Rat(1));
    return validate(k, static_cast<Digit>(n), q);
}

SimplexVector periodic_orbit_vector(const Block& b, std::size_t k) {
    if (k < 1) throw InvalidOrderError("periodic_orbit_vector: k must be >= 1");
    const std::size_t p = basic_period(b);
    const Word gamma = basic_factor(b);
    std::map<Block, std::uint64_t> counts;
    for (std::size_t i = 0; i < p; ++i) {
        std::vector<Digit> ds(k);
        for (std::size_t j = 0; j < k; ++j) ds[j] = gamma[(i + j) % p];
        counts[Block(std::move(ds))] += 1;
    }
    std::map<Block, Rat> q;
    for (const auto& [blk, c] : counts) q.emplace(blk, make_rat(BigInt(c), BigInt(p)));
    return validate(k, gamma.max_digit(), q);
}

SimplexVector point_mass_vector(Digit d, std::size_t k) {
    if (d < 1) throw InvalidDigitError("point_mass_vector: digit must be >= 1");
    std::map<Block, Rat> q;
    q.emplace(Block(std::vector<Digit>(k, d)), Rat(1));
    return validate(k, d, q);
}

namespace {

// Compositions of total into parts nonnegative parts, lex ascending.
std::vector<std::vector<std::uint64_t>> compositions(std::uint64_t total, std::size_t parts) {
    std::vector<std::vector<std::uint64_t>> out;
    std::vector<std::uint64_t> cur(parts, 0);
    auto rec = [&](auto&& self, std::size_t idx, std::uint64_t left) -> void {
        if (idx + 1 == parts) {
            cur[idx] = left;
            out.push_back(cur);
            return;
        }
        for (std::uint64_t v = 0; v <= left; ++v) {
            cur[idx] = v;
            self(self, idx + 1, left - v);
        }
    };
    rec(rec, 0, total);
    return out;
}

std::string vector_key(const SimplexVector& q) {
    std::ostringstream os;
    for (const auto& [b, v] : q.entries) os << b.to_text() << '=' << rat_str(v) << ';';
    return os.str();
}

}  // namespace

DenseEnumerator::DenseEnumerator(std::size_t k, Digit N_max, std::uint64_t denom_max)
    : k_(k), n_max_(N_max), denom_max_(denom_max) {
    if (k < 1 || N_max < 1 || denom_max < 1)
        throw InvalidOrderError("enumerate_dense: parameters must be >= 1");
}

void DenseEnumerator::generate_all() {
    if (done_) return;
    std::set<std::string> seen;
    auto emit = [&](const SimplexVector& q) {
        if (seen.insert(vector_key(q)).second) cache_.push_back(q);
    };

    // (a) stationary Markov products, ordered by (N, denominator, entries)
    for (Digit N = 1; N <= n_max_; ++N) {
        for (std::uint64_t d = 1; d <= denom_max_; ++d) {
            auto rows = compositions(d, N);
            std::vector<std::size_t> pick(N, 0);
            auto rec = [&](auto&& self, std::size_t row) -> void {
                if (row == N) {
                    RatMatrix P(N, std::vector<Rat>(N));
                    for (std::size_t i = 0; i < N; ++i)
                        for (std::size_t j = 0; j < N; ++j)
                            P[i][j] = make_rat(BigInt(rows[pick[i]][j]), BigInt(d));
                    try {
                        emit(markov_vector(P, k_));
                    } catch (const ConstructionError&) {
                        // reducible matrix: no unique stationary vector, skip
                    }
                    return;
                }
                for (std::size_t r = 0; r < rows.size(); ++r) {
                    pick[row] = r;
                    self(self, row + 1);
                }
            };
            rec(rec, 0);
        }
    }

    // (b) periodic orbit vectors of short blocks, length-then-lex order
    for (std::size_t len = 1; len <= k_ + 2; ++len) {
        std::vector<Digit> ds(len, 1);
        bool carry = false;
        while (!carry) {
            emit(periodic_orbit_vector(Block(ds), k_));
            std::size_t pos = len;
            carry = true;
            while (pos > 0) {
                --pos;
                if (ds[pos] < n_max_) {
                    ++ds[pos];
                    for (std::size_t t = pos + 1; t < len; ++t) ds[t] = 1;
                    carry = false;
                    break;
                }
            }
        }
    }
    done_ = true;
}

const SimplexVector* DenseEnumerator::at(std::size_t i) {
    generate_all();
    return i < cache_.size() ? &cache_[i] : nullptr;
}

const std::vector<SimplexVector>& DenseEnumerator::all() {
    generate_all();
    return cache_;
}

std::vector<SimplexVector> enumerate_dense(std::size_t k, Digit N_max, std::uint64_t denom_max) {
    return DenseEnumerator(k, N_max, denom_max).all();
}

}  // namespace nnlab
