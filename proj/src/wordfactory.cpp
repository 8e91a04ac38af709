#include "nnlab/wordfactory.hpp"

#include <algorithm>
#include <cassert>
#include <queue>
#include <set>

namespace nnlab {

DistanceTracker::DistanceTracker(const SimplexVector& q) : q_(q), D_(q.common_denominator()) {
    for (const auto& [b, v] : q_.entries) qhat_.emplace(b, BigInt(v.get_num() * (D_ / v.get_den())));
}

void DistanceTracker::push(Digit d) {
    if (d < 1) throw InvalidDigitError("DistanceTracker: digits must be >= 1");
    ++n_;
    recent_.push_back(d);
    if (recent_.size() > q_.k) recent_.pop_front();
    if (recent_.size() == q_.k) {
        Block b(std::vector<Digit>(recent_.begin(), recent_.end()));
        if (qhat_.count(b))
            counts_[b] += 1;
        else
            junk_ += 1;
    }
}

BigInt DistanceTracker::numerator() const {
    BigInt sum = BigInt(static_cast<unsigned long>(junk_)) * D_;
    const BigInt bn(static_cast<unsigned long>(n_));
    for (const auto& [b, qh] : qhat_) {
        auto it = counts_.find(b);
        BigInt cD = it == counts_.end() ? BigInt(0)
                                        : BigInt(static_cast<unsigned long>(it->second)) * D_;
        sum += abs(cD - qh * bn);
    }
    return sum;
}

Rat DistanceTracker::distance() const {
    if (n_ == 0) throw OutOfRangeError("DistanceTracker: no digits pushed");
    return make_rat(numerator(), BigInt(static_cast<unsigned long>(n_)) * D_);
}

bool DistanceTracker::within(const Rat& eps) const {
    if (n_ == 0) throw OutOfRangeError("DistanceTracker: no digits pushed");
    // numerator/(n D) <= eps  <=>  numerator * eps.den <= eps.num * n * D
    return numerator() * eps.get_den() <=
           eps.get_num() * BigInt(static_cast<unsigned long>(n_)) * D_;
}

bool is_in_zn(const Word& w, const ZnSpec& spec) {
    if (BigInt(static_cast<unsigned long>(w.size())) < spec.min_length()) return false;
    for (Digit d : w)
        if (d > spec.N()) return false;
    DistanceTracker tracker(spec.q);
    for (Digit d : w) tracker.push(d);
    return tracker.within(make_rat(1, static_cast<unsigned long>(spec.n)));
}

namespace {

using Vertex = std::vector<Digit>;  // (k-1)-block; empty for k = 1

struct Multigraph {
    // per vertex, outgoing edges as (last digit of the block, remaining count),
    // kept sorted by digit for the lexicographic walk
    std::map<Vertex, std::map<Digit, std::uint64_t>> out;
    std::uint64_t total_edges = 0;
};

Vertex head(const Block& b) {
    return Vertex(b.digits().begin(), b.digits().end() - 1);
}

Vertex tail(const Block& b) {
    return Vertex(b.digits().begin() + 1, b.digits().end());
}

// Eulerian circuit from `start`; emits one digit per traversed edge.
// Hierholzer with the lexicographically smallest available edge.
std::vector<Digit> eulerian_circuit(Multigraph& g, const Vertex& start, std::size_t k) {
    std::vector<Digit> circuit;
    std::vector<std::pair<Vertex, Digit>> stack;  // (vertex, digit taken to leave it)
    Vertex cur = start;
    while (true) {
        auto& edges = g.out[cur];
        while (!edges.empty() && edges.begin()->second == 0) edges.erase(edges.begin());
        if (!edges.empty()) {
            Digit d = edges.begin()->first;
            edges.begin()->second -= 1;
            stack.emplace_back(cur, d);
            if (k == 1) {
                cur = Vertex{};
            } else {
                Vertex next(cur.begin() + 1, cur.end());
                next.push_back(d);
                cur = next;
            }
        } else {
            if (stack.empty()) break;
            circuit.push_back(stack.back().second);
            cur = stack.back().first;
            stack.pop_back();
        }
    }
    std::reverse(circuit.begin(), circuit.end());
    return circuit;
}

}  // namespace

Word construct_zn_word(const ZnSpec& spec) {
    const std::size_t k = spec.k();
    const SimplexVector& q = spec.q;
    const BigInt D = q.common_denominator();
    if (D > 100000000)
        throw ConstructionError("construct_zn_word: common denominator " + D.get_str() +
                                " too large for a desk-scale word");

    Multigraph g;
    for (const auto& [b, v] : q.entries) {
        BigInt mult = v.get_num() * (D / v.get_den());
        g.out[head(b)][b[k - 1]] += to_u64(mult);
        g.out.try_emplace(tail(b));  // make sure the endpoint exists
        g.total_edges += to_u64(mult);
    }

    // weakly connected components over the support graph
    std::map<Vertex, std::set<Vertex>> adj;
    for (const auto& [u, edges] : g.out) {
        adj.try_emplace(u);
        for (const auto& [d, cnt] : edges) {
            Vertex w = k == 1 ? Vertex{} : Vertex(u.begin() + 1, u.end());
            if (k > 1) w.push_back(d);
            adj[u].insert(w);
            adj[w].insert(u);
        }
    }
    std::map<Vertex, int> comp;
    int n_comps = 0;
    for (const auto& [v, nb] : adj) {
        if (comp.count(v)) continue;
        int id = n_comps++;
        std::queue<Vertex> bfs;
        bfs.push(v);
        comp[v] = id;
        while (!bfs.empty()) {
            Vertex u = bfs.front();
            bfs.pop();
            for (const Vertex& w : adj[u]) {
                if (!comp.count(w)) {
                    comp[w] = id;
                    bfs.push(w);
                }
            }
        }
    }

    // per component: start vertex (lexicographically smallest with outgoing
    // edges) and the circuit digit string
    struct Piece {
        Vertex start;
        std::vector<Digit> cycle;
    };
    std::vector<Piece> pieces;
    {
        Multigraph work = g;
        std::map<int, Vertex> starts;
        for (const auto& [v, e] : g.out) {
            if (e.empty()) continue;
            auto it = starts.find(comp[v]);
            if (it == starts.end() || v < it->second) starts[comp[v]] = v;
        }
        for (const auto& [id, start] : starts) {
            Piece p;
            p.start = start;
            p.cycle = eulerian_circuit(work, start, k);
            if (!p.cycle.empty()) pieces.push_back(std::move(p));
        }
    }
    if (pieces.empty()) throw ConstructionError("construct_zn_word: empty support");

    std::uint64_t cycle_total = 0;
    for (const auto& p : pieces) cycle_total += p.cycle.size();
    if (cycle_total != g.total_edges)
        throw ConstructionError("construct_zn_word: circuit lost edges (degree condition violated)");

    const BigInt min_len = spec.min_length();
    const Rat tol = make_rat(1, static_cast<unsigned long>(spec.n));
    std::uint64_t reps = 1;
    {
        BigInt r = rat_ceil(make_rat(min_len, BigInt(static_cast<unsigned long>(cycle_total))));
        if (r > 1) reps = to_u64(r);
    }
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<Digit> out;
        out.reserve(pieces.size() * (k - 1) + cycle_total * reps);
        for (const auto& p : pieces) {
            out.insert(out.end(), p.start.begin(), p.start.end());
            for (std::uint64_t r = 0; r < reps; ++r)
                out.insert(out.end(), p.cycle.begin(), p.cycle.end());
        }
        Word gamma(std::move(out));
        if (is_in_zn(gamma, spec)) return gamma;
        reps *= 2;
    }
    throw ConstructionError(
        "construct_zn_word: could not push the distance below 1/n by repetition");
}

std::uint64_t padding_length(std::uint64_t t, std::uint64_t gamma_len, std::size_t k,
                             std::uint64_t n, Digit M, Digit N) {
    if (gamma_len < 1 || k < 1 || n < 1 || N < 1)
        throw InvalidOrderError("padding_length: arguments must be >= 1");
    if (t >= 1 && M < 1)
        throw InvalidOrderError("padding_length: nonempty prefix needs its max digit M >= 1");
    Rat inner(1);
    if (t >= 1) {
        Rat ratio = make_rat(big_pow(BigInt(static_cast<unsigned long>(M)), k),
                             big_pow(BigInt(static_cast<unsigned long>(N)), k));
        inner = std::max(inner, ratio);
    }
    Rat mid = make_rat(BigInt(static_cast<unsigned long>(t)), BigInt(k)) * inner;
    Rat outer = std::max(Rat(static_cast<unsigned long>(n)), mid);
    Rat L = Rat(static_cast<unsigned long>(t)) +
            Rat(static_cast<unsigned long>(gamma_len)) * outer;
    return to_u64(rat_ceil(L));
}

ExtensionPlan plan_extension(std::uint64_t t, Digit M, const SimplexVector& q, std::uint64_t n) {
    ExtensionPlan plan;
    plan.gamma = construct_zn_word(ZnSpec{q, n});
    plan.L = padding_length(t, plan.gamma.size(), q.k, n, t == 0 ? 1 : M, q.N);
    return plan;
}

Word extend_to_target(const Word& omega, const SimplexVector& q, std::uint64_t n,
                      std::uint64_t ell) {
    ExtensionPlan plan = plan_extension(omega.size(), omega.max_digit(), q, n);
    if (ell < plan.L)
        throw OutOfRangeError("extend_to_target: target length " + std::to_string(ell) +
                              " is below the required L = " + std::to_string(plan.L));
    Word out = omega;
    std::size_t pos = 0;
    while (out.size() < ell) {
        out.push_back(plan.gamma[pos % plan.gamma.size()]);
        ++pos;
    }
#ifndef NDEBUG
    {
        Rat dist = l1_distance(freq_vector(out, q.k, ell), q);
        assert(dist <= make_rat(6, static_cast<unsigned long>(n)));
    }
#endif
    return out;
}

}  // namespace nnlab
