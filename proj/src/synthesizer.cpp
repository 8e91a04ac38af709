#include "nnlab/synthesizer.hpp"

#include <algorithm>
#include <cmath>

#include "nnlab/cesaro.hpp"

namespace nnlab {

BigInt tower(unsigned m, const BigInt& x, std::uint64_t bit_cap) {
    if (m < 1) throw InvalidOrderError("tower: depth must be >= 1");
    if (x < 0) throw InvalidOrderError("tower: argument must be nonnegative");
    BigInt val = x;
    for (unsigned depth = 1; depth <= m; ++depth) {
        if (val + 1 > BigInt(static_cast<unsigned long>(bit_cap)))
            throw TowerOverflowError("tower: 2^" + val.get_str() + " exceeds the " +
                                         std::to_string(bit_cap) + "-bit cap at depth " +
                                         std::to_string(depth),
                                     depth);
        val = big_pow2(static_cast<unsigned long>(val.get_ui()));
    }
    return val;
}

std::uint64_t tower_window_end(unsigned m, std::uint64_t j, std::uint64_t cap) {
    if (m < 1) throw InvalidOrderError("tower_window_end: depth must be >= 1");
    // v = 2^j, saturating at cap
    std::uint64_t v;
    if (j >= 63) return cap;
    v = std::uint64_t{1} << j;
    for (unsigned depth = 1; depth <= m; ++depth) {
        if (v >= 63) return cap;
        v = std::uint64_t{1} << v;
        if (v >= cap) return cap;
    }
    return std::min(v, cap);
}

bool SynthesisResult::all_passed() const {
    for (const auto& w : witnesses)
        if (!w.passed) return false;
    return true;
}

namespace {

// j/2^j < 1/h  <=>  j*h < 2^j
bool j_condition(std::uint64_t j, std::uint64_t h) {
    if (j >= 128) return true;
    return BigInt(static_cast<unsigned long>(j)) * BigInt(static_cast<unsigned long>(h)) <
           big_pow2(j);
}

template <class V>
V val_abs(const V& v) {
    if constexpr (std::is_same_v<V, Rat>) {
        return abs(v);
    } else {
        return v < 0 ? -v : v;
    }
}

// Per-n l1 distance between the level-r block-frequency vector of a stream
// prefix and a fixed target.  Mass outside the support is handled through
// the scalar identity sum_b P^(r)(b, n) = C^(r)(n) where C^(0)(n) is the
// total occurrence mass (n-k+1)/n.
template <class V>
class LevelDistanceScan {
  public:
    LevelDistanceScan(const SimplexVector& q, std::size_t levels) : q_(q), levels_(levels) {
        for (const auto& [b, v] : q.entries) {
            ladders_.emplace_back(b, levels);
            if constexpr (std::is_same_v<V, Rat>) {
                targets_.push_back(v);
            } else {
                targets_.push_back(v.get_d());
            }
        }
        total_S_.assign(levels_, V{});
    }

    void push(Digit d) {
        ++n_;
        for (auto& lad : ladders_) lad.push_digit(d);
        std::uint64_t c = n_ >= q_.k ? n_ - q_.k + 1 : 0;
        V p = detail::val_ratio<V>(c, n_);
        for (std::size_t l = 0; l < levels_; ++l) {
            total_S_[l] += p;
            p = detail::val_div<V>(total_S_[l], n_);
        }
    }

    std::uint64_t n() const { return n_; }

    V distance(std::size_t r) const {
        V dist{};
        V supp_sum{};
        for (std::size_t idx = 0; idx < ladders_.size(); ++idx) {
            V v = ladders_[idx].value(r);
            supp_sum += v;
            dist += val_abs<V>(v - targets_[idx]);
        }
        std::uint64_t c = n_ >= q_.k ? n_ - q_.k + 1 : 0;
        V total = r == 0 ? detail::val_ratio<V>(c, n_) : detail::val_div<V>(total_S_[r - 1], n_);
        V outside = total - supp_sum;
        if constexpr (!std::is_same_v<V, Rat>) {
            if (outside < 0) outside = 0;  // rounding guard
        }
        dist += outside;
        return dist;
    }

  private:
    const SimplexVector& q_;
    std::size_t levels_;
    std::uint64_t n_ = 0;
    std::vector<BlockLevelLadder<V>> ladders_;
    std::vector<V> targets_;
    std::vector<V> total_S_;
};

// ok(n) = (distance at level 0 <= eps) for n in (lo, hi], via integer
// arithmetic; index n - lo - 1.
std::vector<char> scan_ok_r0(const Word& stream, const SimplexVector& q, const Rat& eps,
                             std::uint64_t lo, std::uint64_t hi) {
    DistanceTracker tracker(q);
    std::vector<char> ok;
    ok.reserve(hi - lo);
    for (std::uint64_t n = 1; n <= hi; ++n) {
        tracker.push(stream[n - 1]);
        if (n > lo) ok.push_back(tracker.within(eps) ? 1 : 0);
    }
    return ok;
}

Rat sup_dist_r0(const Word& stream, const SimplexVector& q, std::uint64_t lo, std::uint64_t hi) {
    DistanceTracker tracker(q);
    Rat best(0);
    for (std::uint64_t n = 1; n <= hi; ++n) {
        tracker.push(stream[n - 1]);
        if (n > lo) {
            Rat d = tracker.distance();
            if (d > best) best = d;
        }
    }
    return best;
}

// Smallest admissible j in [j_min, budget) whose window (j, W(j)] with
// W(j) = min(phi_m(2^j), budget) avoids every bad index. ok covers (t, budget].
std::optional<std::uint64_t> search_certified_j(const std::vector<char>& ok, std::uint64_t t,
                                                std::uint64_t budget, std::uint64_t j_min,
                                                std::uint64_t h, unsigned m) {
    const std::uint64_t count = budget - t;
    // next_bad[idx]: smallest n' >= n (idx = n - t) with !ok(n'), sentinel budget+1
    std::vector<std::uint64_t> next_bad(count + 2);
    next_bad[count + 1] = budget + 1;
    for (std::uint64_t idx = count; idx >= 1; --idx)
        next_bad[idx] = ok[idx - 1] ? next_bad[idx + 1] : t + idx;
    std::uint64_t j = std::max(j_min, t + 1);
    while (j < budget) {
        if (!j_condition(j, h)) {
            ++j;
            continue;
        }
        std::uint64_t wj = tower_window_end(m, j, budget);
        if (wj <= j) {
            ++j;
            continue;
        }
        std::uint64_t bad = next_bad[j + 1 - t];
        if (bad > wj) return j;
        j = bad;  // any smaller j still covers this bad index
    }
    return std::nullopt;
}

}  // namespace

std::vector<std::uint64_t> stage_budgets(const Schedule& schedule) {
    if (schedule.stages.empty()) return {};
    if (schedule.max_length < 2)
        throw InvalidOrderError("stage_budgets: max_length must be at least 2");
    std::vector<std::uint64_t> out;
    std::uint64_t t = 0;
    for (std::size_t idx = 0; idx < schedule.stages.size(); ++idx) {
        if (t + 2 > schedule.max_length)
            throw ConstructionError("stage_budgets: stream budget exhausted before stage " +
                                    std::to_string(idx));
        std::uint64_t W;
        if (schedule.stages[idx].window_cap) {
            W = std::min(*schedule.stages[idx].window_cap, schedule.max_length);
        } else {
            double teff = std::max<double>(1.0, static_cast<double>(t));
            std::size_t rem = schedule.stages.size() - idx;
            double factor = std::pow(static_cast<double>(schedule.max_length) / teff,
                                     1.0 / static_cast<double>(rem));
            W = static_cast<std::uint64_t>(std::llround(teff * factor));
        }
        W = std::min(W, schedule.max_length);
        W = std::max(W, t + 2);
        out.push_back(W);
        t = W;
    }
    return out;
}

SynthesisResult synthesize(const Schedule& schedule) {
    SynthesisResult result;
    std::vector<std::uint64_t> budgets = stage_budgets(schedule);
    for (std::size_t idx = 0; idx < schedule.stages.size(); ++idx) {
        const Stage& stage = schedule.stages[idx];
        if (stage.q.k != stage.k)
            throw InvalidOrderError("synthesize: stage " + std::to_string(idx) +
                                    " has k != q.k");
        const std::uint64_t t = result.stream.size();
        const Digit M = result.stream.max_digit();
        const std::uint64_t budget = budgets[idx];
        const std::uint64_t n_tol = 6 * stage.h;

        ExtensionPlan plan = plan_extension(t, M, stage.q, n_tol);
        for (std::uint64_t pos = 0; result.stream.size() < budget; ++pos)
            result.stream.push_back(plan.gamma[pos % plan.gamma.size()]);

        Witness w;
        w.stage_index = idx;

        // Lemma path: smallest j >= max(L, i, t+1) with j/2^j < eps
        std::uint64_t j_lemma = std::max({plan.L, stage.i, t + 1});
        while (j_lemma < budget && !j_condition(j_lemma, stage.h)) ++j_lemma;

        std::optional<std::uint64_t> j;
        if (j_lemma < budget && tower_window_end(stage.m, j_lemma, budget) > j_lemma) {
            j = j_lemma;
            w.from_lemma = true;
        } else {
            std::vector<char> ok = scan_ok_r0(result.stream, stage.q, stage.epsilon(), t, budget);
            j = search_certified_j(ok, t, budget, std::max(stage.i, t + 1), stage.h, stage.m);
            w.from_lemma = false;
        }

        if (!j) {
            w.skipped = true;
            w.note = "no admissible window under the stage budget " + std::to_string(budget);
            w.sup_dist = sup_dist_r0(result.stream, stage.q, budget - 1, budget);
            result.witnesses.push_back(std::move(w));
            continue;
        }

        w.j = *j;
        std::uint64_t tower_end = tower_window_end(stage.m, w.j, UINT64_MAX);
        w.window_end = std::min(tower_end, budget);
        w.truncated = tower_end > budget;
        w.sup_dist = sup_dist_r0(result.stream, stage.q, w.j, w.window_end);
        w.passed = w.j >= stage.i && j_condition(w.j, stage.h) && w.sup_dist <= stage.epsilon();
        if (!w.passed)
            w.note = "window (" + std::to_string(w.j) + ", " + std::to_string(w.window_end) +
                     "] misses tolerance 1/" + std::to_string(stage.h);
        result.witnesses.push_back(std::move(w));
    }
    return result;
}

VerifyResult verify_property_p(const Word& stream, const Schedule& schedule, std::size_t r,
                               std::uint64_t exact_cap) {
    VerifyResult result;
    result.ok = true;
    std::vector<std::uint64_t> budgets = stage_budgets(schedule);
    std::uint64_t t = 0;
    for (std::size_t idx = 0; idx < schedule.stages.size(); ++idx) {
        const Stage& stage = schedule.stages[idx];
        const std::uint64_t budget = budgets[idx];
        Witness w;
        w.stage_index = idx;
        if (stream.size() < budget) {
            w.skipped = true;
            w.note = "stream shorter than the stage budget " + std::to_string(budget);
            result.witnesses.push_back(std::move(w));
            result.ok = false;
            t = budget;
            continue;
        }

        const Rat eps = stage.epsilon();
        std::vector<char> ok;
        const bool exact = r == 0 || budget <= exact_cap;
        if (r == 0) {
            ok = scan_ok_r0(stream, stage.q, eps, t, budget);
        } else if (exact) {
            LevelDistanceScan<Rat> scan(stage.q, r);
            ok.reserve(budget - t);
            for (std::uint64_t n = 1; n <= budget; ++n) {
                scan.push(stream[n - 1]);
                if (n > t) ok.push_back(scan.distance(r) <= eps ? 1 : 0);
            }
        } else {
            LevelDistanceScan<double> scan(stage.q, r);
            const double fe = eps.get_d();
            ok.reserve(budget - t);
            for (std::uint64_t n = 1; n <= budget; ++n) {
                scan.push(stream[n - 1]);
                if (n > t) ok.push_back(scan.distance(r) <= fe ? 1 : 0);
            }
        }
        w.exact = exact;

        std::optional<std::uint64_t> j =
            search_certified_j(ok, t, budget, std::max(stage.i, t + 1), stage.h, stage.m);
        if (!j) {
            w.skipped = true;
            w.note = "no witness window inside (" + std::to_string(t) + ", " +
                     std::to_string(budget) + "]";
            // minimal achieved sup: the last window's sup
            if (r == 0) w.sup_dist = sup_dist_r0(stream, stage.q, budget - 1, budget);
            result.witnesses.push_back(std::move(w));
            result.ok = false;
            t = budget;
            continue;
        }

        w.j = *j;
        std::uint64_t tower_end = tower_window_end(stage.m, w.j, UINT64_MAX);
        w.window_end = std::min(tower_end, budget);
        w.truncated = tower_end > budget;
        if (r == 0) {
            w.sup_dist = sup_dist_r0(stream, stage.q, w.j, w.window_end);
        } else if (exact) {
            LevelDistanceScan<Rat> scan(stage.q, r);
            Rat best(0);
            for (std::uint64_t n = 1; n <= w.window_end; ++n) {
                scan.push(stream[n - 1]);
                if (n > w.j) best = std::max(best, scan.distance(r));
            }
            w.sup_dist = best;
        } else {
            LevelDistanceScan<double> scan(stage.q, r);
            double best = 0;
            for (std::uint64_t n = 1; n <= w.window_end; ++n) {
                scan.push(stream[n - 1]);
                if (n > w.j) best = std::max(best, scan.distance(r));
            }
            w.sup_dist = Rat(best);
        }
        w.passed = w.sup_dist <= eps || (!exact && w.sup_dist.get_d() <= eps.get_d());
        if (!w.passed) result.ok = false;
        result.witnesses.push_back(std::move(w));
        t = budget;
    }
    return result;
}

LiftReport cesaro_lift_check(const Word& stream, const Stage& stage, std::uint64_t j_prime,
                             std::size_t r, std::optional<std::uint64_t> window_hi,
                             std::uint64_t exact_cap) {
    LiftReport report;
    const std::uint64_t len = stream.size();
    if (j_prime >= 63) throw InvalidOrderError("cesaro_lift_check: j' too large");
    const std::uint64_t j = std::uint64_t{1} << j_prime;  // level-(r+1) window start

    report.premise_lo = j_prime;
    report.premise_hi = tower_window_end(stage.m + 1, j_prime, len);
    report.lo = j;
    report.hi = tower_window_end(stage.m + 1, j_prime, len);
    if (window_hi) report.hi = std::min(*window_hi, len);

    if (len <= j || report.premise_hi <= j_prime) {
        report.note = "stream too short for the level-" + std::to_string(r + 1) + " window at 2^" +
                      std::to_string(j_prime);
        return report;  // inconclusive
    }
    if (!j_condition(j_prime, stage.h)) {
        report.note = "premise witness violates j'/2^j' < eps/3";
        return report;
    }

    const Rat premise_eps = stage.epsilon();            // eps/3 = 1/h
    const Rat eps = make_rat(3, static_cast<unsigned long>(stage.h));  // lifted tolerance
    const std::uint64_t scan_to = std::max(report.premise_hi, report.hi);
    const bool exact = len <= exact_cap;
    report.exact = exact;

    auto run = [&](auto& scan) {
        using V = std::decay_t<decltype(scan.distance(0))>;
        V pmax{};
        V cmax{};
        for (std::uint64_t n = 1; n <= scan_to; ++n) {
            scan.push(stream[n - 1]);
            if (n > j_prime && n <= report.premise_hi) {
                V d = scan.distance(r);
                if (d > pmax) pmax = d;
            }
            if (n > j && n <= report.hi) {
                V d = scan.distance(r + 1);
                if (d > cmax) cmax = d;
            }
        }
        if constexpr (std::is_same_v<V, Rat>) {
            report.premise_max = pmax;
            report.conclusion_max = cmax;
        } else {
            report.premise_max = Rat(pmax);
            report.conclusion_max = Rat(cmax);
        }
    };
    if (exact) {
        LevelDistanceScan<Rat> scan(stage.q, r + 1);
        run(scan);
        report.premise_ok = report.premise_max <= premise_eps;
        report.conclusion_ok = report.conclusion_max <= eps;
    } else {
        LevelDistanceScan<double> scan(stage.q, r + 1);
        run(scan);
        report.premise_ok = report.premise_max.get_d() <= premise_eps.get_d();
        report.conclusion_ok = report.conclusion_max.get_d() <= eps.get_d();
    }
    report.conclusive = true;
    return report;
}

}  // namespace nnlab
