#include "nnlab/oscillation.hpp"

#include <algorithm>

#include "nnlab/cesaro.hpp"

namespace nnlab {

namespace {

template <class V>
AccumulationEstimate interval_impl(const Word& stream, const Block& b, std::size_t r,
                                   std::uint64_t n0, std::uint64_t n1) {
    BlockLevelLadder<V> ladder(b, r);
    AccumulationEstimate est{.block = b, .r = r, .n0 = n0, .n1 = n1};
    est.exact = std::is_same_v<V, Rat>;

    bool first = true;
    V lo{}, hi{}, prev{};
    bool have_prev = false;
    for (std::uint64_t n = 1; n <= n1; ++n) {
        ladder.push_digit(stream[n - 1]);
        if (n <= n0) continue;
        V v = ladder.value(r);
        if (first) {
            lo = hi = v;
            first = false;
        } else {
            if (v < lo) lo = v;
            if (v > hi) hi = v;
        }
        if (have_prev) {
            V diff = v - prev;
            if (diff < V{}) diff = -diff;
            if constexpr (std::is_same_v<V, Rat>) {
                if (diff > make_rat(BigInt(1), BigInt(static_cast<unsigned long>(n))))
                    est.gap_bound_ok = false;
            } else {
                if (diff > (1.0 + 1e-9) / static_cast<double>(n)) est.gap_bound_ok = false;
            }
        }
        prev = v;
        have_prev = true;
    }
    if constexpr (std::is_same_v<V, Rat>) {
        est.lo = lo;
        est.hi = hi;
    } else {
        est.lo = Rat(lo);
        est.hi = Rat(hi);
    }
    return est;
}

}  // namespace

AccumulationEstimate accumulation_interval(const Word& stream, const Block& b, std::size_t r,
                                           std::uint64_t n0, std::uint64_t n1, bool exact) {
    if (n0 < b.k() || n0 >= n1 || n1 > stream.size())
        throw OutOfRangeError("accumulation_interval: need k <= n0 < n1 <= stream length");
    return exact ? interval_impl<Rat>(stream, b, r, n0, n1)
                 : interval_impl<double>(stream, b, r, n0, n1);
}

TheoreticalRange theoretical_range(const Block& b) {
    return {Rat(0), make_rat(1, static_cast<unsigned long>(basic_period(b)))};
}

namespace {

template <class V>
BasicFactorLimitReport limit_impl(const Block& b, std::size_t r, std::uint64_t n_max, double rho) {
    BasicFactorLimitReport rep{.block = b, .r = r, .p = basic_period(b), .n_max = n_max};
    rep.exact = std::is_same_v<V, Rat>;

    const Word factor = basic_factor(b);
    const std::size_t k = b.k();
    const Rat target_rat = make_rat(1, static_cast<unsigned long>(rep.p));
    const double target_f = 1.0 / static_cast<double>(rep.p);

    std::vector<std::uint64_t> cps = geometric_checkpoints(n_max, rho);
    // per-segment maxima of |P^(r)(n) - 1/p|, suffix-maxed into tail sups
    std::vector<V> seg_max(cps.size(), V{});
    std::size_t seg = 0;

    BlockLevelLadder<V> ladder(b, r);
    BlockLevelLadder<V> coarse(b, 0);
    bool coarse_ok = true;
    V final_dev{};
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        Digit d = factor[(n - 1) % factor.size()];
        ladder.push_digit(d);
        coarse.push_digit(d);

        V dev;
        if constexpr (std::is_same_v<V, Rat>) {
            dev = abs(ladder.value(r) - target_rat);
        } else {
            dev = std::abs(ladder.value(r) - target_f);
        }
        // segment index: largest checkpoint <= n
        while (seg + 1 < cps.size() && cps[seg + 1] <= n) ++seg;
        if (dev > seg_max[seg]) seg_max[seg] = dev;
        if (n == n_max) final_dev = dev;

        if (n >= k) {
            // coarse counting bound |c/n - 1/p| <= (k+p)/n  <=>  |c p - n| <= p (k+p)
            std::uint64_t c = coarse.count();
            BigInt lhs = abs(BigInt(static_cast<unsigned long>(c)) *
                                 BigInt(static_cast<unsigned long>(rep.p)) -
                             BigInt(static_cast<unsigned long>(n)));
            BigInt rhs = BigInt(static_cast<unsigned long>(rep.p)) *
                         BigInt(static_cast<unsigned long>(k + rep.p));
            if (lhs > rhs) coarse_ok = false;
        }
    }
    // tail sups: suffix maxima over segments
    for (std::size_t i = seg_max.size(); i-- > 1;)
        if (seg_max[i] > seg_max[i - 1]) seg_max[i - 1] = seg_max[i];
    for (std::size_t i = 0; i < cps.size(); ++i) {
        LimitCheckpoint cp;
        cp.n = cps[i];
        if constexpr (std::is_same_v<V, Rat>) {
            cp.tail_sup = seg_max[i];
        } else {
            cp.tail_sup = Rat(seg_max[i]);
        }
        rep.checkpoints.push_back(std::move(cp));
    }
    rep.coarse_bound_ok = coarse_ok;
    if constexpr (std::is_same_v<V, Rat>) {
        rep.final_deviation = final_dev;
    } else {
        rep.final_deviation = Rat(final_dev);
    }
    return rep;
}

}  // namespace

BasicFactorLimitReport basic_factor_limit_check(const Block& b, std::size_t r,
                                                std::uint64_t n_max, bool exact, double rho) {
    if (n_max < b.k())
        throw OutOfRangeError("basic_factor_limit_check: n_max below the block length");
    return exact ? limit_impl<Rat>(b, r, n_max, rho) : limit_impl<double>(b, r, n_max, rho);
}

OscillationReport oscillation_report(const Word& stream, const std::vector<Block>& blocks,
                                     std::size_t r_max,
                                     std::optional<std::pair<std::uint64_t, std::uint64_t>>
                                         window,
                                     std::optional<Rat> tolerance, std::uint64_t exact_cap) {
    OscillationReport rep;
    rep.tolerance = tolerance.value_or(make_rat(1, 50));
    rep.desk_realized = true;
    const std::uint64_t len = stream.size();
    for (const Block& b : blocks) {
        std::uint64_t n0 = window ? window->first : std::max<std::uint64_t>(b.k(), len / 4);
        std::uint64_t n1 = window ? window->second : len;
        n0 = std::max<std::uint64_t>(n0, b.k());
        const std::uint64_t p = basic_period(b);
        for (std::size_t r = 0; r <= r_max; ++r) {
            const bool exact = r == 0 || n1 <= exact_cap;
            AccumulationEstimate est = accumulation_interval(stream, b, r, n0, n1, exact);
            OscillationRow row{.block = b, .r = r, .n0 = est.n0, .n1 = est.n1};
            row.lo = est.lo;
            row.hi = est.hi;
            row.per = p;
            row.gap_bound_ok = est.gap_bound_ok;
            row.exact = est.exact;
            Rat upper = make_rat(1, static_cast<unsigned long>(p));
            Rat hi_gap = upper - est.hi;
            Rat shortfall = std::max(est.lo, hi_gap);
            if (shortfall < 0) shortfall = 0;
            row.shortfall = shortfall;
            if (shortfall > rep.tolerance) rep.desk_realized = false;
            rep.rows.push_back(std::move(row));
        }
    }
    return rep;
}

}  // namespace nnlab
