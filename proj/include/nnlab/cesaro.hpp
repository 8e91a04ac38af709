#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <type_traits>
#include <vector>

#include "nnlab/words.hpp"

namespace nnlab {

namespace detail {

template <class V>
inline V val_ratio(std::uint64_t num, std::uint64_t den) {
    if constexpr (std::is_same_v<V, Rat>) {
        return make_rat(BigInt(num), BigInt(den));
    } else {
        return static_cast<double>(num) / static_cast<double>(den);
    }
}

template <class V>
inline V val_div(const V& v, std::uint64_t n) {
    if constexpr (std::is_same_v<V, Rat>) {
        Rat out = v / Rat(static_cast<unsigned long>(n));
        return out;
    } else {
        return v / static_cast<double>(n);
    }
}

}  // namespace detail

/// Streaming iterated Cesaro averages P^(r)(w, b, n) over all blocks of one
/// length simultaneously.
///
/// P^(0)(b, n) = count/n changes for every block at every step, so levels
/// are not updated eagerly.  Each block keeps its level sums S^(l) together
/// with the time they were last materialized; over a span where the block's
/// count is constant the sums advance in closed form through the shared
/// prefix tables T_0(n) = sum 1/j and T_{m+1}(n) = sum T_m(j)/j, which the
/// ladder memoizes (exact rationals in exact mode, compensated doubles in
/// fast mode).
template <class V>
class BasicCesaroLadder {
  public:
    static constexpr bool exact = std::is_same_v<V, Rat>;

    BasicCesaroLadder(std::size_t k, std::size_t r_max, std::uint64_t exact_cap = 5000)
        : k_(k), r_max_(r_max), cap_(exact ? exact_cap : UINT64_MAX) {
        if (k < 1) throw InvalidOrderError("CesaroLadder: k must be >= 1");
        tables_.assign(r_max_, {V{}});  // T_m(0) = 0
        comp_.assign(r_max_, 0.0);
    }

    std::size_t k() const { return k_; }
    std::size_t r_max() const { return r_max_; }
    std::uint64_t n() const { return n_; }

    void push_digit(Digit d) {
        if (d < 1) throw InvalidDigitError("push_digit: digits must be >= 1");
        if (n_ + 1 > cap_)
            throw ExactCapError("push_digit: exact ladder capped at n = " + std::to_string(cap_) +
                                "; raise the cap or switch to float mode");
        ++n_;
        extend_tables();
        if (recent_.size() == k_ - 1 || k_ == 1) {
            std::vector<Digit> ds(recent_.begin(), recent_.end());
            ds.push_back(d);
            touch(Block(std::move(ds)));
        }
        if (k_ > 1) {
            recent_.push_back(d);
            if (recent_.size() > k_ - 1) recent_.pop_front();
        }
        if (!history_blocks_.empty()) record_history();
    }

    void push_word(const Word& w) {
        for (Digit d : w) push_digit(d);
    }

    /// P^(r)(b, n) for the current n; 0 for blocks never seen.
    V value(const Block& b, std::size_t r) {
        check_level(r);
        auto it = entries_.find(b);
        if (it == entries_.end()) return V{};
        catch_up(it->second, n_);
        if (r == 0) return detail::val_ratio<V>(it->second.count, n_);
        return detail::val_div<V>(it->second.S[r - 1], n_);
    }

    /// Level-r vector over the requested blocks (default: all blocks seen).
    std::map<Block, V> snapshot_values(std::size_t r,
                                       const std::optional<std::set<Block>>& blocks = {}) {
        check_level(r);
        if (n_ < k_) throw OutOfRangeError("snapshot: fewer digits than the block length");
        std::map<Block, V> out;
        if (blocks) {
            for (const Block& b : *blocks) {
                if (entries_.count(b)) out.emplace(b, value(b, r));
            }
        } else {
            for (auto& [b, e] : entries_) out.emplace(b, value(b, r));
        }
        return out;
    }

    FreqVector snapshot(std::size_t r, const std::optional<std::set<Block>>& blocks = {})
        requires exact
    {
        FreqVector fv;
        fv.k = k_;
        fv.n = n_;
        fv.entries = snapshot_values(r, blocks);
        return fv;
    }

    FreqVectorF snapshot_float(std::size_t r, const std::optional<std::set<Block>>& blocks = {})
        requires(!exact)
    {
        FreqVectorF fv;
        fv.k = k_;
        fv.n = n_;
        fv.entries = snapshot_values(r, blocks);
        return fv;
    }

    /// Start recording per-push values for the given blocks (ring buffer of
    /// the last `capacity` steps); required by gap().
    void enable_history(std::set<Block> blocks, std::size_t capacity) {
        for (const Block& b : blocks)
            if (b.k() != k_) throw InvalidOrderError("enable_history: block length mismatch");
        history_blocks_ = std::move(blocks);
        history_capacity_ = capacity < 2 ? 2 : capacity;
    }

    /// |P^(r)(b, n+1) - P^(r)(b, n)| from the recorded history.
    V gap(const Block& b, std::size_t r, std::uint64_t at_n) const {
        check_level(r);
        const std::vector<V>* v0 = history_at(b, at_n);
        const std::vector<V>* v1 = history_at(b, at_n + 1);
        if (!v0 || !v1)
            throw OutOfRangeError("gap: history does not retain steps " + std::to_string(at_n) +
                                  " and " + std::to_string(at_n + 1));
        V diff = (*v1)[r] - (*v0)[r];
        if constexpr (exact) {
            return abs(diff);
        } else {
            return diff < 0 ? -diff : diff;
        }
    }

    std::vector<Block> seen_blocks() const {
        std::vector<Block> out;
        for (const auto& [b, e] : entries_) out.push_back(b);
        return out;
    }

  private:
    struct Entry {
        std::uint64_t count = 0;
        std::uint64_t last = 0;      // time at which S was materialized
        std::vector<V> S;            // S[l-1] = S^(l)(last), l = 1..r_max
    };

    void check_level(std::size_t r) const {
        if (r > r_max_)
            throw InvalidOrderError("level " + std::to_string(r) + " above r_max = " +
                                    std::to_string(r_max_));
    }

    void extend_tables() {
        // T_0(n) = T_0(n-1) + 1/n, T_m(n) = T_m(n-1) + T_{m-1}(n)/n
        for (std::size_t m = 0; m < r_max_; ++m) {
            V delta = m == 0 ? detail::val_ratio<V>(1, n_)
                             : detail::val_div<V>(tables_[m - 1][n_], n_);
            if constexpr (exact) {
                tables_[m].push_back(tables_[m][n_ - 1] + delta);
            } else {
                // Kahan step: tables_[m] carries its own compensation
                double y = delta - comp_[m];
                double t = tables_[m][n_ - 1] + y;
                comp_[m] = (t - tables_[m][n_ - 1]) - y;
                tables_[m].push_back(t);
            }
        }
    }

    void touch(const Block& b) {
        auto [it, inserted] = entries_.try_emplace(b);
        Entry& e = it->second;
        if (inserted) {
            e.S.assign(r_max_, V{});
            e.last = n_ - 1;
        }
        catch_up(e, n_ - 1);
        e.count += 1;
        V p = detail::val_ratio<V>(e.count, n_);
        for (std::size_t l = 0; l < r_max_; ++l) {
            e.S[l] += p;
            p = detail::val_div<V>(e.S[l], n_);
        }
        e.last = n_;
    }

    void catch_up(Entry& e, std::uint64_t m) {
        if (m <= e.last) return;
        const std::uint64_t a = e.last;
        const V c = detail::val_ratio<V>(e.count, 1);
        // S_l(x) = g[l][0] + sum_v g[l][v] T_{v-1}(x) on the constant-count span
        std::vector<std::vector<V>> g(r_max_ + 1);
        if (r_max_ >= 1) {
            g[1] = {e.S[0] - c * tables_[0][a], c};
            for (std::size_t l = 1; l < r_max_; ++l) {
                std::vector<V>& prev = g[l];
                std::vector<V> next(l + 2, V{});
                V head = e.S[l];
                for (std::size_t v = 0; v < prev.size(); ++v) {
                    head -= prev[v] * tables_[v][a];
                    next[v + 1] = prev[v];
                }
                next[0] = head;
                g[l + 1] = std::move(next);
            }
            for (std::size_t l = 1; l <= r_max_; ++l) {
                V s = g[l][0];
                for (std::size_t v = 1; v < g[l].size(); ++v) s += g[l][v] * tables_[v - 1][m];
                e.S[l - 1] = s;
            }
        }
        e.last = m;
    }

    void record_history() {
        HistoryRow row;
        row.n = n_;
        for (const Block& b : history_blocks_) {
            std::vector<V> vals(r_max_ + 1, V{});
            auto it = entries_.find(b);
            if (it != entries_.end()) {
                catch_up(it->second, n_);
                vals[0] = detail::val_ratio<V>(it->second.count, n_);
                for (std::size_t r = 1; r <= r_max_; ++r)
                    vals[r] = detail::val_div<V>(it->second.S[r - 1], n_);
            }
            row.values.emplace(b, std::move(vals));
        }
        history_.push_back(std::move(row));
        while (history_.size() > history_capacity_) history_.pop_front();
    }

    const std::vector<V>* history_at(const Block& b, std::uint64_t at_n) const {
        for (const auto& row : history_) {
            if (row.n == at_n) {
                auto it = row.values.find(b);
                return it == row.values.end() ? nullptr : &it->second;
            }
        }
        return nullptr;
    }

    struct HistoryRow {
        std::uint64_t n;
        std::map<Block, std::vector<V>> values;
    };

    std::size_t k_;
    std::size_t r_max_;
    std::uint64_t cap_;
    std::uint64_t n_ = 0;
    std::deque<Digit> recent_;                // last k-1 digits
    std::map<Block, Entry> entries_;
    std::vector<std::vector<V>> tables_;      // tables_[m][j] = T_m(j)
    std::vector<double> comp_;                // Kahan carry per table (float mode)
    std::set<Block> history_blocks_;
    std::size_t history_capacity_ = 0;
    std::deque<HistoryRow> history_;
};

using CesaroLadder = BasicCesaroLadder<Rat>;
using FloatCesaroLadder = BasicCesaroLadder<double>;

/// Eager single-block ladder: tracks P^(r)(b, n) for one block with plain
/// per-step updates.  Cheap on memory, pays no table overhead; the tool for
/// long per-n scans.
template <class V>
class BlockLevelLadder {
  public:
    BlockLevelLadder(Block b, std::size_t r_max)
        : block_(std::move(b)), r_max_(r_max), S_(r_max, V{}) {}

    void push_digit(Digit d) {
        if (d < 1) throw InvalidDigitError("push_digit: digits must be >= 1");
        ++n_;
        const std::size_t k = block_.k();
        if (k == 1) {
            if (d == block_[0]) ++count_;
        } else {
            recent_.push_back(d);
            if (recent_.size() > k) recent_.pop_front();
            if (recent_.size() == k) {
                bool hit = true;
                for (std::size_t j = 0; j < k; ++j)
                    if (recent_[j] != block_[j]) {
                        hit = false;
                        break;
                    }
                if (hit) ++count_;
            }
        }
        V p = detail::val_ratio<V>(count_, n_);
        for (std::size_t l = 0; l < r_max_; ++l) {
            S_[l] += p;
            p = detail::val_div<V>(S_[l], n_);
        }
    }

    std::uint64_t n() const { return n_; }
    std::uint64_t count() const { return count_; }
    const Block& block() const { return block_; }

    V value(std::size_t r) const {
        if (r > r_max_) throw InvalidOrderError("BlockLevelLadder: level above r_max");
        if (n_ == 0) return V{};
        if (r == 0) return detail::val_ratio<V>(count_, n_);
        return detail::val_div<V>(S_[r - 1], n_);
    }

  private:
    Block block_;
    std::size_t r_max_;
    std::uint64_t n_ = 0;
    std::uint64_t count_ = 0;
    std::deque<Digit> recent_;
    std::vector<V> S_;
};

/// Geometric checkpoint indices ceil(rho^i) <= n_max, deduplicated.
std::vector<std::uint64_t> geometric_checkpoints(std::uint64_t n_max, double rho = 1.25);

}  // namespace nnlab
