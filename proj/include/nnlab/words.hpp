#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "nnlab/errors.hpp"
#include "nnlab/rational.hpp"

namespace nnlab {

using Digit = std::uint64_t;

/// Finite word over the alphabet {1, 2, 3, ...}.
class Word {
  public:
    Word() = default;
    explicit Word(std::vector<Digit> digits);
    Word(std::initializer_list<Digit> digits);

    // Accepts "1,2,1,3" and, when every character is a digit 1..9, "1213".
    static Word parse(const std::string& text);

    std::size_t size() const { return digits_.size(); }
    bool empty() const { return digits_.empty(); }
    Digit operator[](std::size_t i) const { return digits_[i]; }
    const std::vector<Digit>& digits() const { return digits_; }

    void push_back(Digit d);
    void append(const Word& other);

    // Largest digit, or 0 for the empty word.
    Digit max_digit() const;

    std::string to_text() const;  // comma separated

    auto begin() const { return digits_.begin(); }
    auto end() const { return digits_.end(); }

    bool operator==(const Word&) const = default;

  private:
    std::vector<Digit> digits_;
};

/// Nonempty block of digits; the key type for frequency statistics.
class Block {
  public:
    explicit Block(std::vector<Digit> digits);
    Block(std::initializer_list<Digit> digits);

    static Block parse(const std::string& text);
    // Block formed by w[pos], ..., w[pos+k-1].
    static Block from_word(const Word& w, std::size_t pos, std::size_t k);

    std::size_t k() const { return digits_.size(); }
    Digit operator[](std::size_t i) const { return digits_[i]; }
    const std::vector<Digit>& digits() const { return digits_; }
    Digit max_digit() const;

    Word to_word() const { return Word(digits_); }
    std::string to_text() const;

    auto operator<=>(const Block&) const = default;

  private:
    std::vector<Digit> digits_;
};

/// Finitely supported vector of block frequencies with exact entries.
/// Derived from a length-n prefix, so entries sum to (n-k+1)/n.
struct FreqVector {
    std::size_t k = 1;
    std::uint64_t n = 0;  // sample length used as the divisor
    std::map<Block, Rat> entries;

    Rat at(const Block& b) const {
        auto it = entries.find(b);
        return it == entries.end() ? Rat(0) : it->second;
    }
    Rat total() const;
};

/// Float flavor used by the fast Cesaro mode.
struct FreqVectorF {
    std::size_t k = 1;
    std::uint64_t n = 0;
    std::map<Block, double> entries;

    double at(const Block& b) const {
        auto it = entries.find(b);
        return it == entries.end() ? 0.0 : it->second;
    }
};

/// Occurrences of b starting at positions 0 <= i < n with the whole block
/// inside w.  Overlaps count.
std::uint64_t count_block(const Word& w, const Block& b, std::uint64_t n);

/// Exact block-frequency vector of the first n digits of w.
FreqVector freq_vector(const Word& w, std::size_t k, std::uint64_t n);

/// Smallest p <= k with b[p+j] = b[j] for all 1 <= j <= k-p.
std::size_t basic_period(const Block& b);

/// Prefix of b of length basic_period(b).
Word basic_factor(const Block& b);

/// First total_length digits of seed repeated forever.
Word periodic_truncate(const Word& seed, std::uint64_t total_length);

}  // namespace nnlab
