#include "nnlab/words.hpp"

#include <algorithm>
#include <sstream>

namespace nnlab {

namespace {

std::vector<Digit> parse_digit_list(const std::string& text, const char* what) {
    std::vector<Digit> out;
    if (text.empty()) return out;
    bool has_comma = text.find(',') != std::string::npos;
    if (has_comma) {
        std::stringstream ss(text);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) throw UsageError(std::string(what) + ": empty digit in '" + text + "'");
            for (char c : tok)
                if (c < '0' || c > '9')
                    throw UsageError(std::string(what) + ": bad digit '" + tok + "'");
            out.push_back(std::stoull(tok));
        }
    } else {
        for (char c : text) {
            if (c < '0' || c > '9')
                throw UsageError(std::string(what) + ": bad digit character in '" + text + "'");
            out.push_back(static_cast<Digit>(c - '0'));
        }
    }
    return out;
}

void check_digits(const std::vector<Digit>& ds, const char* what) {
    for (Digit d : ds)
        if (d < 1) throw InvalidDigitError(std::string(what) + ": digits must be >= 1");
}

}  // namespace

Word::Word(std::vector<Digit> digits) : digits_(std::move(digits)) {
    check_digits(digits_, "Word");
}

Word::Word(std::initializer_list<Digit> digits) : digits_(digits) {
    check_digits(digits_, "Word");
}

Word Word::parse(const std::string& text) { return Word(parse_digit_list(text, "Word")); }

void Word::push_back(Digit d) {
    if (d < 1) throw InvalidDigitError("Word: digits must be >= 1");
    digits_.push_back(d);
}

void Word::append(const Word& other) {
    digits_.insert(digits_.end(), other.digits_.begin(), other.digits_.end());
}

Digit Word::max_digit() const {
    Digit m = 0;
    for (Digit d : digits_) m = std::max(m, d);
    return m;
}

std::string Word::to_text() const {
    std::string out;
    for (std::size_t i = 0; i < digits_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(digits_[i]);
    }
    return out;
}

Block::Block(std::vector<Digit> digits) : digits_(std::move(digits)) {
    if (digits_.empty()) throw InvalidOrderError("Block: must be nonempty");
    check_digits(digits_, "Block");
}

Block::Block(std::initializer_list<Digit> digits) : Block(std::vector<Digit>(digits)) {}

Block Block::parse(const std::string& text) { return Block(parse_digit_list(text, "Block")); }

Block Block::from_word(const Word& w, std::size_t pos, std::size_t k) {
    if (pos + k > w.size()) throw OutOfRangeError("Block::from_word: slice out of range");
    std::vector<Digit> ds(w.digits().begin() + pos, w.digits().begin() + pos + k);
    return Block(std::move(ds));
}

Digit Block::max_digit() const {
    Digit m = 0;
    for (Digit d : digits_) m = std::max(m, d);
    return m;
}

std::string Block::to_text() const {
    std::string out;
    for (std::size_t i = 0; i < digits_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(digits_[i]);
    }
    return out;
}

Rat FreqVector::total() const {
    Rat sum(0);
    for (const auto& [b, v] : entries) sum += v;
    return sum;
}

std::uint64_t count_block(const Word& w, const Block& b, std::uint64_t n) {
    if (n > w.size()) throw OutOfRangeError("count_block: n exceeds word length");
    const std::size_t k = b.k();
    std::uint64_t count = 0;
    // occurrences must fit inside the first n letters; this is what makes
    // sum-of-frequencies = (n-k+1)/n an identity
    for (std::uint64_t i = 0; i < n; ++i) {
        if (i + k > n) break;
        bool hit = true;
        for (std::size_t j = 0; j < k; ++j) {
            if (w[i + j] != b[j]) {
                hit = false;
                break;
            }
        }
        if (hit) ++count;
    }
    return count;
}

FreqVector freq_vector(const Word& w, std::size_t k, std::uint64_t n) {
    if (k < 1) throw InvalidOrderError("freq_vector: k must be >= 1");
    if (k > n) throw InvalidOrderError("freq_vector: k exceeds n");
    if (n > w.size()) throw OutOfRangeError("freq_vector: n exceeds word length");
    FreqVector out;
    out.k = k;
    out.n = n;
    std::map<Block, std::uint64_t> counts;
    for (std::uint64_t i = 0; i + k <= w.size() && i < n; ++i)
        counts[Block::from_word(w, i, k)] += 1;
    for (const auto& [b, c] : counts) out.entries.emplace(b, make_rat(BigInt(c), BigInt(n)));
    return out;
}

std::size_t basic_period(const Block& b) {
    // border array (failure function); per(b) = k - longest proper border
    const std::size_t k = b.k();
    std::vector<std::size_t> border(k, 0);
    std::size_t len = 0;
    for (std::size_t i = 1; i < k; ++i) {
        while (len > 0 && b[i] != b[len]) len = border[len - 1];
        if (b[i] == b[len]) ++len;
        border[i] = len;
    }
    return k - border[k - 1];
}

Word basic_factor(const Block& b) {
    std::size_t p = basic_period(b);
    std::vector<Digit> ds(b.digits().begin(), b.digits().begin() + p);
    return Word(std::move(ds));
}

Word periodic_truncate(const Word& seed, std::uint64_t total_length) {
    if (seed.empty()) throw InvalidOrderError("periodic_truncate: seed must be nonempty");
    std::vector<Digit> out;
    out.reserve(total_length);
    for (std::uint64_t i = 0; i < total_length; ++i) out.push_back(seed[i % seed.size()]);
    return Word(std::move(out));
}

}  // namespace nnlab
