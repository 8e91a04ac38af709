#include <doctest.h>

#include <random>

#include "nnlab/words.hpp"

using namespace nnlab;

namespace {

// literal-definition oracle: scan every start position
std::uint64_t naive_count(const Word& w, const Block& b, std::uint64_t n) {
    std::uint64_t c = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        if (i + b.k() > w.size()) continue;
        bool hit = true;
        for (std::size_t j = 0; j < b.k(); ++j)
            if (w[i + j] != b[j]) hit = false;
        if (hit) ++c;
    }
    return c;
}

std::map<Block, Rat> naive_freq(const Word& w, std::size_t k, std::uint64_t n) {
    std::map<Block, Rat> out;
    for (std::uint64_t i = 0; i + k <= w.size() && i < n; ++i) {
        Block b = Block::from_word(w, i, k);
        out[b] += make_rat(1, static_cast<unsigned long>(n));
    }
    return out;
}

std::size_t naive_period(const Block& b) {
    const std::size_t k = b.k();
    for (std::size_t p = 1; p <= k; ++p) {
        bool ok = true;
        for (std::size_t j = 1; j + p <= k; ++j)
            if (b[p + j - 1] != b[j - 1]) ok = false;
        if (ok) return p;
    }
    return k;
}

Word random_word(std::mt19937_64& gen, std::size_t len, Digit max_digit) {
    std::uniform_int_distribution<Digit> dist(1, max_digit);
    std::vector<Digit> ds(len);
    for (auto& d : ds) d = dist(gen);
    return Word(std::move(ds));
}

// enumerate all words of the given length over {1..alpha}
template <class F>
void for_all_words(std::size_t len, Digit alpha, F&& fn) {
    std::vector<Digit> ds(len, 1);
    while (true) {
        fn(Word(ds));
        std::size_t pos = len;
        while (pos > 0 && ds[pos - 1] == alpha) ds[--pos] = 1;
        if (pos == 0) break;
        ds[pos - 1] += 1;
    }
}

}  // namespace

TEST_CASE("count_block examples") {
    CHECK(count_block(Word{1, 1, 1}, Block{1, 1}, 3) == 2);  // overlaps at i=0,1
    CHECK(count_block(Word{1, 2, 1, 2, 1, 2}, Block{1, 2}, 6) == 3);
    CHECK(count_block(Word{1, 2, 1, 2, 1, 2}, Block{1, 2}, 6) ==
          naive_count(Word{1, 2, 1, 2, 1, 2}, Block{1, 2}, 6));
    CHECK(count_block(Word{1, 2, 3, 4, 5}, Block{9}, 5) == 0);
    CHECK_THROWS_AS(count_block(Word{1, 2}, Block{1}, 3), OutOfRangeError);
}

TEST_CASE("count_block bounds") {
    std::mt19937_64 gen(7);
    for (int it = 0; it < 200; ++it) {
        Word w = random_word(gen, 30, 3);
        for (std::size_t k = 1; k <= 4; ++k) {
            Block b = Block::from_word(random_word(gen, k, 3), 0, k);
            for (std::uint64_t n = k; n <= w.size(); n += 7) {
                std::uint64_t c = count_block(w, b, n);
                CHECK(c <= n - k + 1);
                CHECK(c == naive_count(w, b, n));
            }
        }
    }
}

TEST_CASE("freq_vector examples") {
    Word w{1, 2, 1, 2};
    FreqVector f1 = freq_vector(w, 1, 4);
    CHECK(f1.at(Block{1}) == make_rat(1, 2));
    CHECK(f1.at(Block{2}) == make_rat(1, 2));

    FreqVector f2 = freq_vector(w, 2, 4);
    CHECK(f2.at(Block{1, 2}) == make_rat(2, 4));
    CHECK(f2.at(Block{2, 1}) == make_rat(1, 4));
    CHECK(f2.total() == make_rat(3, 4));  // (n-k+1)/n

    FreqVector f3 = freq_vector(Word{2, 2, 2, 2}, 2, 4);
    CHECK(f3.at(Block{2, 2}) == make_rat(3, 4));
    CHECK(f3.entries.size() == 1);

    CHECK_THROWS_AS(freq_vector(w, 3, 2), InvalidOrderError);
}

TEST_CASE("freq_vector matches the naive oracle") {
    // exhaustive up to length 8 over {1,2,3}, random beyond
    for (std::size_t len = 1; len <= 8; ++len) {
        for_all_words(len, 3, [&](const Word& w) {
            for (std::size_t k = 1; k <= std::min<std::size_t>(len, 3); ++k) {
                FreqVector fv = freq_vector(w, k, len);
                CHECK(fv.entries == naive_freq(w, k, len));
            }
        });
    }
    std::mt19937_64 gen(11);
    for (int it = 0; it < 1500; ++it) {
        Word w = random_word(gen, 12, 3);
        for (std::size_t k = 1; k <= 4; ++k) {
            FreqVector fv = freq_vector(w, k, 12);
            CHECK(fv.entries == naive_freq(w, k, 12));
            Rat expect = make_rat(BigInt(12 - k + 1), BigInt(12));
            CHECK(fv.total() == expect);
        }
    }
}

TEST_CASE("basic_period and basic_factor") {
    CHECK(basic_period(Block{1, 1, 1}) == 1);
    CHECK(basic_period(Block{1, 2, 1, 2}) == 2);
    CHECK(basic_period(Block{1, 2, 1, 3}) == 4);
    CHECK(naive_period(Block{1, 2, 1, 3}) == 4);

    CHECK(basic_factor(Block{1, 2, 1, 2}) == Word{1, 2});
    CHECK(basic_factor(Block{1, 1, 1}) == Word{1});
    CHECK(basic_factor(Block{1, 2, 1, 3}) == Word{1, 2, 1, 3});
}

TEST_CASE("basic_period properties, exhaustive") {
    for (std::size_t len = 1; len <= 8; ++len) {
        for_all_words(len, 3, [&](const Word& w) {
            Block b(w.digits());
            std::size_t p = basic_period(b);
            CHECK(p == naive_period(b));
            // doubling the block preserves the period
            std::vector<Digit> doubled = w.digits();
            doubled.insert(doubled.end(), w.digits().begin(), w.digits().end());
            CHECK(basic_period(Block(doubled)) == p);
        });
    }
}

TEST_CASE("periodic_truncate") {
    CHECK(periodic_truncate(Word{1, 2}, 5) == Word{1, 2, 1, 2, 1});
    CHECK(periodic_truncate(Word{1, 2, 3}, 3) == Word{1, 2, 3});
    CHECK(periodic_truncate(Word{2, 1}, 7) == Word{2, 1, 2, 1, 2, 1, 2});
    CHECK(periodic_truncate(Word{1}, 0) == Word{});
}

TEST_CASE("word and block parsing") {
    CHECK(Word::parse("1,2,1,3") == Word{1, 2, 1, 3});
    CHECK(Word::parse("1213") == Word{1, 2, 1, 3});
    CHECK(Word::parse("10,2") == Word{10, 2});
    CHECK(Word::parse("") == Word{});
    CHECK(Block::parse("112").k() == 3);
    CHECK_THROWS_AS(Word({1, 0, 2}), InvalidDigitError);
    CHECK_THROWS_AS(Block(std::vector<Digit>{}), InvalidOrderError);
    CHECK(Word{1, 2, 10}.to_text() == "1,2,10");
}
