#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "nnlab/words.hpp"

namespace nnlab {

/// (a + b*sqrt(d))/c with integer components; d nonnegative and, after
/// parsing, never a perfect square (those fold to Rat).
struct Surd {
    BigInt a, b, c, d;
};

/// Decimal literal with a stated error radius: the input is only known to
/// lie in [value - radius, value + radius].
struct DecimalInput {
    Rat value;
    Rat radius;
};

using RealInput = std::variant<Rat, Surd, DecimalInput>;

/// Value grammar: "p/q", "(a+b*sqrt(d))/c", "sqrt(d)" with optional "+k"/"-k",
/// and decimals "0.414213" with an optional explicit radius suffix
/// "0.414213@1/1000000" (default radius: half a unit in the last place).
RealInput parse_real(const std::string& text);

struct RatInterval {
    Rat lo, hi;
    Rat width() const { return hi - lo; }
    bool contains(const Rat& x) const { return lo <= x && x <= hi; }
};

/// First `count` continued-fraction digits of x, each certified by
/// enclosing-interval arithmetic.  start_bits 0 means: NNLAB_PRECISION_BITS
/// or 128; surds double their precision on ambiguity.
Word cf_digits(const RealInput& x, std::size_t count, unsigned start_bits = 0);

/// Exact rational interval spanned by the cylinder of a digit prefix
/// (between consecutive convergents).
RatInterval cf_reconstruct(const Word& digits);

/// Lueroth digits: digit n at x in (1/(n+1), 1/n), then x -> n(n+1)x - n.
Word lueroth_digits(const RealInput& x, std::size_t count, unsigned start_bits = 0);

/// Image of [0,1] under the inverse branches t -> (t+d)/(d(d+1)) composed
/// along the digit prefix.
RatInterval lueroth_reconstruct(const Word& digits);

struct GaussMeasure {
    BigInt log_num, log_den;  // measure = log2(log_num / log_den)
    double value;
};

/// Gauss measure of the digit cylinder (1/(b+1), 1/b):
/// integrating the density 1/((1+x) log 2) gives log2((b+1)^2 / (b(b+2))).
GaussMeasure gauss_block_measure(Digit b);

/// Continued-fraction digits of a uniform random point of (0,1), drawn at
/// enough dyadic precision; deterministic per seed, precision doubles (by
/// extending the same bit stream) until every digit is certified.
Word sample_uniform(std::uint64_t seed, std::size_t count);

}  // namespace nnlab
