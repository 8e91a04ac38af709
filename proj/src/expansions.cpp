#include "nnlab/expansions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <random>

namespace nnlab {

namespace {

enum class Kind { cf, lueroth };

struct AmbiguousDigit {
    std::size_t index;  // 1-based digit that could not be certified
};

struct Iv {
    Rat lo, hi;  // lo <= hi; degenerate (lo == hi) means the value is exact
    bool degenerate() const { return lo == hi; }
};

// One certified digit from the current interval; advances the interval.
Digit certified_step(Iv& iv, Kind kind, std::size_t index) {
    if (iv.degenerate()) {
        const Rat& x = iv.lo;
        Rat inv = 1 / x;
        if (is_integer(inv))
            throw NotInUInfinityError("orbit hit the partition boundary 1/" + inv.get_str() +
                                          " at digit " + std::to_string(index),
                                      index);
        BigInt a = rat_floor(inv);
        Digit d = to_u64(a);
        if (kind == Kind::cf) {
            iv.lo = iv.hi = inv - Rat(a);
        } else {
            Rat next = Rat(a) * Rat(a + 1) * x - Rat(a);
            iv.lo = iv.hi = next;
        }
        return d;
    }

    if (!(iv.lo > 0) || !(iv.hi < 1)) throw AmbiguousDigit{index};
    BigInt a = rat_floor(1 / iv.hi);
    if (a < 1) throw AmbiguousDigit{index};
    // certified iff [lo, hi] lies strictly inside (1/(a+1), 1/a)
    Rat upper = make_rat(BigInt(1), a);
    Rat lower = make_rat(BigInt(1), a + 1);
    if (!(iv.lo > lower) || !(iv.hi < upper)) throw AmbiguousDigit{index};
    Digit d = to_u64(a);
    if (kind == Kind::cf) {
        Rat nlo = 1 / iv.hi - Rat(a);
        Rat nhi = 1 / iv.lo - Rat(a);
        iv.lo = nlo;
        iv.hi = nhi;
    } else {
        Rat scale = Rat(a) * Rat(a + 1);
        iv.lo = scale * iv.lo - Rat(a);
        iv.hi = scale * iv.hi - Rat(a);
    }
    return d;
}

Word interval_digits(Iv iv, std::size_t count, Kind kind) {
    Word out;
    for (std::size_t idx = 1; idx <= count; ++idx) out.push_back(certified_step(iv, kind, idx));
    return out;
}

unsigned resolve_start_bits(unsigned start_bits) {
    if (start_bits > 0) return start_bits;
    if (const char* env = std::getenv("NNLAB_PRECISION_BITS")) {
        long v = std::atol(env);
        if (v >= 8) return static_cast<unsigned>(v);
    }
    return 128;
}

// sqrt(d) in [s/2^B, (s+1)/2^B]
void sqrt_enclosure(const BigInt& d, unsigned bits, BigInt& lo_num, BigInt& hi_num) {
    BigInt scaled = d * big_pow2(2 * bits);
    BigInt s;
    mpz_sqrt(s.get_mpz_t(), scaled.get_mpz_t());
    lo_num = s;
    hi_num = s + 1;
}

Iv surd_enclosure(const Surd& s, unsigned bits) {
    BigInt snum_lo, snum_hi;
    sqrt_enclosure(s.d, bits, snum_lo, snum_hi);
    BigInt den = big_pow2(bits);
    Rat r_lo = make_rat(snum_lo, den);
    Rat r_hi = make_rat(snum_hi, den);
    Rat e1 = (Rat(s.a) + Rat(s.b) * r_lo) / Rat(s.c);
    Rat e2 = (Rat(s.a) + Rat(s.b) * r_hi) / Rat(s.c);
    return e1 <= e2 ? Iv{e1, e2} : Iv{e2, e1};
}

constexpr unsigned kMaxSurdBits = 1u << 22;

Word surd_digits(const Surd& s, std::size_t count, Kind kind, unsigned start_bits) {
    std::size_t reached = 0;
    for (unsigned bits = start_bits; bits <= kMaxSurdBits; bits *= 2) {
        Iv iv = surd_enclosure(s, bits);
        if (iv.hi <= 0 || iv.lo >= 1) throw UsageError("surd value lies outside (0,1)");
        try {
            return interval_digits(iv, count, kind);
        } catch (const AmbiguousDigit& amb) {
            reached = std::max(reached, amb.index);
        }
    }
    throw PrecisionError("surd digits not certifiable within " + std::to_string(kMaxSurdBits) +
                             " bits; reached digit " + std::to_string(reached),
                         reached);
}

Word digits_impl(const RealInput& x, std::size_t count, Kind kind, unsigned start_bits) {
    const unsigned bits = resolve_start_bits(start_bits);
    if (std::holds_alternative<Rat>(x)) {
        const Rat& v = std::get<Rat>(x);
        if (!(v > 0 && v < 1)) throw UsageError("value must lie in (0,1), got " + rat_str(v));
        return interval_digits(Iv{v, v}, count, kind);
    }
    if (std::holds_alternative<Surd>(x)) return surd_digits(std::get<Surd>(x), count, kind, bits);
    const DecimalInput& dec = std::get<DecimalInput>(x);
    if (!(dec.value - dec.radius > 0 && dec.value + dec.radius < 1))
        throw UsageError("decimal with its radius must lie inside (0,1)");
    try {
        return interval_digits(Iv{dec.value - dec.radius, dec.value + dec.radius}, count, kind);
    } catch (const AmbiguousDigit& amb) {
        throw PrecisionError("decimal precision exhausted at digit " + std::to_string(amb.index),
                             amb.index);
    }
}

}  // namespace

Word cf_digits(const RealInput& x, std::size_t count, unsigned start_bits) {
    return digits_impl(x, count, Kind::cf, start_bits);
}

Word lueroth_digits(const RealInput& x, std::size_t count, unsigned start_bits) {
    return digits_impl(x, count, Kind::lueroth, start_bits);
}

RatInterval cf_reconstruct(const Word& digits) {
    if (digits.empty()) throw InvalidOrderError("cf_reconstruct: need at least one digit");
    // p0/q0 = 0/1, p1/q1 = 1/a1; cylinder spans p_n/q_n and (p_n+p_{n-1})/(q_n+q_{n-1})
    BigInt p_prev(0), q_prev(1);
    BigInt p(1), q(static_cast<unsigned long>(digits[0]));
    for (std::size_t i = 1; i < digits.size(); ++i) {
        BigInt a(static_cast<unsigned long>(digits[i]));
        BigInt p_next = a * p + p_prev;
        BigInt q_next = a * q + q_prev;
        p_prev = p;
        q_prev = q;
        p = p_next;
        q = q_next;
    }
    Rat end1 = make_rat(p, q);
    Rat end2 = make_rat(p + p_prev, q + q_prev);
    return end1 <= end2 ? RatInterval{end1, end2} : RatInterval{end2, end1};
}

RatInterval lueroth_reconstruct(const Word& digits) {
    if (digits.empty()) throw InvalidOrderError("lueroth_reconstruct: need at least one digit");
    Rat lo(0), hi(1);
    for (std::size_t i = digits.size(); i-- > 0;) {
        Rat d(static_cast<unsigned long>(digits[i]));
        Rat den = d * (d + 1);
        lo = (lo + d) / den;
        hi = (hi + d) / den;
    }
    return {lo, hi};
}

GaussMeasure gauss_block_measure(Digit b) {
    if (b < 1) throw InvalidDigitError("gauss_block_measure: digit must be >= 1");
    BigInt bb(static_cast<unsigned long>(b));
    GaussMeasure out;
    out.log_num = (bb + 1) * (bb + 1);
    out.log_den = bb * (bb + 2);
    out.value = std::log2(out.log_num.get_d() / out.log_den.get_d());
    return out;
}

Word sample_uniform(std::uint64_t seed, std::size_t count) {
    std::mt19937_64 gen(seed);
    unsigned bits = static_cast<unsigned>(std::max<std::size_t>(4 * count + 256, 1024));
    BigInt r(0);
    unsigned have = 0;
    auto extend_to = [&](unsigned want) {
        while (have < want) {
            r <<= 64;
            r += BigInt(static_cast<unsigned long>(gen()));
            have += 64;
        }
    };
    extend_to(bits);
    for (int attempt = 0; attempt < 24; ++attempt) {
        BigInt den = big_pow2(have);
        if (r != 0 && r + 1 != den) {
            Iv iv{make_rat(r, den), make_rat(r + 1, den)};
            try {
                return interval_digits(iv, count, Kind::cf);
            } catch (const AmbiguousDigit&) {
                // fall through to refine
            }
        }
        extend_to(have * 2);
    }
    throw PrecisionError("sample_uniform: refinement budget exhausted", count);
}

RealInput parse_real(const std::string& raw) {
    std::string text;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) text += c;
    if (text.empty()) throw UsageError("empty value");

    auto parse_int = [&](const std::string& s) -> BigInt {
        std::string body = (!s.empty() && s[0] == '+') ? s.substr(1) : s;
        if (body.empty()) throw UsageError("bad integer in value '" + raw + "'");
        try {
            return BigInt(body);
        } catch (const std::invalid_argument&) {
            throw UsageError("bad integer '" + s + "' in value '" + raw + "'");
        }
    };

    auto sqrt_pos = text.find("sqrt(");
    if (sqrt_pos != std::string::npos) {
        auto close = text.find(')', sqrt_pos);
        if (close == std::string::npos) throw UsageError("unclosed sqrt( in '" + raw + "'");
        BigInt d = parse_int(text.substr(sqrt_pos + 5, close - sqrt_pos - 5));
        if (d < 0) throw UsageError("sqrt of a negative integer in '" + raw + "'");

        BigInt a(0), b(1), c(1);
        if (text[0] == '(') {
            // (a+b*sqrt(d))/c  or  (a-b*sqrt(d))/c
            auto endp = text.find(")/", close);
            if (endp == std::string::npos || endp != close + 1)
                throw UsageError("surd must look like (a+b*sqrt(d))/c, got '" + raw + "'");
            c = parse_int(text.substr(endp + 2));
            std::string inner = text.substr(1, sqrt_pos - 1);  // "a+b*" or "a-b*"
            if (inner.empty() || inner.back() != '*')
                throw UsageError("surd must look like (a+b*sqrt(d))/c, got '" + raw + "'");
            inner.pop_back();
            std::size_t split = std::string::npos;
            for (std::size_t i = inner.size(); i-- > 1;) {
                if (inner[i] == '+' || inner[i] == '-') {
                    split = i;
                    break;
                }
            }
            if (split == std::string::npos)
                throw UsageError("surd must look like (a+b*sqrt(d))/c, got '" + raw + "'");
            a = parse_int(inner.substr(0, split));
            std::string bs = inner.substr(split);  // signed
            b = bs == "+" ? BigInt(1) : bs == "-" ? BigInt(-1) : parse_int(bs);
        } else if (sqrt_pos == 0) {
            // sqrt(d) with optional +k or -k tail
            std::string tail = text.substr(close + 1);
            if (!tail.empty()) a = parse_int(tail);
        } else {
            throw UsageError("unsupported surd form '" + raw + "'");
        }
        if (c == 0) throw UsageError("zero denominator in surd '" + raw + "'");

        // perfect squares fold to an exact rational
        BigInt root;
        if (mpz_perfect_square_p(d.get_mpz_t())) {
            mpz_sqrt(root.get_mpz_t(), d.get_mpz_t());
            return make_rat(a + b * root, c);
        }
        return Surd{a, b, c, d};
    }

    auto at = text.find('@');
    if (at != std::string::npos) {
        Rat value = parse_rational(text.substr(0, at));
        Rat radius = parse_rational(text.substr(at + 1));
        if (radius < 0) throw UsageError("negative radius in '" + raw + "'");
        return DecimalInput{value, radius};
    }
    if (text.find('.') != std::string::npos) {
        Rat value = parse_rational(text);
        // default radius: half a unit in the last decimal place
        std::size_t frac = text.size() - text.find('.') - 1;
        Rat radius = make_rat(BigInt(1), 2 * big_pow(BigInt(10), frac));
        return DecimalInput{value, radius};
    }
    return parse_rational(text);
}

}  // namespace nnlab
