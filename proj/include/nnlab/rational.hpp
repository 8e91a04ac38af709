#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "nnlab/errors.hpp"

namespace nnlab {

using BigInt = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(long num, unsigned long den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat make_rat(const BigInt& num, const BigInt& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline BigInt big_pow(const BigInt& base, unsigned long exp) {
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
    return out;
}

inline BigInt big_pow2(unsigned long exp) {
    BigInt out;
    mpz_ui_pow_ui(out.get_mpz_t(), 2, exp);
    return out;
}

// floor(num/den) for a canonical rational, valid for either sign.
inline BigInt rat_floor(const Rat& q) {
    BigInt out;
    mpz_fdiv_q(out.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return out;
}

inline BigInt rat_ceil(const Rat& q) {
    BigInt out;
    mpz_cdiv_q(out.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return out;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline std::uint64_t to_u64(const BigInt& z) {
    if (z < 0 || !z.fits_ulong_p()) throw Error("value does not fit in 64 bits: " + z.get_str());
    return static_cast<std::uint64_t>(z.get_ui());
}

// Parses "p", "p/q", a plain decimal such as "0.25", or scientific notation
// like "1e-15" into an exact rational.
inline Rat parse_rational(const std::string& text) {
    if (text.empty()) throw UsageError("empty rational literal");
    auto epos = text.find_first_of("eE");
    if (epos != std::string::npos && text.find('/') == std::string::npos) {
        Rat mantissa = parse_rational(text.substr(0, epos));
        std::string es = text.substr(epos + 1);
        if (!es.empty() && es[0] == '+') es = es.substr(1);
        bool neg = !es.empty() && es[0] == '-';
        if (neg) es = es.substr(1);
        for (char c : es)
            if (c < '0' || c > '9') throw UsageError("bad exponent in '" + text + "'");
        if (es.empty()) throw UsageError("bad exponent in '" + text + "'");
        BigInt scale = big_pow(BigInt(10), std::stoul(es));
        return neg ? Rat(mantissa / Rat(scale)) : Rat(mantissa * Rat(scale));
    }
    auto slash = text.find('/');
    auto dot = text.find('.');
    try {
        if (slash != std::string::npos) {
            BigInt num(text.substr(0, slash));
            BigInt den(text.substr(slash + 1));
            if (den == 0) throw UsageError("zero denominator in '" + text + "'");
            return make_rat(num, den);
        }
        if (dot != std::string::npos) {
            bool neg = text[0] == '-';
            std::string body = (text[0] == '-' || text[0] == '+') ? text.substr(1) : text;
            auto d2 = body.find('.');
            std::string head = body.substr(0, d2), tail = body.substr(d2 + 1);
            if (head.empty()) head = "0";
            if (tail.empty()) tail = "0";
            for (char c : head + tail)
                if (c < '0' || c > '9') throw UsageError("bad decimal literal '" + text + "'");
            BigInt scale = big_pow(BigInt(10), tail.size());
            BigInt num = BigInt(head) * scale + BigInt(tail);
            if (neg) num = -num;
            return make_rat(num, scale);
        }
        return Rat(BigInt(text));
    } catch (const std::invalid_argument&) {
        throw UsageError("bad rational literal '" + text + "'");
    }
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

}  // namespace nnlab
