#pragma once

#include <map>
#include <utility>
#include <vector>

#include "zygmund/root_exponent.hpp"

namespace zygmund {

/// A dyadic box side is 2^e where e is an integer or a root exponent; the
/// reduced RootExponent covers both (r == 1 is the integer case).
using Exponent = RootExponent;

inline std::strong_ordering compare_exponents(const Exponent& a, const Exponent& b) {
    return compare(a, b);
}

/// Splits |q| = outside^r * base with base r-th-power-free (up to the trial
/// bound; any unfactored remainder is left in base, which only makes the
/// classification more conservative).
inline void extract_rth_power(const BigInt& mag, unsigned long r, BigInt& outside,
                              BigInt& base) {
    outside = 1;
    base = 1;
    BigInt rem = mag;
    const long kTrialCap = 1000000;
    for (BigInt p = 2; p * p <= rem && p <= kTrialCap; p += (p == 2 ? 1 : 2)) {
        if (!mpz_divisible_p(rem.get_mpz_t(), p.get_mpz_t())) continue;
        unsigned long e =
            mpz_remove(rem.get_mpz_t(), rem.get_mpz_t(), p.get_mpz_t());
        outside *= big_pow(p, e / r);
        base *= big_pow(p, e % r);
    }
    base *= rem;
}

/// Formal sum of exponents with exact cancellation: an integer part plus
/// integer coefficients on reduced radicals base^(1/r). Sums whose radical
/// coefficients all vanish are recognized as exact integers; this is what
/// makes volumes like 2^(sqrt2 - sqrt2 + 1 - 1) come out exactly 1.
class ExponentSum {
public:
    using Key = std::pair<BigInt, unsigned long>;  // (base, r), r >= 2

    void add(const Exponent& e) { accumulate(e, 1); }
    void subtract(const Exponent& e) { accumulate(e, -1); }

    bool is_integer() const {
        for (const auto& [k, c] : radicals_)
            if (c != 0) return false;
        return true;
    }

    const BigInt& integer_part() const { return int_part_; }

    /// Nonzero radical terms as (base, r, coefficient).
    std::vector<std::tuple<BigInt, unsigned long, BigInt>> radical_terms() const {
        std::vector<std::tuple<BigInt, unsigned long, BigInt>> out;
        for (const auto& [k, c] : radicals_)
            if (c != 0) out.emplace_back(k.first, k.second, c);
        return out;
    }

private:
    void accumulate(const Exponent& e, int sign) {
        if (e.is_integer()) {
            int_part_ += sign > 0 ? e.radicand() : BigInt(-e.radicand());
            return;
        }
        BigInt outside, base;
        extract_rth_power(abs(e.radicand()), e.root(), outside, base);
        BigInt coeff = outside * e.sign() * sign;
        if (base == 1) {
            int_part_ += coeff;
            return;
        }
        radicals_[{base, e.root()}] += coeff;
    }

    BigInt int_part_ = 0;
    std::map<Key, BigInt> radicals_;
};

}  // namespace zygmund
