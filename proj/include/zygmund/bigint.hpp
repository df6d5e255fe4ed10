#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace zygmund {

using BigInt = mpz_class;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotFoundError : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

inline BigInt big_pow(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

/// Largest t >= 1 with |q| = s^t for some integer s >= 2; writes s.
/// Requires |q| >= 2.
inline unsigned long max_power_exponent(const BigInt& q, BigInt& root_out) {
    BigInt a = abs(q);
    unsigned long bits = mpz_sizeinbase(a.get_mpz_t(), 2);
    for (unsigned long t = bits; t >= 2; --t) {
        BigInt s;
        if (mpz_root(s.get_mpz_t(), a.get_mpz_t(), t) != 0) {
            root_out = s;
            return t;
        }
    }
    root_out = a;
    return 1;
}

inline int64_t to_int64(const BigInt& v) {
    if (!v.fits_slong_p())
        throw Error("BigInt does not fit in int64: " + v.get_str());
    return static_cast<int64_t>(v.get_si());
}

}  // namespace zygmund
