#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cstdint>
#include <string>

#include "zygmund/dyadic.hpp"
#include "zygmund/exponent.hpp"

namespace zygmund {

/// RAII wrapper over one mpfr number.
class MpReal {
public:
    explicit MpReal(mpfr_prec_t prec = 128) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    MpReal(const MpReal& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    MpReal(MpReal&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    MpReal& operator=(const MpReal& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    MpReal& operator=(MpReal&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~MpReal() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

private:
    mpfr_t v_;
};

/// Certified enclosure [lo, hi]; every operation rounds outward.
class Interval {
public:
    explicit Interval(mpfr_prec_t prec = 128) : lo_(prec), hi_(prec) {}

    static Interval from_int(long v, mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_set_si(r.lo_.get(), v, MPFR_RNDD);
        mpfr_set_si(r.hi_.get(), v, MPFR_RNDU);
        return r;
    }

    static Interval from_dyadic(const DyadicRational& d, mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_set_z_2exp(r.lo_.get(), d.numerator().get_mpz_t(), d.exponent(),
                        MPFR_RNDD);
        mpfr_set_z_2exp(r.hi_.get(), d.numerator().get_mpz_t(), d.exponent(),
                        MPFR_RNDU);
        return r;
    }

    /// 2^e for an exact integer or root exponent.
    static Interval exp2_of(const Exponent& e, mpfr_prec_t prec) {
        Interval r(prec);
        if (e.is_integer()) {
            long ei = to_int64(e.integer_value());
            mpfr_set_si(r.lo_.get(), 1, MPFR_RNDD);
            mpfr_set_si(r.hi_.get(), 1, MPFR_RNDU);
            mpfr_mul_2si(r.lo_.get(), r.lo_.get(), ei, MPFR_RNDD);
            mpfr_mul_2si(r.hi_.get(), r.hi_.get(), ei, MPFR_RNDU);
            return r;
        }
        MpReal rlo(prec), rhi(prec);
        BigInt mag = abs(e.radicand());
        mpfr_set_z(rlo.get(), mag.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(rhi.get(), mag.get_mpz_t(), MPFR_RNDU);
        mpfr_rootn_ui(rlo.get(), rlo.get(), e.root(), MPFR_RNDD);
        mpfr_rootn_ui(rhi.get(), rhi.get(), e.root(), MPFR_RNDU);
        if (e.sign() < 0) {
            mpfr_swap(rlo.get(), rhi.get());
            mpfr_neg(rlo.get(), rlo.get(), MPFR_RNDD);
            mpfr_neg(rhi.get(), rhi.get(), MPFR_RNDU);
        }
        mpfr_exp2(r.lo_.get(), rlo.get(), MPFR_RNDD);
        mpfr_exp2(r.hi_.get(), rhi.get(), MPFR_RNDU);
        return r;
    }

    /// e = Euler's number, enclosed.
    static Interval euler(mpfr_prec_t prec) {
        Interval r(prec);
        MpReal one(prec);
        mpfr_set_si(one.get(), 1, MPFR_RNDN);
        mpfr_exp(r.lo_.get(), one.get(), MPFR_RNDD);
        mpfr_exp(r.hi_.get(), one.get(), MPFR_RNDU);
        return r;
    }

    mpfr_prec_t prec() const { return lo_.prec(); }
    mpfr_srcptr lo() const { return lo_.get(); }
    mpfr_srcptr hi() const { return hi_.get(); }
    mpfr_ptr lo_raw() { return lo_.get(); }
    mpfr_ptr hi_raw() { return hi_.get(); }

    Interval operator+(const Interval& o) const {
        Interval r(prec());
        mpfr_add(r.lo_.get(), lo(), o.lo(), MPFR_RNDD);
        mpfr_add(r.hi_.get(), hi(), o.hi(), MPFR_RNDU);
        return r;
    }
    Interval operator-(const Interval& o) const {
        Interval r(prec());
        mpfr_sub(r.lo_.get(), lo(), o.hi(), MPFR_RNDD);
        mpfr_sub(r.hi_.get(), hi(), o.lo(), MPFR_RNDU);
        return r;
    }
    Interval& operator+=(const Interval& o) {
        mpfr_add(lo_.get(), lo(), o.lo(), MPFR_RNDD);
        mpfr_add(hi_.get(), hi(), o.hi(), MPFR_RNDU);
        return *this;
    }

    Interval operator*(const Interval& o) const {
        Interval r(prec());
        if (mpfr_sgn(lo()) >= 0 && mpfr_sgn(o.lo()) >= 0) {
            mpfr_mul(r.lo_.get(), lo(), o.lo(), MPFR_RNDD);
            mpfr_mul(r.hi_.get(), hi(), o.hi(), MPFR_RNDU);
            return r;
        }
        MpReal c(prec()), best_lo(prec()), best_hi(prec());
        bool first = true;
        for (int i = 0; i < 4; ++i) {
            mpfr_srcptr a = (i & 1) ? hi() : lo();
            mpfr_srcptr b = (i & 2) ? o.hi() : o.lo();
            mpfr_mul(c.get(), a, b, MPFR_RNDD);
            if (first || mpfr_cmp(c.get(), best_lo.get()) < 0)
                mpfr_set(best_lo.get(), c.get(), MPFR_RNDD);
            mpfr_mul(c.get(), a, b, MPFR_RNDU);
            if (first || mpfr_cmp(c.get(), best_hi.get()) > 0)
                mpfr_set(best_hi.get(), c.get(), MPFR_RNDU);
            first = false;
        }
        mpfr_set(r.lo_.get(), best_lo.get(), MPFR_RNDD);
        mpfr_set(r.hi_.get(), best_hi.get(), MPFR_RNDU);
        return r;
    }

    /// Division by a strictly positive interval.
    Interval operator/(const Interval& o) const {
        if (mpfr_sgn(o.lo()) <= 0)
            throw Error("Interval division requires a strictly positive divisor");
        Interval r(prec());
        if (mpfr_sgn(lo()) >= 0) {
            mpfr_div(r.lo_.get(), lo(), o.hi(), MPFR_RNDD);
            mpfr_div(r.hi_.get(), hi(), o.lo(), MPFR_RNDU);
        } else if (mpfr_sgn(hi()) <= 0) {
            mpfr_div(r.lo_.get(), lo(), o.lo(), MPFR_RNDD);
            mpfr_div(r.hi_.get(), hi(), o.hi(), MPFR_RNDU);
        } else {
            mpfr_div(r.lo_.get(), lo(), o.lo(), MPFR_RNDD);
            mpfr_div(r.hi_.get(), hi(), o.lo(), MPFR_RNDU);
        }
        return r;
    }

    Interval operator-() const {
        Interval r(prec());
        mpfr_neg(r.lo_.get(), hi(), MPFR_RNDD);
        mpfr_neg(r.hi_.get(), lo(), MPFR_RNDU);
        return r;
    }

    /// Natural log; requires lo > 0.
    Interval log_nat() const {
        if (mpfr_sgn(lo()) <= 0) throw Error("Interval log requires positive lo");
        Interval r(prec());
        mpfr_log(r.lo_.get(), lo(), MPFR_RNDD);
        mpfr_log(r.hi_.get(), hi(), MPFR_RNDU);
        return r;
    }

    /// x^alpha for alpha >= 0; requires lo > 0.
    Interval pow_real(double alpha) const {
        if (alpha < 0) throw Error("Interval pow requires alpha >= 0");
        if (alpha == 0) return from_int(1, prec());
        if (mpfr_sgn(lo()) <= 0) throw Error("Interval pow requires positive lo");
        Interval r(prec());
        MpReal a(prec());
        mpfr_set_d(a.get(), alpha, MPFR_RNDN);  // doubles are exact in mpfr
        mpfr_pow(r.lo_.get(), lo(), a.get(), MPFR_RNDD);
        mpfr_pow(r.hi_.get(), hi(), a.get(), MPFR_RNDU);
        return r;
    }

    double mid() const {
        MpReal m(prec());
        mpfr_add(m.get(), lo(), hi(), MPFR_RNDN);
        mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
        return mpfr_get_d(m.get(), MPFR_RNDN);
    }

    /// Upper bound on the half-width |value - mid|.
    double err() const {
        MpReal w(prec());
        mpfr_sub(w.get(), hi(), lo(), MPFR_RNDU);
        mpfr_div_2ui(w.get(), w.get(), 1, MPFR_RNDU);
        double e = mpfr_get_d(w.get(), MPFR_RNDU);
        return e;
    }

    double lo_double() const { return mpfr_get_d(lo(), MPFR_RNDD); }
    double hi_double() const { return mpfr_get_d(hi(), MPFR_RNDU); }

    bool definitely_less(const Interval& o) const {
        return mpfr_cmp(hi(), o.lo()) < 0;
    }
    bool contains(const DyadicRational& d) const {
        Interval v = from_dyadic(d, prec());
        return mpfr_cmp(lo(), v.lo()) <= 0 && mpfr_cmp(v.hi(), hi()) <= 0;
    }

private:
    MpReal lo_, hi_;
};

/// 2^sum for an exact exponent sum (used by volumes with radical exponents).
inline Interval exp2_of_sum(const ExponentSum& s, mpfr_prec_t prec) {
    MpReal lo(prec), hi(prec), t(prec);
    mpfr_set_z(lo.get(), s.integer_part().get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(hi.get(), s.integer_part().get_mpz_t(), MPFR_RNDU);
    for (const auto& [base, r, coeff] : s.radical_terms()) {
        // coeff * base^(1/r), added with outward rounding
        for (int side = 0; side < 2; ++side) {
            mpfr_rnd_t rnd = side == 0 ? MPFR_RNDD : MPFR_RNDU;
            mpfr_rnd_t root_rnd = (coeff > 0) == (side == 0) ? MPFR_RNDD : MPFR_RNDU;
            mpfr_set_z(t.get(), base.get_mpz_t(), root_rnd);
            mpfr_rootn_ui(t.get(), t.get(), r, root_rnd);
            mpfr_mul_z(t.get(), t.get(), coeff.get_mpz_t(), rnd);
            mpfr_add(side == 0 ? lo.get() : hi.get(),
                     side == 0 ? lo.get() : hi.get(), t.get(), rnd);
        }
    }
    Interval r(prec);
    mpfr_exp2(r.lo_raw(), lo.get(), MPFR_RNDD);
    mpfr_exp2(r.hi_raw(), hi.get(), MPFR_RNDU);
    return r;
}

}  // namespace zygmund
