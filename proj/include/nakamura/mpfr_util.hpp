#pragma once

#include <mpfr.h>

#include "numeric.hpp"

namespace nakamura {

// Exact conversion: every finite mpfr value is a dyadic rational.
inline Q mpfr_to_q(mpfr_srcptr x) {
    if (mpfr_zero_p(x)) return Q(0);
    Z mant;
    mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), x);
    Q r(mant);
    if (e >= 0) {
        mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
    } else {
        mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    }
    r.canonicalize();
    return r;
}

// Enclosure of log over a positive rational interval, via directed rounding.
inline QInterval log_enclosure(const QInterval& x, long bits) {
    assert(x.strictly_positive());
    mpfr_t lo, hi;
    mpfr_init2(lo, bits);
    mpfr_init2(hi, bits);
    mpfr_set_q(lo, x.lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi, x.hi.get_mpq_t(), MPFR_RNDU);
    mpfr_log(lo, lo, MPFR_RNDD);
    mpfr_log(hi, hi, MPFR_RNDU);
    QInterval r(mpfr_to_q(lo), mpfr_to_q(hi));
    mpfr_clear(lo);
    mpfr_clear(hi);
    return r;
}

inline QInterval pi_enclosure(long bits) {
    mpfr_t lo, hi;
    mpfr_init2(lo, bits);
    mpfr_init2(hi, bits);
    mpfr_const_pi(lo, MPFR_RNDD);
    mpfr_const_pi(hi, MPFR_RNDU);
    QInterval r(mpfr_to_q(lo), mpfr_to_q(hi));
    mpfr_clear(lo);
    mpfr_clear(hi);
    return r;
}

// Minimal RAII mpfr float, round-to-nearest. Used only by the group-law
// smoke layer; all certified decisions run on exact rationals.
class MpFloat {
public:
    explicit MpFloat(long prec = 128) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    MpFloat(const Q& q, long prec) { mpfr_init2(v_, prec); mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN); }
    MpFloat(const MpFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    MpFloat(MpFloat&& o) noexcept { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_swap(v_, o.v_); }
    MpFloat& operator=(MpFloat o) { mpfr_swap(v_, o.v_); return *this; }
    ~MpFloat() { mpfr_clear(v_); }

    long prec() const { return mpfr_get_prec(v_); }
    Q to_q() const { return mpfr_to_q(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    friend MpFloat operator+(const MpFloat& a, const MpFloat& b) {
        MpFloat r(std::max(a.prec(), b.prec()));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend MpFloat operator-(const MpFloat& a, const MpFloat& b) {
        MpFloat r(std::max(a.prec(), b.prec()));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend MpFloat operator*(const MpFloat& a, const MpFloat& b) {
        MpFloat r(std::max(a.prec(), b.prec()));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    MpFloat operator-() const {
        MpFloat r(prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }
    MpFloat exp() const {
        MpFloat r(prec());
        mpfr_exp(r.v_, v_, MPFR_RNDN);
        return r;
    }
    MpFloat log() const {
        MpFloat r(prec());
        mpfr_log(r.v_, v_, MPFR_RNDN);
        return r;
    }
    MpFloat sqrt() const {
        MpFloat r(prec());
        mpfr_sqrt(r.v_, v_, MPFR_RNDN);
        return r;
    }
    MpFloat abs() const {
        MpFloat r(prec());
        mpfr_abs(r.v_, v_, MPFR_RNDN);
        return r;
    }
    bool operator<(const MpFloat& o) const { return mpfr_cmp(v_, o.v_) < 0; }

private:
    mpfr_t v_;
};

struct MpComplex {
    MpFloat re, im;

    explicit MpComplex(long prec = 128) : re(prec), im(prec) {}
    MpComplex(MpFloat r, MpFloat i) : re(std::move(r)), im(std::move(i)) {}

    friend MpComplex operator+(const MpComplex& a, const MpComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend MpComplex operator-(const MpComplex& a, const MpComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend MpComplex operator*(const MpComplex& a, const MpComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    MpComplex operator-() const { return {-re, -im}; }
    MpComplex scaled(const MpFloat& s) const { return {re * s, im * s}; }
    MpFloat norm_inf() const {
        MpFloat ar = re.abs(), ai = im.abs();
        return ar < ai ? ai : ar;
    }
};

} // namespace nakamura
