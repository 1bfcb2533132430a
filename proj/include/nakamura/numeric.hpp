#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cassert>
#include <string>
#include <utility>

namespace nakamura {

using Z = mpz_class;
using Q = mpq_class;

inline int sign_of(const Z& z) { return mpz_sgn(z.get_mpz_t()); }
inline int sign_of(const Q& q) { return mpq_sgn(q.get_mpq_t()); }

inline Z z_pow(const Z& base, unsigned long e) {
    Z r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Z z_binom(unsigned long n, unsigned long k) {
    Z r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// ceil(log2(|q|)) for q > 0; rough but exact enough for budget accounting.
inline long ceil_log2(const Q& q) {
    assert(sign_of(q) > 0);
    long num_bits = static_cast<long>(mpz_sizeinbase(q.get_num().get_mpz_t(), 2));
    long den_bits = static_cast<long>(mpz_sizeinbase(q.get_den().get_mpz_t(), 2));
    return num_bits - den_bits + 1;
}

// Round q to a dyadic with denominator 2^bits, in the given direction.
// Keeps interval endpoints small after Newton steps.
inline Q dyadic_round(const Q& q, long bits, bool up) {
    Z num = q.get_num(), den = q.get_den();
    Z scaled = num << bits;
    Z quot, rem;
    mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
    if (up && rem != 0) quot += 1;
    Q r(quot, Z(1) << bits);
    r.canonicalize();
    return r;
}

// Exact decimal rendering of a rational, rounded down or up at `digits`
// places after the decimal point. No floating point involved.
inline std::string q_to_decimal(const Q& q, int digits, bool round_up) {
    bool neg = sign_of(q) < 0;
    Q a = neg ? Q(-q) : q;
    // For negative values the rounding direction flips on the magnitude.
    bool up_mag = neg ? !round_up : round_up;
    Z scale = z_pow(10, static_cast<unsigned long>(digits));
    Z num = a.get_num() * scale;
    Z quot, rem;
    mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), a.get_den().get_mpz_t());
    if (up_mag && rem != 0) quot += 1;
    std::string s = quot.get_str();
    if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
    if (neg && quot != 0) s.insert(0, "-");
    return s;
}

inline Q q_from_decimal(const std::string& text);

// Closed interval with rational endpoints. The workhorse for certified
// enclosures of eigenvalues and their products.
struct QInterval {
    Q lo, hi;

    QInterval() = default;
    QInterval(Q l, Q h) : lo(std::move(l)), hi(std::move(h)) { assert(lo <= hi); }
    static QInterval point(const Q& v) { return QInterval(v, v); }

    Q width() const { return hi - lo; }
    Q mid() const { return (lo + hi) / 2; }
    bool contains(const Q& v) const { return lo <= v && v <= hi; }
    bool is_point() const { return lo == hi; }
    // Sign is decided only when the interval does not straddle zero.
    bool strictly_positive() const { return sign_of(lo) > 0; }
    bool strictly_negative() const { return sign_of(hi) < 0; }

    QInterval operator-() const { return QInterval(-hi, -lo); }

    friend QInterval operator+(const QInterval& a, const QInterval& b) {
        return QInterval(a.lo + b.lo, a.hi + b.hi);
    }
    friend QInterval operator-(const QInterval& a, const QInterval& b) {
        return QInterval(a.lo - b.hi, a.hi - b.lo);
    }
    friend QInterval operator*(const QInterval& a, const QInterval& b) {
        Q c1 = a.lo * b.lo, c2 = a.lo * b.hi, c3 = a.hi * b.lo, c4 = a.hi * b.hi;
        return QInterval(std::min(std::min(c1, c2), std::min(c3, c4)),
                         std::max(std::max(c1, c2), std::max(c3, c4)));
    }

    QInterval abs() const {
        if (sign_of(lo) >= 0) return *this;
        if (sign_of(hi) <= 0) return -*this;
        return QInterval(Q(0), std::max(Q(-lo), hi));
    }

    // Reciprocal; interval must not contain zero.
    QInterval inv() const {
        assert(strictly_positive() || strictly_negative());
        return QInterval(Q(1) / hi, Q(1) / lo);
    }

    QInterval pow(unsigned e) const {
        QInterval r = QInterval::point(Q(1));
        for (unsigned i = 0; i < e; ++i) r = r * *this;
        return r;
    }
};

// Parse a plain decimal literal ("-1.25", "3", "0.001") into an exact
// rational. Rejects exponents and anything else non-decimal.
inline Q q_from_decimal(const std::string& text) {
    std::string s = text;
    bool neg = false;
    size_t pos = 0;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        neg = s[pos] == '-';
        ++pos;
    }
    std::string digits;
    long frac_len = -1;
    for (; pos < s.size(); ++pos) {
        char c = s[pos];
        if (c == '.') {
            if (frac_len >= 0) throw std::invalid_argument("bad decimal: " + text);
            frac_len = 0;
        } else if (c >= '0' && c <= '9') {
            digits.push_back(c);
            if (frac_len >= 0) ++frac_len;
        } else {
            throw std::invalid_argument("bad decimal: " + text);
        }
    }
    if (digits.empty()) throw std::invalid_argument("bad decimal: " + text);
    Z num(digits, 10);
    if (neg) num = -num;
    Q r(num, z_pow(10, frac_len > 0 ? static_cast<unsigned long>(frac_len) : 0));
    r.canonicalize();
    return r;
}

} // namespace nakamura
