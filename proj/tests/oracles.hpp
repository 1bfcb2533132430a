// Test-only independent oracles: brute-force enumerations and a plain
// mpfr float pipeline, deliberately separate from the decision paths they
// check.
#pragma once

#include <mpfr.h>

#include "nakamura/cohomology.hpp"

namespace oracles {

using namespace nakamura;

// Sign of (prod mu^v - 1) through a straight 500-bit float pipeline.
// Returns 0 when the product lands within 2^-250 of 1 (undecided).
inline int float_product_vs_one(const NakamuraSpec& spec, const ExponentVector& v,
                                long bits = 500) {
    mpfr_t prod, mid, threshold;
    mpfr_init2(prod, bits);
    mpfr_init2(mid, bits);
    mpfr_init2(threshold, bits);
    mpfr_set_ui(prod, 1, MPFR_RNDN);
    for (int k = 0; k < spec.n; ++k) {
        if (!v.v[k]) continue;
        QInterval iv = spec.mu[k].refine_to(bits + 32);
        Q m = iv.mid();
        mpfr_set_q(mid, m.get_mpq_t(), MPFR_RNDN);
        for (int e = 0; e < v.v[k]; ++e) mpfr_mul(prod, prod, mid, MPFR_RNDN);
    }
    mpfr_sub_ui(prod, prod, 1, MPFR_RNDN);
    mpfr_set_ui_2exp(threshold, 1, -(bits / 2), MPFR_RNDN);
    int result;
    mpfr_t absval;
    mpfr_init2(absval, bits);
    mpfr_abs(absval, prod, MPFR_RNDN);
    if (mpfr_cmp(absval, threshold) < 0) result = 0;
    else result = mpfr_sgn(prod) > 0 ? 1 : -1;
    mpfr_clear(prod);
    mpfr_clear(mid);
    mpfr_clear(threshold);
    mpfr_clear(absval);
    return result;
}

// Exhaustive certified pattern (no meet-in-the-middle pruning).
inline ZeroPattern exhaustive_pattern(const NakamuraSpec& spec) {
    ZeroPattern pat;
    pat.n = spec.n;
    long total = 1;
    for (int i = 0; i < spec.n; ++i) total *= 3;
    for (long idx = 0; idx < total; ++idx) {
        std::vector<uint8_t> v(spec.n);
        long c = idx;
        for (int i = 0; i < spec.n; ++i) {
            v[i] = static_cast<uint8_t>(c % 3);
            c /= 3;
        }
        if (spec.cert->is_zero_sum(ExponentVector(v))) pat.zeros.insert(std::move(v));
    }
    return pat;
}

// Brute-force Hodge numbers: enumerate all 4^n pairs (I, J) directly.
inline HodgeTable brute_force_hodge(const NakamuraSpec& spec, const ZeroPattern& pat) {
    int n = spec.n;
    HodgeTable tab;
    tab.n = n;
    tab.h.assign(n + 2, std::vector<uint64_t>(n + 2, 0));
    long pairs = 1;
    for (int i = 0; i < n; ++i) pairs *= 4;
    for (long code = 0; code < pairs; ++code) {
        std::vector<uint8_t> v(n, 0);
        int szI = 0, szJ = 0;
        long c = code;
        for (int i = 0; i < n; ++i) {
            int digit = c % 4;
            c /= 4;
            if (digit & 1) {
                v[i] += 1;
                ++szI;
            }
            if (digit & 2) {
                v[i] += 1;
                ++szJ;
            }
        }
        if (!pat.contains(v)) continue;
        for (int dp = 0; dp <= 1; ++dp)
            for (int dq = 0; dq <= 1; ++dq) ++tab.h[szI + dp][szJ + dq];
    }
    tab.betti.assign(2 * n + 3, 0);
    for (int p = 0; p <= n + 1; ++p)
        for (int q = 0; q <= n + 1; ++q) tab.betti[p + q] += tab.h[p][q];
    return tab;
}

// Brute-force Betti numbers by counting the closed/exact generator
// families over all pairs directly.
inline std::vector<uint64_t> brute_force_betti(const NakamuraSpec& spec, const ZeroPattern& pat) {
    int n = spec.n;
    std::vector<uint64_t> zero_pairs(2 * n + 1, 0), all_pairs(2 * n + 1, 0);
    long pairs = 1;
    for (int i = 0; i < n; ++i) pairs *= 4;
    for (long code = 0; code < pairs; ++code) {
        std::vector<uint8_t> v(n, 0);
        int size = 0;
        long c = code;
        for (int i = 0; i < n; ++i) {
            int digit = c % 4;
            c /= 4;
            if (digit & 1) {
                v[i] += 1;
                ++size;
            }
            if (digit & 2) {
                v[i] += 1;
                ++size;
            }
        }
        ++all_pairs[size];
        if (pat.contains(v)) ++zero_pairs[size];
    }
    auto zp = [&](int j) -> uint64_t { return (j >= 0 && j <= 2 * n) ? zero_pairs[j] : 0; };
    auto ap = [&](int j) -> uint64_t { return (j >= 0 && j <= 2 * n) ? all_pairs[j] : 0; };
    std::vector<uint64_t> betti(2 * n + 3, 0);
    for (int k = 0; k <= 2 * n + 2; ++k) {
        uint64_t ker = zp(k) + 2 * zp(k - 1) + (ap(k - 1) - zp(k - 1)) + ap(k - 2);
        uint64_t im = (ap(k - 1) - zp(k - 1)) + (ap(k - 2) - zp(k - 2));
        betti[k] = ker - im;
    }
    return betti;
}

// Enumerated max |sum v_k lambda_k| over nonzero-sum vectors, via interval
// logs at high precision.
inline QInterval brute_force_max_abs_c(const NakamuraSpec& spec, long bits = 200) {
    long total = 1;
    for (int i = 0; i < spec.n; ++i) total *= 3;
    Q best_lo(0), best_hi(0);
    bool any = false;
    for (long idx = 0; idx < total; ++idx) {
        std::vector<uint8_t> v(spec.n);
        long c = idx;
        for (int i = 0; i < spec.n; ++i) {
            v[i] = static_cast<uint8_t>(c % 3);
            c /= 3;
        }
        ExponentVector ev(v);
        if (spec.cert->is_zero_sum(ev)) continue;
        QInterval val = spec.cert->log_sum_interval(ev, bits).abs();
        if (!any) {
            best_lo = val.lo;
            best_hi = val.hi;
            any = true;
        } else {
            best_lo = std::max(best_lo, val.lo);
            best_hi = std::max(best_hi, val.hi);
        }
    }
    return QInterval(best_lo, best_hi);
}

} // namespace oracles
