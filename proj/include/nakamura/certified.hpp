#pragma once

#include <atomic>
#include <map>
#include <mutex>
#include <optional>

#include "algebraic_real.hpp"
#include "linalg.hpp"
#include "mpfr_util.hpp"

namespace nakamura {

// Resultant via Bareiss on the Sylvester matrix.
inline Z resultant(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero() || b.is_zero()) return Z(0);
    int m = a.degree(), n = b.degree();
    if (m == 0) return z_pow(a.c[0], n);
    if (n == 0) return z_pow(b.c[0], m);
    ZMatrix s(m + n, m + n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) s.at(i, i + j) = a.c[m - j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) s.at(n + i, i + j) = b.c[n - j];
    return det_bareiss(std::move(s));
}

// Isolate the eigenvalues of an integer matrix as algebraic reals, sorted
// ascending, with repeated eigenvalues sharing one refinable state.
// Requires a diagonalizable matrix with real positive spectrum.
inline std::vector<AlgebraicReal> isolate_eigenvalues(const ZMatrix& m) {
    assert(m.rows == m.cols);
    int n = m.rows;
    ZPoly cp = charpoly(m);
    auto factors = squarefree_decomposition(cp);

    int real_with_mult = 0;
    for (const auto& [f, mult] : factors) {
        SturmChain chain(f);
        real_with_mult += mult * chain.count_all();
    }
    if (real_with_mult < n)
        fail(errc::complex_eigenvalue,
             "characteristic polynomial has only " + std::to_string(real_with_mult) +
                 " real roots (with multiplicity) out of " + std::to_string(n));

    for (const auto& [f, mult] : factors) {
        SturmChain chain(f);
        if (chain.count_up_to(Q(0)) > 0)
            fail(errc::non_positive_eigenvalue, "matrix has an eigenvalue <= 0");
    }

    ZPoly sf(ZPoly::constant(Z(1)));
    for (const auto& [f, mult] : factors) sf = sf * f;
    if (!poly_at_matrix(sf, m).is_zero())
        fail(errc::not_diagonalizable,
             "minimal polynomial has a repeated factor (matrix is not semisimple)");

    std::vector<AlgebraicReal> out;
    for (const auto& [f, mult] : factors)
        for (const auto& iv : isolate_real_roots(f)) {
            AlgebraicReal root(f, iv);
            for (int i = 0; i < mult; ++i) out.push_back(root); // shared state
        }
    assert(static_cast<int>(out.size()) == n);

    // ascending order; distinct roots get refined until their intervals
    // are disjoint, copies of one root compare equal
    auto less = [](const AlgebraicReal& a, const AlgebraicReal& b) {
        if (a.same_state(b)) return false;
        for (long bits = default_start_bits;; bits *= 2) {
            QInterval ia = a.refine_to(bits), ib = b.refine_to(bits);
            if (ia.hi < ib.lo) return true;
            if (ib.hi < ia.lo) return false;
            if (ia.is_point() && ib.is_point()) return ia.lo < ib.lo;
            if (bits > default_precision_cap_bits)
                fail(errc::precision_exhausted, "eigenvalue ordering did not separate");
        }
    };
    std::stable_sort(out.begin(), out.end(), less);
    return out;
}

// Exponent vector v in {0,1,2}^n encoding a multiindex pair (I, J):
// v_k = [k in I] + [k in J]. The scalar it encodes is sum_k v_k*lambda_k.
struct ExponentVector {
    std::vector<uint8_t> v;

    ExponentVector() = default;
    explicit ExponentVector(std::vector<uint8_t> entries) : v(std::move(entries)) {
        for (uint8_t e : v)
            if (e > 2) fail(errc::bad_parameter, "exponent entries must be 0, 1 or 2");
    }
    static ExponentVector from_pair(const std::vector<int>& I, const std::vector<int>& J, int n) {
        std::vector<uint8_t> e(n, 0);
        for (int i : I) e.at(i - 1) += 1; // multiindices are 1-based
        for (int j : J) e.at(j - 1) += 1;
        return ExponentVector(std::move(e));
    }

    int n() const { return static_cast<int>(v.size()); }
    bool all_zero() const {
        for (uint8_t e : v)
            if (e) return false;
        return true;
    }
    int count_at_least(uint8_t t) const {
        int c = 0;
        for (uint8_t e : v) c += (e >= t);
        return c;
    }
    bool operator==(const ExponentVector& o) const { return v == o.v; }
    bool operator<(const ExponentVector& o) const { return v < o.v; }
};

struct CertStats {
    std::atomic<long> zero_tests{0};
    std::atomic<long> refinements{0};
    std::atomic<long> max_bits{0};

    void note_bits(long b) {
        long cur = max_bits.load();
        while (b > cur && !max_bits.compare_exchange_weak(cur, b)) {
        }
    }
};

// Certified decision procedures for the subset-sum scalars c = sum v_k*lambda_k,
// where lambda_k = log(mu_k) and mu are the eigenvalues of an integer matrix.
// Everything reduces to deciding whether prod mu_k^{v_k} equals 1:
// the candidate product is an eigenvalue of Lambda^{|a|}(M) (x) Lambda^{|b|}(M)
// for any split v = a + b with a, b in {0,1}^n, so integer linear algebra on
// the compound characteristic polynomials settles it.
class CertifiedScalars {
public:
    CertifiedScalars(ZMatrix m, std::vector<AlgebraicReal> mu,
                     long precision_cap = default_precision_cap_bits)
        : m_(std::move(m)), mu_(std::move(mu)), cap_(precision_cap) {
        for (const auto& e : mu_)
            if (!e.interval().strictly_positive())
                fail(errc::non_positive_eigenvalue, "eigenvalues must be certified positive");
    }

    int n() const { return static_cast<int>(mu_.size()); }
    const std::vector<AlgebraicReal>& eigenvalues() const { return mu_; }
    const ZMatrix& matrix() const { return m_; }
    long precision_cap() const { return cap_; }
    CertStats& stats() const { return stats_; }

    // Interval for prod mu_k^{v_k} with every contributing eigenvalue
    // refined to `bits`.
    QInterval product_interval(const ExponentVector& v, long bits) const {
        QInterval p = QInterval::point(Q(1));
        for (int k = 0; k < n(); ++k) {
            if (!v.v[k]) continue;
            QInterval e = mu_[k].refine_to(bits);
            p = p * (v.v[k] == 1 ? e : e * e);
        }
        stats_.note_bits(bits);
        return p;
    }

    // Certified: prod mu_k^{v_k} == 1, i.e. sum v_k*lambda_k == 0.
    bool is_zero_sum(const ExponentVector& v) const { return is_zero_sum_split(v, canonical_split(v)); }

    // Split choice must not affect the verdict; exposed so tests can
    // exercise non-canonical splits.
    bool is_zero_sum_split(const ExponentVector& v, const std::vector<uint8_t>& a_mask) const {
        check_dims(v);
        stats_.zero_tests.fetch_add(1);
        if (v.all_zero()) return true;
        int ka = 0, kb = 0;
        for (int k = 0; k < n(); ++k) {
            assert(a_mask[k] <= 1 && a_mask[k] <= v.v[k] && v.v[k] - a_mask[k] <= 1);
            ka += a_mask[k];
            kb += v.v[k] - a_mask[k];
        }
        const PairData& pd = pair_data(ka, kb);
        if (pd.det_res != 0) return false; // 1 is not an eigenvalue of K at all
        if (!pd.sep_lb) return true;       // every eigenvalue of K equals 1
        Q target = *pd.sep_lb / 2;
        for (long bits = default_start_bits;; bits *= 2) {
            if (bits > cap_)
                fail(errc::precision_exhausted,
                     "zero test exceeded the precision cap (internal error)");
            QInterval p = product_interval(v, bits);
            if (!p.contains(Q(1))) return false;
            if (p.width() < target) return true;
        }
    }

    // -1, 0, +1 for the sign of sum v_k*lambda_k (equivalently of the
    // product against 1).
    int sign_of_sum(const ExponentVector& v) const {
        if (is_zero_sum(v)) return 0;
        for (long bits = default_start_bits;; bits *= 2) {
            if (bits > cap_)
                fail(errc::precision_exhausted,
                     "sign refinement exceeded the precision cap (internal error)");
            QInterval p = product_interval(v, bits);
            if (p.lo > 1) return 1;
            if (p.hi < 1) return -1;
        }
    }

    // Enclosure of log(prod mu^v) = sum v_k*lambda_k at the given working
    // precision.
    QInterval log_sum_interval(const ExponentVector& v, long bits) const {
        return log_enclosure(product_interval(v, bits), bits);
    }

    QInterval lambda_interval(int i, long bits) const {
        return log_enclosure(mu_[i].refine_to(bits), bits);
    }

    // Enclosure of max over v in {0,1,2}^n with nonzero sum of |sum v_k*lambda_k|.
    // The maximum is attained by doubling all indices of one fixed sign, so
    // it equals 2*max(sum of positive lambdas, -sum of negative lambdas).
    QInterval max_abs_c(long rel_bits = 30) const {
        std::vector<int> pos, neg;
        for (int i = 0; i < n(); ++i) {
            std::vector<uint8_t> e(n(), 0);
            e[i] = 1;
            int s = sign_of_sum(ExponentVector(std::move(e)));
            if (s > 0) pos.push_back(i);
            else if (s < 0) neg.push_back(i);
        }
        if (pos.empty() && neg.empty())
            fail(errc::all_sums_zero, "all eigenvalue logarithms vanish (torus)");
        for (long bits = default_start_bits;; bits *= 2) {
            if (bits > cap_)
                fail(errc::precision_exhausted, "max |c| refinement exceeded the precision cap");
            QInterval sp = QInterval::point(Q(0)), sn = QInterval::point(Q(0));
            for (int i : pos) sp = sp + lambda_interval(i, bits);
            for (int i : neg) sn = sn + lambda_interval(i, bits);
            QInterval cand(Q(0), Q(0));
            QInterval two = QInterval::point(Q(2));
            QInterval a = two * sp, b = -(two * sn);
            cand = QInterval(std::max(a.lo, b.lo), std::max(a.hi, b.hi));
            if (sign_of(cand.lo) > 0 &&
                cand.width() * (Z(1) << static_cast<unsigned long>(rel_bits)) < cand.lo)
                return cand;
        }
    }

    // det(I - K) for the canonical split, materializing the Kronecker
    // matrix. Exposed for tests; the decision path uses the resultant of
    // the compound characteristic polynomials instead (same vanishing).
    Z det_i_minus_k(const ExponentVector& v) const {
        check_dims(v);
        auto a = canonical_split(v);
        int ka = 0, kb = 0;
        for (int k = 0; k < n(); ++k) {
            ka += a[k];
            kb += v.v[k] - a[k];
        }
        ZMatrix kmat = kronecker(compound_matrix(m_, ka), compound_matrix(m_, kb));
        return det_bareiss(ZMatrix::identity(kmat.rows) - kmat);
    }

    // Squarefree part of charpoly(Lambda^k M); cached.
    const ZPoly& squarefree_exterior_charpoly(int k) const {
        std::lock_guard<std::mutex> g(cache_mu_);
        auto it = sf_cache_.find(k);
        if (it != sf_cache_.end()) return it->second;
        ZPoly sf = squarefree_part(exterior_charpoly(m_, k));
        return sf_cache_.emplace(k, std::move(sf)).first->second;
    }

private:
    struct PairData {
        Z det_res;             // resultant proxy for det(I - K); zero iff det is
        std::optional<Q> sep_lb; // lower bound on |x - 1| over eigenvalues x != 1
    };

    std::vector<uint8_t> canonical_split(const ExponentVector& v) const {
        // all ones go into a: minimizes both compound dimensions
        std::vector<uint8_t> a(v.v.size());
        for (size_t k = 0; k < v.v.size(); ++k) a[k] = v.v[k] >= 1 ? 1 : 0;
        return a;
    }

    void check_dims(const ExponentVector& v) const {
        if (v.n() != n()) fail(errc::bad_parameter, "exponent vector length mismatch");
    }

    const PairData& pair_data(int ka, int kb) const {
        auto key = std::make_pair(ka, kb);
        {
            std::lock_guard<std::mutex> g(cache_mu_);
            auto it = pair_cache_.find(key);
            if (it != pair_cache_.end()) return it->second;
        }
        const ZPoly& a = squarefree_exterior_charpoly(ka);
        const ZPoly& b = squarefree_exterior_charpoly(kb);
        PairData pd;
        pd.det_res = resultant(a, reversal(b));
        if (pd.det_res == 0) {
            ZPoly r = composed_product(a, b);
            int mult = 0;
            ZPoly gq = deflate_at_one(std::move(r), mult);
            assert(mult >= 1);
            if (gq.degree() >= 1) {
                // Every root x != 1 of the pair-product spectrum is a root of
                // the deflated g, and prod |1 - root| = |g(1)| >= 1. Each
                // factor obeys |1 - root| <= 2 max(1, |root|), so the product
                // over the other roots is at most 2^deg * M(g) <= 2^deg *
                // ||g||_2 (Landau). Hence |x - 1| >= |g(1)| / (2^deg ||g||_2).
                Z norm_sq(0);
                for (const Z& cf : gq.c) norm_sq += cf * cf;
                Z norm_upper;
                mpz_sqrt(norm_upper.get_mpz_t(), norm_sq.get_mpz_t());
                norm_upper += 1;
                Z g1 = abs(gq.eval_z(1));
                Q sep(g1, norm_upper * (Z(1) << gq.degree()));
                sep.canonicalize();
                pd.sep_lb = sep;
            }
        }
        std::lock_guard<std::mutex> g2(cache_mu_);
        return pair_cache_.try_emplace(key, std::move(pd)).first->second;
    }

    ZMatrix m_;
    std::vector<AlgebraicReal> mu_;
    long cap_;
    mutable CertStats stats_;
    mutable std::mutex cache_mu_;
    mutable std::map<std::pair<int, int>, PairData> pair_cache_;
    mutable std::map<int, ZPoly> sf_cache_;
};

} // namespace nakamura
