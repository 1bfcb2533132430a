#pragma once

#include <random>
#include <set>
#include <thread>

#include "forms.hpp"
#include "manifold_spec.hpp"

namespace nakamura {

// The certified set of exponent vectors v in {0,1,2}^n with sum v_k*lambda_k = 0.
// Every cohomological output is a function of this set.
struct ZeroPattern {
    int n = 0;
    std::set<std::vector<uint8_t>> zeros;

    bool contains(const std::vector<uint8_t>& v) const { return zeros.count(v) > 0; }
};

namespace detail_coh {

inline std::vector<uint8_t> base3_vector(long idx, int len) {
    std::vector<uint8_t> v(len);
    for (int i = 0; i < len; ++i) {
        v[i] = static_cast<uint8_t>(idx % 3);
        idx /= 3;
    }
    return v;
}

inline long pow3(int k) {
    long r = 1;
    while (k-- > 0) r *= 3;
    return r;
}

} // namespace detail_coh

// Meet-in-the-middle enumeration: interval prefilter on half-vector
// partial products, certified confirmation only for the plausible
// candidates. Certification fans out over `jobs` workers; the shared
// eigenvalue state is internally synchronized.
inline ZeroPattern compute_zero_pattern(const NakamuraSpec& spec, long prefilter_bits = 128,
                                        int jobs = 1) {
    const auto& cert = *spec.cert;
    int n = spec.n;
    ZeroPattern pat;
    pat.n = n;

    int nl = n / 2, nr = n - nl;
    struct Half {
        std::vector<uint8_t> v;
        QInterval prod;
    };
    auto enumerate_half = [&](int offset, int len) {
        std::vector<Half> out;
        out.reserve(detail_coh::pow3(len));
        std::vector<QInterval> pw1(len), pw2(len);
        for (int i = 0; i < len; ++i) {
            pw1[i] = spec.mu[offset + i].refine_to(prefilter_bits);
            pw2[i] = pw1[i] * pw1[i];
        }
        for (long idx = 0; idx < detail_coh::pow3(len); ++idx) {
            Half h;
            h.v = detail_coh::base3_vector(idx, len);
            h.prod = QInterval::point(Q(1));
            for (int i = 0; i < len; ++i)
                if (h.v[i]) h.prod = h.prod * (h.v[i] == 1 ? pw1[i] : pw2[i]);
            out.push_back(std::move(h));
        }
        return out;
    };
    auto left = enumerate_half(0, nl);
    auto right = enumerate_half(nl, nr);
    std::sort(right.begin(), right.end(), [](const Half& a, const Half& b) { return a.prod.lo < b.prod.lo; });

    std::vector<std::vector<uint8_t>> candidates;
    for (const auto& l : left) {
        // need right products r with l.lo*r.lo <= 1 <= l.hi*r.hi
        Q cmax = Q(1) / l.prod.lo, dmin = Q(1) / l.prod.hi;
        auto end = std::upper_bound(right.begin(), right.end(), cmax,
                                    [](const Q& val, const Half& h) { return val < h.prod.lo; });
        for (auto it = right.begin(); it != end; ++it) {
            if (it->prod.hi < dmin) continue;
            std::vector<uint8_t> v = l.v;
            v.insert(v.end(), it->v.begin(), it->v.end());
            candidates.push_back(std::move(v));
        }
    }

    if (jobs <= 1) {
        for (auto& v : candidates)
            if (cert.is_zero_sum(ExponentVector(v))) pat.zeros.insert(std::move(v));
    } else {
        std::vector<char> is_zero(candidates.size(), 0);
        std::atomic<size_t> next{0};
        auto worker = [&] {
            for (size_t i = next.fetch_add(1); i < candidates.size(); i = next.fetch_add(1))
                is_zero[i] = cert.is_zero_sum(ExponentVector(candidates[i])) ? 1 : 0;
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        for (size_t i = 0; i < candidates.size(); ++i)
            if (is_zero[i]) pat.zeros.insert(std::move(candidates[i]));
    }
    assert(pat.contains(std::vector<uint8_t>(n, 0)));
    assert(pat.contains(std::vector<uint8_t>(n, 1)));
    assert(pat.contains(std::vector<uint8_t>(n, 2)));
    return pat;
}

// ---------------------------------------------------------------------------
// tau admissibility

// Enclosure of the bound 2*pi / max|c|.
inline QInterval tau_bound_interval(const NakamuraSpec& spec, long rel_bits = 30) {
    QInterval mx = spec.cert->max_abs_c(rel_bits);
    QInterval two_pi = QInterval::point(Q(2)) * pi_enclosure(rel_bits + 32);
    return QInterval(two_pi.lo / mx.hi, two_pi.hi / mx.lo);
}

enum class TauVerdict { admissible_assumed, certified_admissible, unknown };

// Admissible mode is taken as asserted; an explicit rational tau is
// certified when |tau| lies strictly below the bound enclosure, and left
// undecided (possibly resonant) otherwise.
inline TauVerdict tau_verdict(const NakamuraSpec& spec, long rel_bits = 30) {
    if (spec.tau.mode == TauMode::admissible) return TauVerdict::admissible_assumed;
    Q abs_tau = spec.tau.value >= 0 ? spec.tau.value : Q(-spec.tau.value);
    if (sign_of(abs_tau) == 0) return TauVerdict::unknown; // tau must be nonzero
    for (long rb = rel_bits; rb <= rel_bits + 60; rb += 30) {
        QInterval bound = tau_bound_interval(spec, rb);
        if (abs_tau < bound.lo) return TauVerdict::certified_admissible;
        if (abs_tau > bound.hi) return TauVerdict::unknown;
    }
    return TauVerdict::unknown;
}

inline void ensure_admissible(const NakamuraSpec& spec) {
    if (tau_verdict(spec) == TauVerdict::unknown)
        fail(errc::resonant_tau_unsupported,
             "tau is not certified admissible (possibly resonant); B^{p,q} with "
             "non-constant coefficient functions is unsupported");
}

// ---------------------------------------------------------------------------
// Hodge / Betti counting

struct HodgeTable {
    int n = 0;
    std::vector<std::vector<uint64_t>> h; // (n+2) x (n+2)
    std::vector<uint64_t> betti;          // length 2n+3

    uint64_t hodge(int p, int q) const { return h.at(p).at(q); }
};

// h^{p,q} = #{(I,J) : c_IJ = 0, (|I|,|J|) in {(p,q),(p-1,q),(p,q-1),(p-1,q-1)}}.
// Decompositions are counted per zero vector: an index with v_k = 1 goes to
// I or J, v_k = 2 to both, so a vector with o ones and t twos contributes
// binom(o,i) pairs of sizes (t+i, t+o-i).
inline HodgeTable dolbeault_numbers(const NakamuraSpec& spec, const ZeroPattern& pat) {
    ensure_admissible(spec);
    int n = spec.n;
    HodgeTable tab;
    tab.n = n;
    tab.h.assign(n + 2, std::vector<uint64_t>(n + 2, 0));
    for (const auto& v : pat.zeros) {
        int o = 0, t = 0;
        for (uint8_t e : v) {
            o += (e == 1);
            t += (e == 2);
        }
        for (int i = 0; i <= o; ++i) {
            uint64_t ways = z_binom(o, i).get_ui();
            int s = t + i, u = t + o - i;
            for (int dp = 0; dp <= 1; ++dp)
                for (int dq = 0; dq <= 1; ++dq) tab.h[s + dp][u + dq] += ways;
        }
    }
    tab.betti.assign(2 * n + 3, 0);
    for (int p = 0; p <= n + 1; ++p)
        for (int q = 0; q <= n + 1; ++q) tab.betti[p + q] += tab.h[p][q];
    return tab;
}

// The generators of B^{p,q} as monomials (four shapes, materialized on
// demand).
inline std::vector<FMonomial> bpq_generators(const ZeroPattern& pat, int p, int q) {
    std::vector<FMonomial> out;
    int n = pat.n;
    for (const auto& v : pat.zeros) {
        std::vector<int> ones, twos;
        for (int k = 0; k < n; ++k) {
            if (v[k] == 1) ones.push_back(k + 1);
            else if (v[k] == 2) twos.push_back(k + 1);
        }
        int o = static_cast<int>(ones.size()), t = static_cast<int>(twos.size());
        uint32_t both = 0;
        for (int k : twos) both |= 1u << k;
        for (uint32_t pick = 0; pick < (1u << o); ++pick) {
            uint32_t hol = both, ahol = both;
            for (int b = 0; b < o; ++b) {
                if ((pick >> b) & 1u) hol |= 1u << ones[b];
                else ahol |= 1u << ones[b];
            }
            int s = t + std::popcount(pick), u = t + o - std::popcount(pick);
            for (int dp = 0; dp <= 1; ++dp)
                for (int dq = 0; dq <= 1; ++dq) {
                    if (s + dp != p || u + dq != q) continue;
                    FMonomial m{hol | (dp ? 1u : 0u), ahol | (dq ? 1u : 0u)};
                    out.push_back(m);
                }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// de Rham via the Chevalley-Eilenberg kernel/image families

struct DeRhamData {
    std::vector<uint64_t> betti;    // length 2n+3
    std::vector<uint64_t> ker_dims; // dim ker(d) on k-forms
    std::vector<uint64_t> im_dims;  // dim im(d) into k-forms
    std::vector<uint64_t> zero_weight; // Z_j = #(I,J) pairs with c=0, |I|+|J|=j
};

// Z_j counts pairs with |I|+|J| = j and c = 0; a zero vector with o ones
// and t twos yields 2^o pairs, all of total size 2t+o. The kernel on
// k-forms is spanned by the five families of closed generators, the image
// by the two exact ones; betti_k = Z_k + 2 Z_{k-1} + Z_{k-2}.
inline DeRhamData de_rham(const NakamuraSpec& spec, const ZeroPattern& pat) {
    ensure_admissible(spec);
    int n = spec.n;
    DeRhamData d;
    d.zero_weight.assign(2 * n + 1, 0);
    for (const auto& v : pat.zeros) {
        int o = 0, t = 0;
        for (uint8_t e : v) {
            o += (e == 1);
            t += (e == 2);
        }
        d.zero_weight[2 * t + o] += uint64_t(1) << o;
    }
    auto zw = [&](int j) -> uint64_t { return (j >= 0 && j <= 2 * n) ? d.zero_weight[j] : 0; };
    auto total = [&](int j) -> uint64_t {
        return (j >= 0 && j <= 2 * n) ? z_binom(2 * n, j).get_ui() : 0;
    };
    auto nonzero = [&](int j) -> uint64_t { return total(j) - zw(j); };

    d.betti.assign(2 * n + 3, 0);
    d.ker_dims.assign(2 * n + 3, 0);
    d.im_dims.assign(2 * n + 3, 0);
    for (int k = 0; k <= 2 * n + 2; ++k) {
        d.ker_dims[k] = zw(k) + 2 * zw(k - 1) + nonzero(k - 1) + total(k - 2);
        d.im_dims[k] = nonzero(k - 1) + nonzero(k - 2);
        d.betti[k] = d.ker_dims[k] - d.im_dims[k];
    }
    return d;
}

// Explicit bases of ker(d) and im(d) on k-forms (the five closed families
// and the two exact ones), for small-n verification. Enumerates all 4^n
// pairs; intended for tests and certificates, not for the counting path.
struct DeRhamBases {
    std::vector<Form> kernel;
    std::vector<Form> image;
};

inline DeRhamBases de_rham_bases(const NakamuraSpec& spec, const ZeroPattern& pat, int k) {
    int n = spec.n;
    DeRhamBases out;
    long pairs = 1;
    for (int i = 0; i < n; ++i) pairs *= 4;
    for (long code = 0; code < pairs; ++code) {
        uint32_t hol = 0, ahol = 0;
        long c = code;
        for (int i = 1; i <= n; ++i) {
            int digit = c % 4;
            c /= 4;
            if (digit & 1) hol |= 1u << i;
            if (digit & 2) ahol |= 1u << i;
        }
        FMonomial m{hol, ahol};
        int size = m.total_degree();
        bool is_zero_c = pat.contains(exponent_vector_of(n, m));
        Form base = Form::monomial(n, m, GaussQ::one());
        Form with0 = wedge(Form::phi(n, 0), base);
        Form with0bar = wedge(Form::phibar(n, 0), base);
        Form with00 = wedge(Form::phi(n, 0), with0bar);
        if (is_zero_c) {
            if (size == k) out.kernel.push_back(base);
            if (size == k - 1) {
                out.kernel.push_back(with0);
                out.kernel.push_back(with0bar);
            }
        } else {
            if (size == k - 1) {
                out.kernel.push_back(with0 + with0bar);
                out.image.push_back(with0 + with0bar);
            }
            if (size == k - 2) out.image.push_back(with00);
        }
        if (size == k - 2) out.kernel.push_back(with00);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Randomized exact-rank cross-check of the Betti numbers

struct CrosscheckReport {
    int trials = 0;
    uint64_t seed = 0;
    int resamples = 0;
    std::vector<std::vector<Q>> samples;
    std::vector<std::vector<uint64_t>> betti_per_trial;
    bool agreed = false;
};

namespace detail_coh {

// d-matrix ranks over the full exterior algebra on 2n+2 generators with a
// fixed rational lambda substituted; exact, fraction-free.
inline std::vector<uint64_t> ce_betti_for_lambda(int n, const std::vector<Q>& lambda) {
    int gens = 2 * n + 2;
    // basis per degree: all monomials as FMonomials
    std::vector<std::vector<FMonomial>> basis(gens + 1);
    for (uint64_t code = 0; code < (uint64_t(1) << gens); ++code) {
        uint32_t hol = static_cast<uint32_t>(code & ((1u << (n + 1)) - 1));
        uint32_t ahol = static_cast<uint32_t>(code >> (n + 1));
        FMonomial m{hol, ahol};
        basis[m.total_degree()].push_back(m);
    }
    for (auto& b : basis) std::sort(b.begin(), b.end());

    std::vector<int> ranks(gens + 1, 0); // rank of d: k-forms -> (k+1)-forms
    FMonomial phi0{1u, 0u}, phibar0{0u, 1u};
    for (int k = 0; k < gens; ++k) {
        std::map<FMonomial, int> row_index;
        for (int i = 0; i < static_cast<int>(basis[k + 1].size()); ++i) row_index[basis[k + 1][i]] = i;
        std::vector<SparseCol> cols;
        cols.reserve(basis[k].size());
        for (const FMonomial& m : basis[k]) {
            // c = sum over indices >= 1 of multiplicity * lambda_i
            Q c(0);
            for (int i = 1; i <= n; ++i)
                c += Q(static_cast<long>(((m.hol >> i) & 1u) + ((m.ahol >> i) & 1u))) * lambda[i - 1];
            SparseCol col;
            if (sign_of(c) != 0) {
                // scale the column by -2/den(c): rank is scale-invariant
                Z num = c.get_num();
                FMonomial out;
                int s = wedge_mono(phi0, m, out);
                if (s != 0) col.emplace_back(row_index.at(out), s > 0 ? num : Z(-num));
                s = wedge_mono(phibar0, m, out);
                if (s != 0) col.emplace_back(row_index.at(out), s > 0 ? num : Z(-num));
            }
            cols.push_back(std::move(col));
        }
        ranks[k] = sparse_rank(static_cast<int>(basis[k + 1].size()), cols);
    }
    std::vector<uint64_t> betti(gens + 1, 0);
    for (int k = 0; k <= gens; ++k) {
        long dim = static_cast<long>(basis[k].size());
        long rk = ranks[k];
        long rkm1 = k > 0 ? ranks[k - 1] : 0;
        betti[k] = static_cast<uint64_t>(dim - rk - rkm1);
    }
    return betti;
}

} // namespace detail_coh

// Samples pattern-faithful rational lambdas from the solution space of the
// zero pattern, rejects samples with extra relations (re-checked
// exhaustively), and compares exact Chevalley-Eilenberg ranks against the
// combinatorial Betti numbers.
inline CrosscheckReport ce_rank_crosscheck(const NakamuraSpec& spec, const ZeroPattern& pat,
                                           int trials, uint64_t seed,
                                           const std::vector<uint64_t>& expected_betti,
                                           int max_attempts = 64) {
    if (trials < 1) fail(errc::bad_parameter, "crosscheck requires at least one trial");
    int n = spec.n;
    CrosscheckReport rep;
    rep.trials = trials;
    rep.seed = seed;

    ZMatrix u(static_cast<int>(pat.zeros.size()), n);
    {
        int r = 0;
        for (const auto& v : pat.zeros) {
            for (int j = 0; j < n; ++j) u.at(r, j) = v[j];
            ++r;
        }
    }
    auto nullspace = q_nullspace(u);
    if (nullspace.empty())
        fail(errc::sampling_exhausted, "zero pattern admits no nonzero lambda at all");

    std::mt19937_64 rng(seed);
    auto draw_coeff = [&]() {
        // deterministic across platforms: derive from raw engine output
        long v = static_cast<long>(rng() % 19) - 9; // [-9, 9]
        return Q(v);
    };

    auto faithful = [&](const std::vector<Q>& lam) {
        long total = detail_coh::pow3(n);
        for (long idx = 0; idx < total; ++idx) {
            auto v = detail_coh::base3_vector(idx, n);
            Q s(0);
            for (int i = 0; i < n; ++i) s += Q(static_cast<long>(v[i])) * lam[i];
            bool zero = sign_of(s) == 0;
            if (zero != pat.contains(v)) return false;
        }
        return true;
    };

    rep.agreed = true;
    for (int t = 0; t < trials; ++t) {
        std::vector<Q> lam;
        int attempts = 0;
        while (true) {
            if (++attempts > max_attempts)
                fail(errc::sampling_exhausted,
                     "could not draw a pattern-faithful lambda; the pattern's solution "
                     "space appears degenerate");
            lam.assign(n, Q(0));
            for (const auto& base : nullspace) {
                Q c = draw_coeff();
                for (int i = 0; i < n; ++i) lam[i] += c * base[i];
            }
            if (faithful(lam)) break;
            ++rep.resamples;
        }
        rep.samples.push_back(lam);
        auto betti = detail_coh::ce_betti_for_lambda(n, lam);
        rep.betti_per_trial.push_back(betti);
        if (betti != expected_betti) rep.agreed = false;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Frolicher E_1 degeneration

struct FrolicherReport {
    bool degenerate = false;
    long generators_checked = 0;
};

namespace detail_coh {

// Echelon basis (over Q) of the span of the eliminated zero-pattern
// relations; reduce() decides membership of a linear form's coefficients.
struct RelationSpan {
    std::vector<std::vector<Q>> rows; // reduced echelon rows, nvars wide
    int nvars;

    explicit RelationSpan(const ZeroPattern& pat) : nvars(pat.n - 1) {
        for (const auto& v : pat.zeros) {
            std::vector<Q> u(nvars);
            for (int i = 0; i + 1 < pat.n; ++i) u[i] = Q(static_cast<long>(v[i]) - static_cast<long>(v[pat.n - 1]));
            insert(std::move(u));
        }
    }

    void insert(std::vector<Q> u) {
        reduce_inplace(u);
        for (int i = 0; i < nvars; ++i)
            if (sign_of(u[i]) != 0) {
                Q inv = Q(1) / u[i];
                for (auto& e : u) e *= inv;
                rows.push_back(std::move(u));
                std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
                    auto lead = [](const std::vector<Q>& r) {
                        for (size_t i = 0; i < r.size(); ++i)
                            if (sign_of(r[i]) != 0) return i;
                        return r.size();
                    };
                    return lead(a) < lead(b);
                });
                return;
            }
    }

    void reduce_inplace(std::vector<Q>& u) const {
        for (const auto& r : rows) {
            size_t lead = 0;
            while (lead < r.size() && sign_of(r[lead]) == 0) ++lead;
            if (lead == r.size() || sign_of(u[lead]) == 0) continue;
            Q f = u[lead];
            for (int i = 0; i < nvars; ++i) u[i] -= f * r[i];
        }
    }

    bool in_span(std::vector<Q> u) const {
        reduce_inplace(u);
        for (const auto& e : u)
            if (sign_of(e) != 0) return false;
        return true;
    }
};

} // namespace detail_coh

// Symbolically applies del and delbar to every B^{p,q} generator and
// reduces the resulting linear coefficients modulo the certified zero
// pattern. E_1 degeneration holds iff everything vanishes.
inline FrolicherReport frolicher_e1(const NakamuraSpec& spec, const ZeroPattern& pat) {
    ensure_admissible(spec);
    int n = spec.n;
    detail_coh::RelationSpan span(pat);
    FrolicherReport rep;
    rep.degenerate = true;

    auto reduces_to_zero = [&](const Form& f) {
        for (const auto& [m, c] : f.terms()) {
            GaussQ constant;
            std::vector<GaussQ> coeffs;
            if (!c.linear_parts(constant, coeffs)) return false;
            if (!constant.is_zero()) return false;
            std::vector<Q> re(n - 1), im(n - 1);
            for (int i = 0; i < n - 1; ++i) {
                re[i] = coeffs[i].re;
                im[i] = coeffs[i].im;
            }
            if (!span.in_span(re) || !span.in_span(im)) return false;
        }
        return true;
    };

    for (int p = 0; p <= n + 1 && rep.degenerate; ++p)
        for (int q = 0; q <= n + 1 && rep.degenerate; ++q)
            for (const FMonomial& m : bpq_generators(pat, p, q)) {
                Form g = Form::monomial(n, m, GaussQ::one());
                rep.generators_checked += 2;
                if (!reduces_to_zero(del(g)) || !reduces_to_zero(delbar(g))) {
                    rep.degenerate = false;
                    break;
                }
            }
    return rep;
}

} // namespace nakamura
