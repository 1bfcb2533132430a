#pragma once

#include "cohomology.hpp"

namespace nakamura {

enum class CertKind {
    balanced,
    canonical_trivial,
    non_p_kahler,
    ddbar_lemma,
    non_kahler,
    tau_bound,
};

inline const char* cert_kind_name(CertKind k) {
    switch (k) {
        case CertKind::balanced: return "balanced";
        case CertKind::canonical_trivial: return "canonical_trivial";
        case CertKind::non_p_kahler: return "non_p_kahler";
        case CertKind::ddbar_lemma: return "ddbar_lemma";
        case CertKind::non_kahler: return "non_kahler";
        case CertKind::tau_bound: return "tau_bound";
    }
    return "unknown";
}

// Machine-checkable verdict: every certificate re-verifies through
// verify_certificate(certificate, spec) alone.
struct Certificate {
    CertKind kind;
    bool holds = false;

    // non_p_kahler payload
    int p = 0;
    std::vector<int> witness; // multiindex I, 1-based, |I| = n-p
    int witness_sign = 0;     // certified sign of sum_{i in I} lambda_i
    GaussQ sigma;             // normalization (sqrt(-1))^(p^2) 2^(-p) with reorder sign

    // ddbar payload
    bool sub_conjugation = false;
    bool sub_decomposition = false;
    bool sub_frolicher = false;

    // tau payload
    QInterval bound{Q(0), Q(0)};
    TauVerdict tau_status = TauVerdict::admissible_assumed;

    std::string note;
};

namespace detail_verdicts {

inline Form fundamental_form(int n) {
    Form omega(n);
    for (int i = 0; i <= n; ++i)
        omega = omega + GaussQ::i() * wedge(Form::phi(n, i), Form::phibar(n, i));
    return omega;
}

inline Form omega_power(int n, int e) {
    Form acc = Form::one(n);
    Form omega = fundamental_form(n);
    for (int i = 0; i < e; ++i) acc = wedge(acc, omega);
    return acc;
}

// phi^0 ^ prod_{i in I} (phi^i ^ phibar^i)
inline Form obstruction_primitive(int n, const std::vector<int>& idx) {
    Form f = Form::phi(n, 0);
    for (int i : idx) f = wedge(f, wedge(Form::phi(n, i), Form::phibar(n, i)));
    return f;
}

// phi^0 ^ phibar^0 ^ prod_{i in I} (phi^i ^ phibar^i)
inline Form obstruction_monomial(int n, const std::vector<int>& idx) {
    Form f = wedge(Form::phi(n, 0), Form::phibar(n, 0));
    for (int i : idx) f = wedge(f, wedge(Form::phi(n, i), Form::phibar(n, i)));
    return f;
}

// sum_{i in I} lambda_i with lambda_n eliminated
inline LPoly index_sum_poly(int n, const std::vector<int>& idx) {
    LPoly c(n - 1);
    for (int i : idx) {
        if (i < n) c = c + LPoly::variable(n - 1, i);
        else
            for (int j = 1; j < n; ++j) c = c - LPoly::variable(n - 1, j);
    }
    return c;
}

inline bool obstruction_identity_holds(const NakamuraSpec& spec, const std::vector<int>& idx) {
    int n = spec.n;
    Form lhs = d(obstruction_primitive(n, idx));
    Form rhs = index_sum_poly(n, idx) * obstruction_monomial(n, idx);
    return lhs == rhs;
}

inline ExponentVector indicator(int n, const std::vector<int>& idx) {
    std::vector<uint8_t> v(n, 0);
    for (int i : idx) v.at(i - 1) = 1;
    return ExponentVector(std::move(v));
}

} // namespace detail_verdicts

// d(omega^n) = 0 as an exact polynomial identity; omega itself is diagonal
// with unit coefficients, so positivity is analytic.
inline Certificate check_balanced(const NakamuraSpec& spec) {
    Certificate c;
    c.kind = CertKind::balanced;
    Form dwn = d(detail_verdicts::omega_power(spec.n, spec.n));
    if (!dwn.is_zero())
        fail(errc::symbolic_non_zero, "d(omega^n) did not vanish symbolically (engine bug)");
    c.holds = true;
    c.note = "d(omega^n) = 0 symbolically; omega = i*sum phi^k^phibar^k is positive (diagonal, "
             "unit coefficients)";
    return c;
}

// delbar of the canonical section phi^0^...^phi^n; its coefficient is
// (1/2) sum lambda_i, syntactically zero after eliminating lambda_n.
inline Certificate check_canonical_trivial(const NakamuraSpec& spec) {
    Certificate c;
    c.kind = CertKind::canonical_trivial;
    int n = spec.n;
    Form vol = Form::phi(n, 0);
    for (int i = 1; i <= n; ++i) vol = wedge(vol, Form::phi(n, i));
    if (!delbar(vol).is_zero())
        fail(errc::symbolic_non_zero, "delbar of the canonical section did not vanish (engine bug)");
    c.holds = true;
    c.note = "delbar(phi^0^...^phi^n) = 0; the canonical bundle is holomorphically trivial";
    return c;
}

// Non-p-Kahler certificate: a multiindex I of length n-p with certified
// nonzero sum, the exact primitive whose d is the obstruction form, and a
// symbolic re-verification of that identity.
inline Certificate p_kahler_obstruction(const NakamuraSpec& spec, int p) {
    int n = spec.n;
    if (p < 1 || p > n - 1)
        fail(errc::bad_parameter, "p must satisfy 1 <= p <= n-1 (N is n-Kahler: balanced)");
    int k = n - p;

    // candidates ordered by |interval midpoint of the partial sum|, largest
    // first: fastest certification, existence is guaranteed
    auto subsets = k_subsets(n, k);
    std::vector<std::pair<Q, std::vector<int>>> ranked;
    for (const auto& s : subsets) {
        Q mid(0);
        std::vector<int> idx;
        for (int i : s) {
            idx.push_back(i + 1);
            mid += spec.cert->lambda_interval(i, 64).mid();
        }
        ranked.emplace_back(mid >= 0 ? mid : Q(-mid), std::move(idx));
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second; // deterministic tie-break
    });

    for (const auto& [mag, idx] : ranked) {
        int sign = spec.cert->sign_of_sum(detail_verdicts::indicator(n, idx));
        if (sign == 0) continue;
        Certificate c;
        c.kind = CertKind::non_p_kahler;
        c.p = p;
        c.witness = idx;
        c.witness_sign = sign;
        // sigma_p together with the pair-reordering sign (-1)^{(k+1)k/2}
        GaussQ sigma = GaussQ::i_pow(static_cast<unsigned>(p) * static_cast<unsigned>(p));
        sigma = sigma * GaussQ(Q(((k + 1) * k / 2) % 2 ? -1 : 1, z_pow(2, p)));
        c.sigma = sigma;
        if (!detail_verdicts::obstruction_identity_holds(spec, idx))
            fail(errc::symbolic_non_zero, "obstruction exactness identity failed (engine bug)");
        c.holds = true;
        c.note = "d(primitive) = (sum_I lambda_i) * obstruction monomial; sum certified nonzero";
        return c;
    }
    fail(errc::no_witness,
         "no multiindex with nonzero partial sum exists; impossible for a validated non-torus "
         "spec");
}

// Enclosure of 2*pi / max|c| and, for explicit tau, its certification.
inline Certificate tau_admissible_bound(const NakamuraSpec& spec, long rel_bits = 30) {
    Certificate c;
    c.kind = CertKind::tau_bound;
    c.bound = tau_bound_interval(spec, rel_bits);
    c.tau_status = tau_verdict(spec, rel_bits);
    c.holds = c.tau_status != TauVerdict::unknown;
    switch (c.tau_status) {
        case TauVerdict::admissible_assumed:
            c.note = "admissible mode: tau*c in 2*pi*Z <=> c = 0 is asserted";
            break;
        case TauVerdict::certified_admissible:
            c.note = "|tau| certified below 2*pi/max|c|";
            break;
        case TauVerdict::unknown:
            c.note = "tau not certified admissible: possibly resonant, cohomology unsupported";
            break;
    }
    return c;
}

struct DDbarInputs {
    const HodgeTable& hodge;
    const DeRhamData& derham;
    const FrolicherReport& frolicher;
};

// Bundles the three checked facts behind the ddbar-Lemma: conjugation
// symmetry of the Hodge table, the kernel/image decomposition equality,
// and E_1 degeneration. Non-Kahlerness is the cited Hasegawa fact for
// non-torus completely solvable quotients, not recomputed.
inline std::pair<Certificate, Certificate> ddbar_verdict(const NakamuraSpec& spec,
                                                         const DDbarInputs& in) {
    ensure_admissible(spec);
    Certificate c;
    c.kind = CertKind::ddbar_lemma;
    int n = spec.n;
    c.sub_conjugation = true;
    for (int p = 0; p <= n + 1; ++p)
        for (int q = 0; q <= n + 1; ++q)
            if (in.hodge.h[p][q] != in.hodge.h[q][p]) c.sub_conjugation = false;
    c.sub_decomposition = true;
    for (int k = 0; k <= 2 * n + 2; ++k) {
        uint64_t sum_h = 0;
        for (int p = 0; p <= n + 1; ++p) {
            int q = k - p;
            if (q >= 0 && q <= n + 1) sum_h += in.hodge.h[p][q];
        }
        if (in.derham.ker_dims[k] != sum_h + in.derham.im_dims[k]) c.sub_decomposition = false;
    }
    c.sub_frolicher = in.frolicher.degenerate;
    c.holds = c.sub_conjugation && c.sub_decomposition && c.sub_frolicher;
    c.note = "conjugation symmetry + ker/im decomposition + E_1 degeneration";

    Certificate nk;
    nk.kind = CertKind::non_kahler;
    nk.holds = true;
    nk.note = "cited: completely solvable non-torus solvmanifolds carry no Kahler structure "
              "(Hasegawa)";
    return {std::move(c), std::move(nk)};
}

// Re-verification from the certificate and the spec alone.
inline bool verify_certificate(const Certificate& c, const NakamuraSpec& spec) {
    switch (c.kind) {
        case CertKind::balanced:
            return c.holds && d(detail_verdicts::omega_power(spec.n, spec.n)).is_zero();
        case CertKind::canonical_trivial: {
            Form vol = Form::phi(spec.n, 0);
            for (int i = 1; i <= spec.n; ++i) vol = wedge(vol, Form::phi(spec.n, i));
            return c.holds && delbar(vol).is_zero();
        }
        case CertKind::non_p_kahler: {
            if (!c.holds || c.p < 1 || c.p > spec.n - 1) return false;
            if (static_cast<int>(c.witness.size()) != spec.n - c.p) return false;
            for (int i : c.witness)
                if (i < 1 || i > spec.n) return false;
            if (c.witness_sign == 0) return false;
            if (spec.cert->sign_of_sum(detail_verdicts::indicator(spec.n, c.witness)) !=
                c.witness_sign)
                return false;
            return detail_verdicts::obstruction_identity_holds(spec, c.witness);
        }
        case CertKind::ddbar_lemma: {
            ZeroPattern pat = compute_zero_pattern(spec);
            HodgeTable hodge = dolbeault_numbers(spec, pat);
            DeRhamData dr = de_rham(spec, pat);
            FrolicherReport fr = frolicher_e1(spec, pat);
            auto [fresh, nk] = ddbar_verdict(spec, {hodge, dr, fr});
            return fresh.holds == c.holds && fresh.sub_conjugation == c.sub_conjugation &&
                   fresh.sub_decomposition == c.sub_decomposition &&
                   fresh.sub_frolicher == c.sub_frolicher;
        }
        case CertKind::non_kahler:
            return c.holds; // validated specs are non-torus by construction
        case CertKind::tau_bound: {
            // both enclosures contain the true bound, so they must overlap
            QInterval fresh = tau_bound_interval(spec, 40);
            bool disjoint = fresh.hi < c.bound.lo || c.bound.hi < fresh.lo;
            return !disjoint && tau_verdict(spec) == c.tau_status;
        }
    }
    return false;
}

} // namespace nakamura
