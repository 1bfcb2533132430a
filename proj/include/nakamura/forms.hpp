#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <string>

#include "numeric.hpp"

namespace nakamura {

// Gaussian rational a + b*i: the coefficient field of the form algebra.
struct GaussQ {
    Q re, im;

    GaussQ() : re(0), im(0) {}
    GaussQ(Q r) : re(std::move(r)), im(0) {}
    GaussQ(Q r, Q i) : re(std::move(r)), im(std::move(i)) {}

    static GaussQ one() { return GaussQ(Q(1)); }
    static GaussQ i() { return GaussQ(Q(0), Q(1)); }
    // (sqrt(-1))^k
    static GaussQ i_pow(unsigned k) {
        switch (k % 4) {
            case 0: return GaussQ(Q(1));
            case 1: return GaussQ(Q(0), Q(1));
            case 2: return GaussQ(Q(-1));
            default: return GaussQ(Q(0), Q(-1));
        }
    }

    bool is_zero() const { return sign_of(re) == 0 && sign_of(im) == 0; }
    GaussQ conj() const { return GaussQ(re, -im); }

    friend GaussQ operator+(const GaussQ& a, const GaussQ& b) { return {a.re + b.re, a.im + b.im}; }
    friend GaussQ operator-(const GaussQ& a, const GaussQ& b) { return {a.re - b.re, a.im - b.im}; }
    friend GaussQ operator*(const GaussQ& a, const GaussQ& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    GaussQ operator-() const { return {-re, -im}; }
    bool operator==(const GaussQ& o) const { return re == o.re && im == o.im; }

    std::string to_string() const {
        auto q_str = [](const Q& q) {
            std::string s = q.get_num().get_str();
            if (q.get_den() != 1) s += "/" + q.get_den().get_str();
            return s;
        };
        if (is_zero()) return "0";
        if (sign_of(im) == 0) return q_str(re);
        std::string im_part = (im == 1 ? "i" : (im == -1 ? "-i" : q_str(im) + "*i"));
        if (sign_of(re) == 0) return im_part;
        std::string s = q_str(re);
        if (sign_of(im) > 0) s += "+";
        return "(" + s + im_part + ")";
    }
};

// Polynomial in lambda_1..lambda_nvars over the Gaussian rationals.
// lambda_n is always eliminated upstream via lambda_n = -(lambda_1+...),
// so nvars = n-1 and "zero modulo sum lambda = 0" is a syntactic zero.
class LPoly {
public:
    using Key = std::vector<uint8_t>; // exponents per variable

    LPoly() : nvars_(0) {}
    explicit LPoly(int nvars) : nvars_(nvars) {}

    static LPoly constant(int nvars, GaussQ c) {
        LPoly p(nvars);
        p.add_term(Key(nvars, 0), std::move(c));
        return p;
    }
    // the single variable lambda_j, 1-based, j <= nvars
    static LPoly variable(int nvars, int j) {
        LPoly p(nvars);
        Key k(nvars, 0);
        k.at(j - 1) = 1;
        p.add_term(std::move(k), GaussQ::one());
        return p;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return t_.empty(); }
    const std::map<Key, GaussQ>& terms() const { return t_; }

    void add_term(Key k, GaussQ c) {
        if (c.is_zero()) return;
        auto [it, fresh] = t_.try_emplace(std::move(k), c);
        if (!fresh) {
            it->second = it->second + c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    friend LPoly operator+(const LPoly& a, const LPoly& b) {
        LPoly r = a;
        for (const auto& [k, c] : b.t_) r.add_term(k, c);
        return r;
    }
    friend LPoly operator-(const LPoly& a, const LPoly& b) { return a + (-b); }
    LPoly operator-() const {
        LPoly r(nvars_);
        for (const auto& [k, c] : t_) r.t_.emplace(k, -c);
        return r;
    }
    friend LPoly operator*(const LPoly& a, const LPoly& b) {
        LPoly r(std::max(a.nvars_, b.nvars_));
        for (const auto& [ka, ca] : a.t_)
            for (const auto& [kb, cb] : b.t_) {
                Key k(r.nvars_, 0);
                for (int i = 0; i < r.nvars_; ++i)
                    k[i] = static_cast<uint8_t>((i < static_cast<int>(ka.size()) ? ka[i] : 0) +
                                                (i < static_cast<int>(kb.size()) ? kb[i] : 0));
                r.add_term(std::move(k), ca * cb);
            }
        return r;
    }
    friend LPoly operator*(const GaussQ& s, const LPoly& a) {
        LPoly r(a.nvars_);
        for (const auto& [k, c] : a.t_) r.add_term(k, s * c);
        return r;
    }

    LPoly conj() const {
        LPoly r(nvars_);
        for (const auto& [k, c] : t_) r.t_.emplace(k, c.conj());
        return r;
    }

    bool operator==(const LPoly& o) const { return t_ == o.t_; }

    // Degree <= 1 decomposition: constant + sum coeff_j * lambda_j.
    // Returns false if any term has total degree > 1.
    bool linear_parts(GaussQ& constant, std::vector<GaussQ>& coeffs) const {
        constant = GaussQ();
        coeffs.assign(nvars_, GaussQ());
        for (const auto& [k, c] : t_) {
            int total = 0, var = -1;
            for (int i = 0; i < static_cast<int>(k.size()); ++i) {
                total += k[i];
                if (k[i]) var = i;
            }
            if (total == 0) constant = c;
            else if (total == 1) coeffs[var] = c;
            else return false;
        }
        return true;
    }

    std::string to_string() const {
        if (t_.empty()) return "0";
        std::string s;
        for (const auto& [k, c] : t_) {
            if (!s.empty()) s += " + ";
            std::string mono;
            for (int i = 0; i < static_cast<int>(k.size()); ++i)
                for (int e = 0; e < k[i]; ++e) mono += (mono.empty() ? "" : "*") + ("l" + std::to_string(i + 1));
            if (mono.empty()) s += c.to_string();
            else s += c.to_string() + "*" + mono;
        }
        return s;
    }

private:
    int nvars_;
    std::map<Key, GaussQ> t_;
};

// Exterior monomial over the coframe phi^0..phi^n, phibar^0..phibar^n.
// Canonical generator order: phi^0 < ... < phi^n < phibar^0 < ... < phibar^n;
// every product is sign-normalized to that order.
struct FMonomial {
    uint32_t hol = 0;  // bit i => phi^i present
    uint32_t ahol = 0; // bit i => phibar^i present

    int p() const { return std::popcount(hol); }
    int q() const { return std::popcount(ahol); }
    int total_degree() const { return p() + q(); }

    auto operator<=>(const FMonomial&) const = default;
};

// inversions between two disjoint bitmask generator sets under the
// canonical order: pairs (x in a, y in b) with x > y
inline int mask_inversions(uint32_t a, uint32_t b) {
    int inv = 0;
    while (b) {
        int y = std::countr_zero(b);
        b &= b - 1;
        inv += std::popcount(a >> (y + 1));
    }
    return inv;
}

// signed wedge of monomials; returns sign 0 when a generator repeats
inline int wedge_mono(const FMonomial& a, const FMonomial& b, FMonomial& out) {
    if ((a.hol & b.hol) || (a.ahol & b.ahol)) return 0;
    int inv = mask_inversions(a.hol, b.hol) + mask_inversions(a.ahol, b.ahol) +
              std::popcount(a.ahol) * std::popcount(b.hol);
    out = FMonomial{a.hol | b.hol, a.ahol | b.ahol};
    return inv % 2 ? -1 : 1;
}

// A (possibly mixed-degree) invariant form: monomials with polynomial
// coefficients in the lambdas. `n` is the fibre dimension; the generator
// index range is 0..n.
class Form {
public:
    Form() : n_(0) {}
    explicit Form(int n) : n_(n) {}

    static Form zero(int n) { return Form(n); }
    static Form one(int n) { return Form::monomial(n, FMonomial{}, GaussQ::one()); }
    static Form phi(int n, int i) { return Form::monomial(n, FMonomial{1u << i, 0}, GaussQ::one()); }
    static Form phibar(int n, int i) { return Form::monomial(n, FMonomial{0, 1u << i}, GaussQ::one()); }

    static Form monomial(int n, FMonomial m, GaussQ c) {
        Form f(n);
        f.add_term(m, LPoly::constant(n - 1, std::move(c)));
        return f;
    }
    static Form monomial(int n, FMonomial m, LPoly c) {
        Form f(n);
        f.add_term(m, std::move(c));
        return f;
    }

    int n() const { return n_; }
    bool is_zero() const { return t_.empty(); }
    const std::map<FMonomial, LPoly>& terms() const { return t_; }

    void add_term(const FMonomial& m, LPoly c) {
        if (c.is_zero()) return;
        auto [it, fresh] = t_.try_emplace(m, c);
        if (!fresh) {
            it->second = it->second + c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    friend Form operator+(const Form& a, const Form& b) {
        Form r = a;
        r.n_ = std::max(a.n_, b.n_);
        for (const auto& [m, c] : b.t_) r.add_term(m, c);
        return r;
    }
    friend Form operator-(const Form& a, const Form& b) { return a + (GaussQ(Q(-1)) * b); }
    friend Form operator*(const GaussQ& s, const Form& a) {
        Form r(a.n_);
        for (const auto& [m, c] : a.t_) r.add_term(m, s * c);
        return r;
    }
    friend Form operator*(const LPoly& s, const Form& a) {
        Form r(a.n_);
        for (const auto& [m, c] : a.t_) r.add_term(m, s * c);
        return r;
    }

    bool operator==(const Form& o) const { return t_ == o.t_; }

    // homogeneous component of bidegree (p, q)
    Form component(int p, int q) const {
        Form r(n_);
        for (const auto& [m, c] : t_)
            if (m.p() == p && m.q() == q) r.add_term(m, c);
        return r;
    }

    std::string to_string() const;

private:
    int n_;
    std::map<FMonomial, LPoly> t_;
};

inline Form wedge(const Form& a, const Form& b) {
    Form r(std::max(a.n(), b.n()));
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            FMonomial m;
            int s = wedge_mono(ma, mb, m);
            if (s == 0) continue;
            LPoly c = ca * cb;
            if (s < 0) c = -c;
            r.add_term(m, std::move(c));
        }
    return r;
}

// conjugation: swaps the holomorphic and antiholomorphic parts with the
// sign (-1)^{pq}; lambda coefficients are real, Gaussian scalars conjugate
inline Form conj(const Form& f) {
    Form r(f.n());
    for (const auto& [m, c] : f.terms()) {
        FMonomial cm{m.ahol, m.hol};
        LPoly cc = c.conj();
        if ((m.p() * m.q()) % 2) cc = -cc;
        r.add_term(cm, std::move(cc));
    }
    return r;
}

// The multiindex weight c_IJ of a monomial as a polynomial in the lambdas
// (index-0 generators contribute nothing; lambda_n eliminated).
inline LPoly c_weight_poly(int n, const FMonomial& m) {
    LPoly c(n - 1);
    int mult_n = ((m.hol >> n) & 1u) + ((m.ahol >> n) & 1u);
    for (int i = 1; i < n; ++i) {
        int mult = ((m.hol >> i) & 1u) + ((m.ahol >> i) & 1u);
        int coeff = mult - mult_n; // lambda_n = -(lambda_1 + ... + lambda_{n-1})
        if (coeff != 0) c.add_term([&] {
            LPoly::Key k(n - 1, 0);
            k[i - 1] = 1;
            return k;
        }(), GaussQ(Q(coeff)));
    }
    return c;
}

// Exponent vector of a monomial: v_k = [phi^k present] + [phibar^k present],
// k = 1..n.
inline std::vector<uint8_t> exponent_vector_of(int n, const FMonomial& m) {
    std::vector<uint8_t> v(n, 0);
    for (int i = 1; i <= n; ++i) v[i - 1] = static_cast<uint8_t>(((m.hol >> i) & 1u) + ((m.ahol >> i) & 1u));
    return v;
}

namespace detail_forms {

// d(mono) = -(1/2) c_IJ (phi^0 + phibar^0) ^ mono, extended linearly with
// constant coefficients; `which` selects the del / delbar / both parts.
inline Form differential(const Form& f, bool take_del, bool take_delbar) {
    int n = f.n();
    Form r(n);
    FMonomial phi0{1u, 0u}, phibar0{0u, 1u};
    for (const auto& [m, coeff] : f.terms()) {
        LPoly c = c_weight_poly(n, m);
        if (c.is_zero()) continue;
        LPoly factor = GaussQ(Q(-1, 2)) * (coeff * c);
        if (take_del) {
            FMonomial out;
            int s = wedge_mono(phi0, m, out);
            if (s != 0) r.add_term(out, s < 0 ? -factor : factor);
        }
        if (take_delbar) {
            FMonomial out;
            int s = wedge_mono(phibar0, m, out);
            if (s != 0) r.add_term(out, s < 0 ? -factor : factor);
        }
    }
    return r;
}

} // namespace detail_forms

inline Form d(const Form& f) { return detail_forms::differential(f, true, true); }
inline Form del(const Form& f) { return detail_forms::differential(f, true, false); }
inline Form delbar(const Form& f) { return detail_forms::differential(f, false, true); }

inline std::string Form::to_string() const {
    if (t_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : t_) {
        if (!s.empty()) s += "  +  ";
        std::string gens;
        for (int i = 0; i <= n_; ++i)
            if ((m.hol >> i) & 1u) gens += (gens.empty() ? "" : "∧") + ("φ" + std::to_string(i));
        for (int i = 0; i <= n_; ++i)
            if ((m.ahol >> i) & 1u) gens += (gens.empty() ? "" : "∧") + ("φ̄" + std::to_string(i));
        if (gens.empty()) gens = "1";
        s += "(" + c.to_string() + ")·" + gens;
    }
    return s;
}

} // namespace nakamura
