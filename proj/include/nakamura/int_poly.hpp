#pragma once

#include <optional>
#include <vector>

#include "errors.hpp"
#include "numeric.hpp"

namespace nakamura {

// Univariate polynomial with integer coefficients, ascending order,
// normalized (no trailing zeros; the zero polynomial has empty coeffs).
struct ZPoly {
    std::vector<Z> c;

    ZPoly() = default;
    explicit ZPoly(std::vector<Z> coeffs) : c(std::move(coeffs)) { normalize(); }

    static ZPoly zero() { return ZPoly(); }
    static ZPoly constant(Z v) { return ZPoly({std::move(v)}); }
    // x - r
    static ZPoly x_minus(const Z& r) { return ZPoly({-r, Z(1)}); }

    void normalize() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    const Z& lc() const { return c.back(); }
    Z coeff(int i) const { return (i >= 0 && i < static_cast<int>(c.size())) ? c[i] : Z(0); }
    bool is_monic() const { return !c.empty() && c.back() == 1; }

    bool operator==(const ZPoly& o) const { return c == o.c; }

    Z eval_z(const Z& x) const {
        Z acc(0);
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Q eval_q(const Q& x) const {
        Q acc(0);
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    // sign of p(num/den) via homogeneous integer evaluation; den > 0.
    int sign_at(const Q& x) const {
        if (is_zero()) return 0;
        const Z& num = x.get_num();
        const Z& den = x.get_den();
        Z acc = c.back();
        Z dpow(1);
        for (int i = degree() - 1; i >= 0; --i) {
            dpow *= den;
            acc = acc * num + c[i] * dpow;
        }
        return sign_of(acc);
    }

    int sign_at_pos_inf() const { return is_zero() ? 0 : sign_of(lc()); }
    int sign_at_neg_inf() const {
        if (is_zero()) return 0;
        return degree() % 2 == 0 ? sign_of(lc()) : -sign_of(lc());
    }

    ZPoly derivative() const {
        if (degree() < 1) return zero();
        std::vector<Z> d(c.size() - 1);
        for (size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<long>(i);
        return ZPoly(std::move(d));
    }

    friend ZPoly operator+(const ZPoly& a, const ZPoly& b) {
        std::vector<Z> r(std::max(a.c.size(), b.c.size()), Z(0));
        for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
        return ZPoly(std::move(r));
    }
    friend ZPoly operator-(const ZPoly& a, const ZPoly& b) {
        std::vector<Z> r(std::max(a.c.size(), b.c.size()), Z(0));
        for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
        return ZPoly(std::move(r));
    }
    friend ZPoly operator*(const ZPoly& a, const ZPoly& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        std::vector<Z> r(a.c.size() + b.c.size() - 1, Z(0));
        for (size_t i = 0; i < a.c.size(); ++i)
            for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
        return ZPoly(std::move(r));
    }
    friend ZPoly operator*(const Z& s, const ZPoly& a) {
        std::vector<Z> r = a.c;
        for (auto& v : r) v *= s;
        return ZPoly(std::move(r));
    }
    ZPoly operator-() const { return Z(-1) * *this; }

    std::string to_string(const std::string& var = "x") const;
};

inline Z content(const ZPoly& p) {
    Z g(0);
    for (const auto& v : p.c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    return g; // 0 for the zero polynomial
}

// Content division preserving the sign pattern (for Sturm sequences).
inline ZPoly reduce_content(const ZPoly& p) {
    if (p.is_zero()) return p;
    Z g = content(p);
    std::vector<Z> r(p.c.size());
    for (size_t i = 0; i < p.c.size(); ++i) mpz_divexact(r[i].get_mpz_t(), p.c[i].get_mpz_t(), g.get_mpz_t());
    return ZPoly(std::move(r));
}

// Primitive part with positive leading coefficient.
inline ZPoly primitive_part(const ZPoly& p) {
    if (p.is_zero()) return p;
    Z g = content(p);
    if (sign_of(p.lc()) < 0) g = -g;
    std::vector<Z> r(p.c.size());
    for (size_t i = 0; i < p.c.size(); ++i) mpz_divexact(r[i].get_mpz_t(), p.c[i].get_mpz_t(), g.get_mpz_t());
    return ZPoly(std::move(r));
}

// Exact division; throws if b does not divide a over Z.
inline ZPoly divide_exact(const ZPoly& a, const ZPoly& b) {
    if (b.is_zero()) fail(errc::bad_parameter, "polynomial division by zero");
    if (a.is_zero()) return ZPoly::zero();
    int da = a.degree(), db = b.degree();
    if (da < db) fail(errc::bad_parameter, "inexact polynomial division");
    std::vector<Z> rem = a.c, q(da - db + 1, Z(0));
    for (int k = da - db; k >= 0; --k) {
        Z t;
        if (!mpz_divisible_p(rem[k + db].get_mpz_t(), b.lc().get_mpz_t()))
            fail(errc::bad_parameter, "inexact polynomial division");
        mpz_divexact(t.get_mpz_t(), rem[k + db].get_mpz_t(), b.lc().get_mpz_t());
        q[k] = t;
        for (int i = 0; i <= db; ++i) rem[k + i] -= t * b.c[i];
    }
    for (const auto& v : rem)
        if (v != 0) fail(errc::bad_parameter, "inexact polynomial division");
    return ZPoly(std::move(q));
}

inline bool divides(const ZPoly& b, const ZPoly& a) {
    if (a.is_zero()) return true;
    if (b.is_zero() || a.degree() < b.degree()) return false;
    try {
        (void)divide_exact(a, b);
        return true;
    } catch (const error&) {
        return false;
    }
}

// Pseudo-remainder: rem of lc(b)^(deg a - deg b + 1) * a  modulo b.
inline ZPoly pseudo_rem(const ZPoly& a, const ZPoly& b) {
    int da = a.degree(), db = b.degree();
    assert(db >= 0 && da >= db);
    ZPoly r = a;
    int e = da - db + 1;
    while (!r.is_zero() && r.degree() >= db) {
        int k = r.degree() - db;
        Z head = r.lc();
        // r <- lc(b)*r - head*x^k*b  (kills the leading term)
        std::vector<Z> next(r.c.size() - 1, Z(0));
        for (int i = 0; i + 1 < static_cast<int>(r.c.size()); ++i) next[i] = b.lc() * r.c[i];
        for (int i = 0; i < db; ++i) next[k + i] -= head * b.c[i];
        r = ZPoly(std::move(next));
        --e;
    }
    for (int i = 0; i < e; ++i) r = b.lc() * r;
    return r;
}

// Primitive-PRS gcd, positive leading coefficient.
inline ZPoly poly_gcd(ZPoly a, ZPoly b) {
    a = primitive_part(a);
    b = primitive_part(b);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        ZPoly r = primitive_part(pseudo_rem(a, b));
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

inline ZPoly squarefree_part(const ZPoly& p) {
    if (p.degree() < 1) return primitive_part(p);
    ZPoly g = poly_gcd(p, p.derivative());
    if (g.degree() == 0) return primitive_part(p);
    return primitive_part(divide_exact(primitive_part(p), g));
}

// Yun decomposition: returns pairwise-coprime squarefree factors with
// multiplicities, p ~ prod f_i^{m_i} up to content.
inline std::vector<std::pair<ZPoly, int>> squarefree_decomposition(const ZPoly& p_in) {
    std::vector<std::pair<ZPoly, int>> out;
    ZPoly p = primitive_part(p_in);
    if (p.degree() < 1) return out;
    ZPoly g = poly_gcd(p, p.derivative());
    if (g.degree() == 0) {
        out.emplace_back(p, 1);
        return out;
    }
    ZPoly c = divide_exact(p, g);
    ZPoly d = divide_exact(p.derivative(), g) - c.derivative();
    int i = 1;
    while (c.degree() > 0) {
        ZPoly a = poly_gcd(c, d);
        if (a.degree() > 0) out.emplace_back(a, i);
        c = divide_exact(c, a);
        d = divide_exact(d, a) - c.derivative();
        ++i;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Sturm machinery

struct SturmChain {
    std::vector<ZPoly> seq;

    explicit SturmChain(const ZPoly& p) {
        // content reduction must keep signs; a positive-lc normalization
        // here would corrupt the variation counts
        seq.push_back(reduce_content(p));
        if (seq[0].degree() < 1) return;
        seq.push_back(reduce_content(seq[0].derivative()));
        while (!seq.back().is_zero()) {
            const ZPoly& a = seq[seq.size() - 2];
            const ZPoly& b = seq.back();
            if (a.degree() < b.degree()) break;
            ZPoly r = pseudo_rem(a, b);
            if (r.is_zero()) break;
            // The pseudo-remainder multiplier is lc(b)^(da-db+1); flip the
            // sign only when that multiplier is positive.
            int delta = a.degree() - b.degree() + 1;
            bool mult_positive = sign_of(b.lc()) > 0 || delta % 2 == 0;
            seq.push_back(reduce_content(mult_positive ? -r : r));
        }
    }

    static int count_changes(const std::vector<int>& signs) {
        int changes = 0, prev = 0;
        for (int s : signs) {
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++changes;
            prev = s;
        }
        return changes;
    }

    int variations_at(const Q& x) const {
        std::vector<int> signs;
        signs.reserve(seq.size());
        for (const auto& p : seq) signs.push_back(p.sign_at(x));
        return count_changes(signs);
    }
    int variations_neg_inf() const {
        std::vector<int> signs;
        for (const auto& p : seq) signs.push_back(p.sign_at_neg_inf());
        return count_changes(signs);
    }
    int variations_pos_inf() const {
        std::vector<int> signs;
        for (const auto& p : seq) signs.push_back(p.sign_at_pos_inf());
        return count_changes(signs);
    }

    // Number of distinct real roots in (a, b].
    int count_half_open(const Q& a, const Q& b) const { return variations_at(a) - variations_at(b); }
    int count_all() const { return variations_neg_inf() - variations_pos_inf(); }
    // Distinct real roots in (-inf, b].
    int count_up_to(const Q& b) const { return variations_neg_inf() - variations_at(b); }
};

// Strict upper bound on the absolute value of all complex roots.
inline Q cauchy_root_bound(const ZPoly& p) {
    assert(p.degree() >= 1);
    Z m(0);
    for (int i = 0; i < p.degree(); ++i) {
        Z a = abs(p.c[i]);
        if (a > m) m = a;
    }
    Q b = Q(m) / Q(abs(p.lc()));
    return b + 1;
}

// Isolating intervals for all distinct real roots of a squarefree p,
// sorted ascending. Point intervals mark exact rational roots; otherwise
// endpoints are non-roots with opposite signs.
inline std::vector<QInterval> isolate_real_roots(const ZPoly& p_in) {
    std::vector<QInterval> out;
    ZPoly p = primitive_part(p_in);
    if (p.degree() < 1) return out;
    if (p.degree() == 1) {
        Q r(-p.c[0], p.c[1]);
        r.canonicalize();
        out.push_back(QInterval::point(r));
        return out;
    }
    SturmChain chain(p);
    Q bound = cauchy_root_bound(p);

    struct Seg {
        Q lo, hi;
        int count;
    };
    std::vector<Seg> stack;
    {
        int total = chain.count_half_open(-bound, bound);
        if (total > 0) stack.push_back({-bound, bound, total});
    }
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        if (s.count == 1 && p.sign_at(s.lo) != 0 && p.sign_at(s.lo) * p.sign_at(s.hi) < 0) {
            out.push_back(QInterval(s.lo, s.hi));
            continue;
        }
        Q mid = (s.lo + s.hi) / 2;
        if (p.sign_at(mid) == 0) {
            out.push_back(QInterval::point(mid));
            // find a strip around mid containing no other root
            Q w = (s.hi - s.lo) / 4;
            while (chain.count_half_open(mid - w, mid + w) != 1 || p.sign_at(mid - w) == 0 ||
                   p.sign_at(mid + w) == 0)
                w /= 2;
            int left = chain.count_half_open(s.lo, mid - w);
            int right = chain.count_half_open(mid + w, s.hi);
            if (left > 0) stack.push_back({s.lo, mid - w, left});
            if (right > 0) stack.push_back({mid + w, s.hi, right});
            continue;
        }
        int left = chain.count_half_open(s.lo, mid);
        int right = s.count - left;
        if (left > 0) stack.push_back({s.lo, mid, left});
        if (right > 0) stack.push_back({mid, s.hi, right});
    }
    std::sort(out.begin(), out.end(), [](const QInterval& a, const QInterval& b) { return a.lo < b.lo; });
    return out;
}

// ---------------------------------------------------------------------------
// Resultants, power sums, composed products

// x^deg(p) * p(1/x); requires p(0) != 0 to preserve the degree.
inline ZPoly reversal(const ZPoly& p) {
    std::vector<Z> r(p.c.rbegin(), p.c.rend());
    return ZPoly(std::move(r));
}

// Power sums s_1..s_count of the roots of a monic integer polynomial,
// via the Newton recurrences.
inline std::vector<Z> power_sums(const ZPoly& p, int count) {
    assert(p.is_monic());
    int d = p.degree();
    std::vector<Z> s(count + 1, Z(0));
    for (int j = 1; j <= count; ++j) {
        Z acc(0);
        if (j <= d) {
            for (int i = 1; i < j; ++i) acc += p.c[d - i] * s[j - i];
            acc += Z(j) * p.c[d - j];
        } else {
            for (int i = 1; i <= d; ++i) acc += p.c[d - i] * s[j - i];
        }
        s[j] = -acc;
    }
    s.erase(s.begin());
    return s;
}

// Monic polynomial of degree d with prescribed power sums s_1..s_d.
// Divisions in the Newton recurrence must be exact.
inline ZPoly poly_from_power_sums(const std::vector<Z>& s, int d) {
    std::vector<Z> e(d + 1, Z(0));
    e[0] = 1;
    for (int j = 1; j <= d; ++j) {
        Z acc(0);
        for (int i = 1; i <= j; ++i) {
            Z term = e[j - i] * s[i - 1];
            if (i % 2 == 0) acc -= term;
            else acc += term;
        }
        Z q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), acc.get_mpz_t(), Z(j).get_mpz_t());
        if (r != 0) fail(errc::bad_parameter, "power sums are not those of an integer polynomial");
        e[j] = q;
    }
    std::vector<Z> coeffs(d + 1);
    for (int j = 0; j <= d; ++j) coeffs[d - j] = (j % 2 == 0) ? e[j] : Z(-e[j]);
    return ZPoly(std::move(coeffs));
}

// Monic polynomial whose roots are all products a*b over roots a of p and
// b of q (with multiplicity). Power-sum identity: s_k(p∘q) = s_k(p)s_k(q).
inline ZPoly composed_product(const ZPoly& p, const ZPoly& q) {
    assert(p.is_monic() && q.is_monic());
    int d = p.degree() * q.degree();
    if (d == 0) return ZPoly({Z(1)});
    std::vector<Z> sp = power_sums(p, d), sq = power_sums(q, d);
    std::vector<Z> s(d);
    for (int i = 0; i < d; ++i) s[i] = sp[i] * sq[i];
    return poly_from_power_sums(s, d);
}

// Divide out all (x-1) factors; returns the quotient and sets `mult`.
inline ZPoly deflate_at_one(ZPoly p, int& mult) {
    mult = 0;
    while (!p.is_zero() && p.eval_z(1) == 0) {
        // synthetic division by (x - 1)
        std::vector<Z> q(p.c.size() - 1);
        Z carry(0);
        for (int i = p.degree(); i >= 1; --i) {
            carry += p.c[i];
            q[i - 1] = carry;
        }
        p = ZPoly(std::move(q));
        ++mult;
    }
    return p;
}

inline std::string ZPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
        const Z& a = c[i];
        if (a == 0) continue;
        if (!s.empty()) s += (sign_of(a) > 0) ? " + " : " - ";
        else if (sign_of(a) < 0) s += "-";
        Z m = abs(a);
        bool need_coeff = (m != 1) || i == 0;
        if (need_coeff) s += m.get_str();
        if (i > 0) {
            if (need_coeff) s += "*";
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

} // namespace nakamura
