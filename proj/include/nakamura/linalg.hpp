#pragma once

#include <functional>
#include <numeric>
#include <vector>

#include "int_poly.hpp"
#include "numeric.hpp"

namespace nakamura {

// Dense integer matrix, row-major.
struct ZMatrix {
    int rows = 0, cols = 0;
    std::vector<Z> a;

    ZMatrix() = default;
    ZMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Z(0)) {}

    Z& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Z& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    bool operator==(const ZMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

    static ZMatrix identity(int n) {
        ZMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    bool is_zero() const {
        for (const auto& v : a)
            if (v != 0) return false;
        return true;
    }

    Z trace() const {
        Z t(0);
        for (int i = 0; i < std::min(rows, cols); ++i) t += at(i, i);
        return t;
    }

    friend ZMatrix operator*(const ZMatrix& x, const ZMatrix& y) {
        assert(x.cols == y.rows);
        ZMatrix r(x.rows, y.cols);
        for (int i = 0; i < x.rows; ++i)
            for (int k = 0; k < x.cols; ++k) {
                const Z& v = x.at(i, k);
                if (v == 0) continue;
                for (int j = 0; j < y.cols; ++j) r.at(i, j) += v * y.at(k, j);
            }
        return r;
    }
    friend ZMatrix operator+(const ZMatrix& x, const ZMatrix& y) {
        assert(x.rows == y.rows && x.cols == y.cols);
        ZMatrix r = x;
        for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
        return r;
    }
    friend ZMatrix operator-(const ZMatrix& x, const ZMatrix& y) {
        assert(x.rows == y.rows && x.cols == y.cols);
        ZMatrix r = x;
        for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
        return r;
    }
    friend ZMatrix operator*(const Z& s, const ZMatrix& y) {
        ZMatrix r = y;
        for (auto& v : r.a) v *= s;
        return r;
    }
};

inline ZMatrix block_diag(const ZMatrix& x, const ZMatrix& y) {
    ZMatrix r(x.rows + y.rows, x.cols + y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r.at(i, j) = x.at(i, j);
    for (int i = 0; i < y.rows; ++i)
        for (int j = 0; j < y.cols; ++j) r.at(x.rows + i, x.cols + j) = y.at(i, j);
    return r;
}

inline ZMatrix kronecker(const ZMatrix& x, const ZMatrix& y) {
    ZMatrix r(x.rows * y.rows, x.cols * y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) {
            if (x.at(i, j) == 0) continue;
            for (int k = 0; k < y.rows; ++k)
                for (int l = 0; l < y.cols; ++l)
                    r.at(i * y.rows + k, j * y.cols + l) = x.at(i, j) * y.at(k, l);
        }
    return r;
}

// Fraction-free (Bareiss) determinant.
inline Z det_bareiss(ZMatrix m) {
    assert(m.rows == m.cols);
    int n = m.rows;
    if (n == 0) return Z(1);
    Z prev(1);
    int sign = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) {
                    p = i;
                    break;
                }
            if (p < 0) return Z(0);
            for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Z t = m.at(k, k) * m.at(i, j) - m.at(i, k) * m.at(k, j);
                mpz_divexact(m.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = m.at(k, k);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : Z(-m.at(n - 1, n - 1));
}

// Rank by fraction-free elimination with full pivoting.
inline int rank_bareiss(ZMatrix m) {
    int r = 0;
    Z prev(1);
    while (r < m.rows && r < m.cols) {
        int pi = -1, pj = -1;
        for (int i = r; i < m.rows && pi < 0; ++i)
            for (int j = r; j < m.cols; ++j)
                if (m.at(i, j) != 0) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi < 0) break;
        if (pi != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(r, j), m.at(pi, j));
        if (pj != r)
            for (int i = 0; i < m.rows; ++i) std::swap(m.at(i, r), m.at(i, pj));
        for (int i = r + 1; i < m.rows; ++i)
            for (int j = r + 1; j < m.cols; ++j) {
                Z t = m.at(r, r) * m.at(i, j) - m.at(i, r) * m.at(r, j);
                mpz_divexact(m.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        for (int i = r + 1; i < m.rows; ++i) m.at(i, r) = 0;
        prev = m.at(r, r);
        ++r;
    }
    return r;
}

// Characteristic polynomial by the Faddeev-LeVerrier recurrence; the
// divisions by k are exact over the integers.
inline ZPoly charpoly(const ZMatrix& m) {
    assert(m.rows == m.cols);
    int n = m.rows;
    std::vector<Z> c(n + 1, Z(0));
    c[n] = 1;
    ZMatrix acc = ZMatrix::identity(n);
    for (int k = 1; k <= n; ++k) {
        acc = m * acc;
        Z t = acc.trace();
        Z ck;
        mpz_divexact(ck.get_mpz_t(), t.get_mpz_t(), Z(k).get_mpz_t());
        ck = -ck;
        c[n - k] = ck;
        if (k < n)
            for (int i = 0; i < n; ++i) acc.at(i, i) += ck;
    }
    return ZPoly(std::move(c));
}

inline ZMatrix poly_at_matrix(const ZPoly& p, const ZMatrix& m) {
    assert(m.rows == m.cols);
    ZMatrix acc(m.rows, m.cols);
    for (int i = p.degree(); i >= 0; --i) {
        acc = m * acc;
        if (p.c[i] != 0)
            for (int d = 0; d < m.rows; ++d) acc.at(d, d) += p.c[i];
    }
    return acc;
}

inline std::vector<std::vector<int>> k_subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(k);
    std::iota(cur.begin(), cur.end(), 0);
    if (k > n) return out;
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    if (k == 0) out.assign(1, {});
    return out;
}

// k-th compound (exterior power) matrix: entries are k x k minors,
// subsets in lexicographic order.
inline ZMatrix compound_matrix(const ZMatrix& m, int k) {
    assert(m.rows == m.cols);
    auto subs = k_subsets(m.rows, k);
    int d = static_cast<int>(subs.size());
    ZMatrix r(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            ZMatrix minor(k, k);
            for (int a = 0; a < k; ++a)
                for (int b = 0; b < k; ++b) minor.at(a, b) = m.at(subs[i][a], subs[j][b]);
            r.at(i, j) = det_bareiss(std::move(minor));
        }
    return r;
}

// Characteristic polynomial of the k-th exterior power of m, computed
// from traces of matrix powers (never materializes the compound):
// the j-th power sum of Lambda^k(m) is e_k(mu_1^j..mu_n^j), recovered
// from tr(m^(j*i)) by Newton's identities.
inline ZPoly exterior_charpoly(const ZMatrix& m, int k) {
    assert(m.rows == m.cols);
    int n = m.rows;
    assert(0 <= k && k <= n);
    if (k == 0) return ZPoly::x_minus(Z(1));
    Z dim_z = z_binom(n, k);
    int dim = static_cast<int>(dim_z.get_ui());
    std::vector<Z> tr(static_cast<size_t>(k) * dim + 1, Z(0));
    tr[0] = n;
    ZMatrix pw = ZMatrix::identity(n);
    for (int j = 1; j <= k * dim; ++j) {
        pw = pw * m;
        tr[j] = pw.trace();
    }
    std::vector<Z> s(dim);
    for (int j = 1; j <= dim; ++j) {
        // e_i over the values mu^j, i = 0..k
        std::vector<Q> e(k + 1, Q(0));
        e[0] = 1;
        for (int i = 1; i <= k; ++i) {
            Q acc(0);
            for (int l = 1; l <= i; ++l) {
                Q term = e[i - l] * Q(tr[static_cast<size_t>(l) * j]);
                if (l % 2 == 0) acc -= term;
                else acc += term;
            }
            e[i] = acc / i;
        }
        assert(e[k].get_den() == 1);
        s[j - 1] = e[k].get_num();
    }
    return poly_from_power_sums(s, dim);
}

// Rank of a sparse integer matrix via connected components of its
// support graph; each component is eliminated densely. Exact.
using SparseCol = std::vector<std::pair<int, Z>>; // (row, value)

inline int sparse_rank(int num_rows, const std::vector<SparseCol>& cols) {
    int n_cols = static_cast<int>(cols.size());
    // union-find over rows [0,num_rows) and cols [num_rows, num_rows+n_cols)
    std::vector<int> parent(num_rows + n_cols);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int c = 0; c < n_cols; ++c)
        for (const auto& [r, v] : cols[c])
            if (v != 0) parent[find(num_rows + c)] = find(r);

    std::vector<std::vector<int>> comp_cols(num_rows + n_cols);
    for (int c = 0; c < n_cols; ++c)
        if (!cols[c].empty()) comp_cols[find(num_rows + c)].push_back(c);

    int rank = 0;
    for (const auto& group : comp_cols) {
        if (group.empty()) continue;
        std::vector<int> rows_here;
        for (int c : group)
            for (const auto& [r, v] : cols[c])
                if (v != 0) rows_here.push_back(r);
        std::sort(rows_here.begin(), rows_here.end());
        rows_here.erase(std::unique(rows_here.begin(), rows_here.end()), rows_here.end());
        ZMatrix sub(static_cast<int>(rows_here.size()), static_cast<int>(group.size()));
        for (int jc = 0; jc < static_cast<int>(group.size()); ++jc)
            for (const auto& [r, v] : cols[group[jc]]) {
                int ir = static_cast<int>(std::lower_bound(rows_here.begin(), rows_here.end(), r) -
                                          rows_here.begin());
                sub.at(ir, jc) = v;
            }
        rank += rank_bareiss(std::move(sub));
    }
    return rank;
}

// Rational nullspace basis of an integer matrix (solutions of U x = 0).
inline std::vector<std::vector<Q>> q_nullspace(ZMatrix u) {
    int rows = u.rows, cols = u.cols;
    // Gauss-Jordan over Q on an integer matrix, tracking pivot columns.
    std::vector<std::vector<Q>> m(rows, std::vector<Q>(cols));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m[i][j] = Q(u.at(i, j));
    std::vector<int> pivot_col;
    int r = 0;
    for (int j = 0; j < cols && r < rows; ++j) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (sign_of(m[i][j]) != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(m[p], m[r]);
        Q inv = Q(1) / m[r][j];
        for (int jj = j; jj < cols; ++jj) m[r][jj] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || sign_of(m[i][j]) == 0) continue;
            Q f = m[i][j];
            for (int jj = j; jj < cols; ++jj) m[i][jj] -= f * m[r][jj];
        }
        pivot_col.push_back(j);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (int j : pivot_col) is_pivot[j] = true;
    std::vector<std::vector<Q>> basis;
    for (int j = 0; j < cols; ++j) {
        if (is_pivot[j]) continue;
        std::vector<Q> v(cols, Q(0));
        v[j] = 1;
        for (int i = 0; i < static_cast<int>(pivot_col.size()); ++i) v[pivot_col[i]] = -m[i][j];
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace nakamura
