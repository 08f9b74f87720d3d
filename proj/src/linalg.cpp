#include "ghecke/linalg.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ghecke {

namespace {

// Scale a row to coprime integers; leaves zero rows untouched.
void normalize_row(std::vector<Rat>& row) {
    mpz_class den_lcm = 1;
    for (const Rat& x : row)
        if (sgn(x) != 0) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den().get_mpz_t());
    mpz_class num_gcd = 0;
    for (Rat& x : row) {
        if (sgn(x) == 0) continue;
        x *= Rat(den_lcm);
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), x.get_num().get_mpz_t());
    }
    if (num_gcd > 1) {
        Rat g(num_gcd);
        for (Rat& x : row)
            if (sgn(x) != 0) x /= g;
    }
}

mpz_class abs_num(const Rat& x) {
    mpz_class a = x.get_num();
    if (a < 0) a = -a;
    return a;
}

// v <- piv[c]*v - v[c]*piv, fraction-free cross-multiplication. Scratch
// values are reused so the inner loop does not allocate.
void eliminate_into(std::vector<Rat>& v, const std::vector<Rat>& piv, long c) {
    static thread_local mpq_class t1, t2;
    Rat a = piv[c], b = v[c];
    for (size_t j = 0; j < v.size(); ++j) {
        if (sgn(v[j]) == 0) {
            if (sgn(piv[j]) != 0) {
                mpq_mul(t2.get_mpq_t(), b.get_mpq_t(), piv[j].get_mpq_t());
                mpq_neg(v[j].get_mpq_t(), t2.get_mpq_t());
            }
            continue;
        }
        mpq_mul(t1.get_mpq_t(), a.get_mpq_t(), v[j].get_mpq_t());
        if (sgn(piv[j]) != 0) {
            mpq_mul(t2.get_mpq_t(), b.get_mpq_t(), piv[j].get_mpq_t());
            mpq_sub(v[j].get_mpq_t(), t1.get_mpq_t(), t2.get_mpq_t());
        } else {
            mpq_set(v[j].get_mpq_t(), t1.get_mpq_t());
        }
    }
}

}  // namespace

Echelon echelon_ff(const Mat& a, Exec ex) {
    int nrows = a.rows(), ncols = a.cols();
    std::vector<std::vector<Rat>> rows(nrows);
    for (int i = 0; i < nrows; ++i) {
        rows[i] = a.row(i);
        normalize_row(rows[i]);
    }

    Echelon e;
    e.cols = ncols;
    int top = 0;
    for (int c = 0; c < ncols && top < nrows; ++c) {
        // smallest-magnitude nonzero pivot, ties by row index
        int piv = -1;
        mpz_class best;
        for (int i = top; i < nrows; ++i) {
            if (sgn(rows[i][c]) == 0) continue;
            mpz_class m = abs_num(rows[i][c]);
            if (piv < 0 || m < best) {
                piv = i;
                best = m;
            }
        }
        if (piv < 0) continue;
        std::swap(rows[top], rows[piv]);

        const std::vector<Rat>& pr = rows[top];
        // Row updates only amortize the fork overhead when the rows are wide;
        // thin exact eliminations stay serial even under Exec::parallel.
        bool parallel = ex == Exec::parallel && ncols >= 256 && nrows - top > 16;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
#endif
        for (int i = top + 1; i < nrows; ++i) {
            if (sgn(rows[i][c]) == 0) continue;
            eliminate_into(rows[i], pr, c);
            normalize_row(rows[i]);
        }
        (void)parallel;
        e.pivot_col.push_back(c);
        ++top;
    }
    e.rank = top;
    e.R = Mat(top, ncols);
    for (int i = 0; i < top; ++i) {
        if (sgn(rows[i][e.pivot_col[i]]) < 0)
            for (Rat& x : rows[i]) x = -x;
        for (int j = 0; j < ncols; ++j) e.R(i, j) = rows[i][j];
    }
    return e;
}

int rank_of(const Mat& a, Exec ex) {
    return echelon_ff(a, ex).rank;
}

Mat nullspace(const Mat& a, Exec ex) {
    Echelon e = echelon_ff(a, ex);
    int n = a.cols();
    std::vector<bool> is_pivot(n, false);
    for (int c : e.pivot_col) is_pivot[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < n; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);

    Mat ns(n, static_cast<int>(free_cols.size()));
    for (size_t fi = 0; fi < free_cols.size(); ++fi) {
        std::vector<Rat> x(n);
        x[free_cols[fi]] = 1;
        for (int r = e.rank - 1; r >= 0; --r) {
            int pc = e.pivot_col[r];
            Rat acc = 0;
            for (int j = pc + 1; j < n; ++j)
                if (sgn(e.R(r, j)) != 0) acc += e.R(r, j) * x[j];
            x[pc] = -acc / e.R(r, pc);
        }
        for (int i = 0; i < n; ++i) ns(i, static_cast<int>(fi)) = x[i];
    }
    return ns;
}

Rat det(const Mat& a) {
    if (a.rows() != a.cols()) throw std::logic_error("det of non-square matrix");
    int n = a.rows();
    if (n == 0) return 1;
    // Plain rational elimination with column pivoting; sizes here are small.
    Mat m = a;
    Rat d = 1;
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (sgn(m(i, c)) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) return 0;
        if (piv != c) {
            for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
            d = -d;
        }
        d *= m(c, c);
        for (int i = c + 1; i < n; ++i) {
            if (sgn(m(i, c)) == 0) continue;
            Rat f = m(i, c) / m(c, c);
            for (int j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return d;
}

std::optional<Mat> inverse(const Mat& a) {
    if (a.rows() != a.cols()) throw std::logic_error("inverse of non-square matrix");
    int n = a.rows();
    Mat m = a.hcat(Mat::identity(n));
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (sgn(m(i, c)) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) return std::nullopt;
        if (piv != c)
            for (int j = 0; j < 2 * n; ++j) std::swap(m(piv, j), m(c, j));
        Rat p = m(c, c);
        for (int j = 0; j < 2 * n; ++j) m(c, j) /= p;
        for (int i = 0; i < n; ++i) {
            if (i == c || sgn(m(i, c)) == 0) continue;
            Rat f = m(i, c);
            for (int j = 0; j < 2 * n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    Mat out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = m(i, n + j);
    return out;
}

std::optional<std::vector<Rat>> solve(const Mat& a, const std::vector<Rat>& b, Exec ex) {
    if (static_cast<int>(b.size()) != a.rows()) throw std::logic_error("solve shape mismatch");
    Mat aug = a.hcat(Mat::col_vector(b));
    Echelon e = echelon_ff(aug, ex);
    for (int c : e.pivot_col)
        if (c == a.cols()) return std::nullopt;  // inconsistent
    std::vector<Rat> x(a.cols());
    for (int r = e.rank - 1; r >= 0; --r) {
        int pc = e.pivot_col[r];
        Rat acc = e.R(r, a.cols());
        for (int j = pc + 1; j < a.cols(); ++j)
            if (sgn(e.R(r, j)) != 0) acc -= e.R(r, j) * x[j];
        x[pc] = acc / e.R(r, pc);
    }
    return x;
}

std::vector<Rat> char_poly(const Mat& a) {
    if (a.rows() != a.cols()) throw std::logic_error("char_poly of non-square matrix");
    int n = a.rows();
    std::vector<Rat> c(n + 1);
    c[n] = 1;
    Mat m = Mat::zeros(n, n);
    for (int k = 1; k <= n; ++k) {
        // M_k = A (M_{k-1} + c_{n-k+1} I)
        Mat t = m;
        for (int i = 0; i < n; ++i) t(i, i) += c[n - k + 1];
        m = a * t;
        c[n - k] = -m.trace() / k;
    }
    return c;
}

SpanSolver::SpanSolver(Mat basis, Exec ex) : basis_(std::move(basis)) {
    int d = basis_.cols();
    if (d == 0) return;
    Echelon e = echelon_ff(basis_.transpose(), ex);
    if (e.rank != d) throw std::logic_error("SpanSolver: basis columns are dependent");
    rows_ = e.pivot_col;  // independent row indices of the basis matrix
    Mat block(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) block(i, j) = basis_(rows_[i], j);
    auto inv = inverse(block);
    if (!inv) throw std::logic_error("SpanSolver: pivot block singular");
    inv_ = std::move(*inv);
}

std::optional<std::vector<Rat>> SpanSolver::coords(const std::vector<Rat>& v) const {
    if (static_cast<int>(v.size()) != basis_.rows()) throw std::logic_error("SpanSolver shape mismatch");
    int d = basis_.cols();
    if (d == 0) {
        for (const Rat& x : v)
            if (sgn(x) != 0) return std::nullopt;
        return std::vector<Rat>{};
    }
    std::vector<Rat> rhs(d);
    for (int i = 0; i < d; ++i) rhs[i] = v[rows_[i]];
    std::vector<Rat> c = inv_.apply(rhs);
    // full consistency check: v must equal basis * c on every coordinate
    for (int i = 0; i < basis_.rows(); ++i) {
        Rat acc = 0;
        for (int j = 0; j < d; ++j)
            if (sgn(basis_(i, j)) != 0) acc += basis_(i, j) * c[j];
        if (acc != v[i]) return std::nullopt;
    }
    return c;
}

bool RowSpace::insert(std::vector<Rat> v) {
    if (static_cast<long>(v.size()) != cols_) throw std::logic_error("RowSpace shape mismatch");
    for (const auto& [pc, row] : rows_) {
        if (sgn(v[pc]) == 0) continue;
        Rat a = row[pc], b = v[pc];
        for (long j = 0; j < cols_; ++j) v[j] = a * v[j] - b * row[j];
    }
    long piv = -1;
    for (long j = 0; j < cols_; ++j)
        if (sgn(v[j]) != 0) {
            piv = j;
            break;
        }
    if (piv < 0) return false;
    normalize_row(v);
    if (sgn(v[piv]) < 0)
        for (Rat& x : v) x = -x;
    rows_.emplace_back(piv, std::move(v));
    // keep rows ordered by pivot so reduction stays one-pass
    std::sort(rows_.begin(), rows_.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    return true;
}

bool RowSpace::contains(std::vector<Rat> v) const {
    for (const auto& [pc, row] : rows_) {
        if (sgn(v[pc]) == 0) continue;
        Rat a = row[pc], b = v[pc];
        for (long j = 0; j < cols_; ++j) v[j] = a * v[j] - b * row[j];
    }
    for (const Rat& x : v)
        if (sgn(x) != 0) return false;
    return true;
}

}  // namespace ghecke
