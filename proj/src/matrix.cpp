#include "ghecke/matrix.hpp"

#include <sstream>

namespace ghecke {

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Mat Mat::scalar(int n, const Rat& x) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = x;
    return m;
}

Mat Mat::from_rows(const std::vector<std::vector<Rat>>& rows) {
    if (rows.empty()) return Mat();
    Mat m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.rows(); ++i) {
        if (static_cast<int>(rows[i].size()) != m.cols())
            throw std::logic_error("ragged rows in Mat::from_rows");
        for (int j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Mat Mat::col_vector(const std::vector<Rat>& v) {
    Mat m(static_cast<int>(v.size()), 1);
    for (int i = 0; i < m.rows(); ++i) m(i, 0) = v[i];
    return m;
}

Mat Mat::operator*(const Mat& o) const {
    if (c_ != o.r_) throw std::logic_error("Mat product shape mismatch");
    Mat out(r_, o.c_);
    for (int i = 0; i < r_; ++i) {
        for (int k = 0; k < c_; ++k) {
            const Rat& x = (*this)(i, k);
            if (sgn(x) == 0) continue;
            for (int j = 0; j < o.c_; ++j) {
                if (sgn(o(k, j)) != 0) out(i, j) += x * o(k, j);
            }
        }
    }
    return out;
}

Mat Mat::operator+(const Mat& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::logic_error("Mat sum shape mismatch");
    Mat out(r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] + o.a_[i];
    return out;
}

Mat Mat::operator-(const Mat& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::logic_error("Mat difference shape mismatch");
    Mat out(r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] - o.a_[i];
    return out;
}

Mat Mat::operator-() const {
    Mat out(r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = -a_[i];
    return out;
}

Mat Mat::scaled(const Rat& s) const {
    Mat out(r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] * s;
    return out;
}

Mat Mat::transpose() const {
    Mat out(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

Mat Mat::kron(const Mat& o) const {
    Mat out(r_ * o.r_, c_ * o.c_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) {
            const Rat& x = (*this)(i, j);
            if (sgn(x) == 0) continue;
            for (int p = 0; p < o.r_; ++p)
                for (int q = 0; q < o.c_; ++q)
                    out(i * o.r_ + p, j * o.c_ + q) = x * o(p, q);
        }
    return out;
}

Mat Mat::power(long e) const {
    if (r_ != c_) throw std::logic_error("Mat::power on non-square");
    Mat acc = identity(r_);
    Mat base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

bool Mat::is_zero() const {
    for (const Rat& x : a_)
        if (sgn(x) != 0) return false;
    return true;
}

bool Mat::is_identity() const {
    if (r_ != c_) return false;
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j)
            if ((*this)(i, j) != Rat(i == j ? 1 : 0)) return false;
    return true;
}

bool Mat::is_scalar(Rat* x) const {
    if (r_ != c_ || r_ == 0) return false;
    const Rat& d = (*this)(0, 0);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j)
            if ((*this)(i, j) != (i == j ? d : Rat(0))) return false;
    if (x) *x = d;
    return true;
}

Rat Mat::trace() const {
    Rat t = 0;
    for (int i = 0; i < std::min(r_, c_); ++i) t += (*this)(i, i);
    return t;
}

std::vector<Rat> Mat::row(int i) const {
    std::vector<Rat> out(c_);
    for (int j = 0; j < c_; ++j) out[j] = (*this)(i, j);
    return out;
}

std::vector<Rat> Mat::col(int j) const {
    std::vector<Rat> out(r_);
    for (int i = 0; i < r_; ++i) out[i] = (*this)(i, j);
    return out;
}

void Mat::set_col(int j, const std::vector<Rat>& v) {
    for (int i = 0; i < r_; ++i) (*this)(i, j) = v[i];
}

std::vector<Rat> Mat::apply(const std::vector<Rat>& v) const {
    if (static_cast<int>(v.size()) != c_) throw std::logic_error("Mat::apply shape mismatch");
    std::vector<Rat> out(r_);
    for (int i = 0; i < r_; ++i) {
        Rat acc = 0;
        for (int j = 0; j < c_; ++j)
            if (sgn((*this)(i, j)) != 0) acc += (*this)(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

Mat Mat::hcat(const Mat& o) const {
    if (r_ != o.r_) throw std::logic_error("Mat::hcat shape mismatch");
    Mat out(r_, c_ + o.c_);
    for (int i = 0; i < r_; ++i) {
        for (int j = 0; j < c_; ++j) out(i, j) = (*this)(i, j);
        for (int j = 0; j < o.c_; ++j) out(i, c_ + j) = o(i, j);
    }
    return out;
}

std::string Mat::str() const {
    std::ostringstream os;
    for (int i = 0; i < r_; ++i) {
        os << (i == 0 ? "[" : " ");
        for (int j = 0; j < c_; ++j) os << (j ? " " : "[") << rat_str((*this)(i, j));
        os << "]" << (i + 1 == r_ ? "]" : "\n");
    }
    return os.str();
}

std::vector<std::vector<int>> lex_subsets(int n, int i) {
    std::vector<std::vector<int>> out;
    if (i < 0 || i > n) return out;
    std::vector<int> cur(i);
    for (int j = 0; j < i; ++j) cur[j] = j;
    while (true) {
        out.push_back(cur);
        int p = i - 1;
        while (p >= 0 && cur[p] == n - i + p) --p;
        if (p < 0) break;
        ++cur[p];
        for (int q = p + 1; q < i; ++q) cur[q] = cur[q - 1] + 1;
    }
    if (i == 0) out.assign(1, {});
    return out;
}

namespace {
Rat minor_det(const Mat& m, const std::vector<int>& rows, const std::vector<int>& cols) {
    // Laplace along the first row; subsets here are tiny (|S| <= rank of V).
    size_t k = rows.size();
    if (k == 0) return 1;
    if (k == 1) return m(rows[0], cols[0]);
    Rat acc = 0;
    std::vector<int> sub_rows(rows.begin() + 1, rows.end());
    for (size_t j = 0; j < k; ++j) {
        if (sgn(m(rows[0], cols[j])) == 0) continue;
        std::vector<int> sub_cols;
        for (size_t q = 0; q < k; ++q)
            if (q != j) sub_cols.push_back(cols[q]);
        Rat term = m(rows[0], cols[j]) * minor_det(m, sub_rows, sub_cols);
        if (j % 2) acc -= term;
        else acc += term;
    }
    return acc;
}
}  // namespace

Mat compound(const Mat& m, int i) {
    if (m.rows() != m.cols()) throw std::logic_error("compound of non-square matrix");
    auto subs = lex_subsets(m.rows(), i);
    Mat out(static_cast<int>(subs.size()), static_cast<int>(subs.size()));
    for (size_t a = 0; a < subs.size(); ++a)
        for (size_t b = 0; b < subs.size(); ++b) out(static_cast<int>(a), static_cast<int>(b)) = minor_det(m, subs[a], subs[b]);
    return out;
}

long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long acc = 1;
    for (int i = 0; i < k; ++i) acc = acc * (n - i) / (i + 1);
    return acc;
}

}  // namespace ghecke
