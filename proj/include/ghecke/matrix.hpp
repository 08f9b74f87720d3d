#pragma once

#include "ghecke/rational.hpp"

namespace ghecke {

// Dense matrix over exact rationals, row-major.
class Mat {
  public:
    Mat() = default;
    Mat(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols) {}

    static Mat identity(int n);
    static Mat zeros(int rows, int cols) { return Mat(rows, cols); }
    static Mat from_rows(const std::vector<std::vector<Rat>>& rows);
    static Mat col_vector(const std::vector<Rat>& v);
    static Mat scalar(int n, const Rat& x);

    int rows() const { return r_; }
    int cols() const { return c_; }

    Rat& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    const Rat& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

    Mat operator*(const Mat& o) const;
    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator-() const;
    Mat scaled(const Rat& s) const;
    bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat transpose() const;
    Mat kron(const Mat& o) const;
    Mat power(long e) const;

    bool is_zero() const;
    bool is_identity() const;
    // True if the matrix equals x * Id; stores x when requested.
    bool is_scalar(Rat* x = nullptr) const;

    Rat trace() const;
    std::vector<Rat> row(int i) const;
    std::vector<Rat> col(int j) const;
    void set_col(int j, const std::vector<Rat>& v);
    std::vector<Rat> apply(const std::vector<Rat>& v) const;  // M v
    std::vector<Rat> vec() const { return a_; }               // row-major flatten

    Mat hcat(const Mat& o) const;

    std::string str() const;

  private:
    int r_ = 0, c_ = 0;
    std::vector<Rat> a_;
};

// Lexicographically ordered i-subsets of {0..n-1}.
std::vector<std::vector<int>> lex_subsets(int n, int i);

// i-th compound matrix: entry (S,T) = det of the (S,T) minor, subsets in lex order.
Mat compound(const Mat& m, int i);

long binomial(int n, int k);

}  // namespace ghecke
