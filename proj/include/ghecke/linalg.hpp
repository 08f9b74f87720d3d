#pragma once

#include "ghecke/matrix.hpp"

#include <optional>

namespace ghecke {

enum class Exec { serial, parallel };

// Row echelon form computed fraction-free: rows are scaled to integers,
// updates use cross-multiplication followed by a gcd strip, and the pivot in
// each column is the smallest-magnitude nonzero entry (deterministic ties by
// row index). Only the nonzero rows are kept.
struct Echelon {
    Mat R;
    std::vector<int> pivot_col;  // one per kept row, strictly increasing
    int rank = 0;
    int cols = 0;
};

Echelon echelon_ff(const Mat& a, Exec ex = Exec::serial);
int rank_of(const Mat& a, Exec ex = Exec::serial);
Mat nullspace(const Mat& a, Exec ex = Exec::serial);  // columns form a basis
Rat det(const Mat& a);
std::optional<Mat> inverse(const Mat& a);
std::optional<std::vector<Rat>> solve(const Mat& a, const std::vector<Rat>& b, Exec ex = Exec::serial);

// Monic characteristic polynomial coefficients c[0..n] of a square matrix,
// det(xI - A) = sum c[i] x^i, via the Faddeev-LeVerrier recursion.
std::vector<Rat> char_poly(const Mat& a);

// Repeated coordinate extraction against a fixed independent column span:
// picks an invertible pivot-row block once and verifies full consistency on
// each solve, so membership failures are detected exactly.
class SpanSolver {
  public:
    SpanSolver() = default;
    explicit SpanSolver(Mat basis, Exec ex = Exec::serial);
    int dim() const { return basis_.cols(); }
    int ambient() const { return basis_.rows(); }
    std::optional<std::vector<Rat>> coords(const std::vector<Rat>& v) const;

  private:
    Mat basis_;
    std::vector<int> rows_;
    Mat inv_;
};

// Incremental fraction-free row space, used to filter spanning candidates.
class RowSpace {
  public:
    explicit RowSpace(long cols) : cols_(cols) {}
    int rank() const { return static_cast<int>(rows_.size()); }
    bool insert(std::vector<Rat> v);          // true if the rank grew
    bool contains(std::vector<Rat> v) const;  // membership test

  private:
    long cols_;
    std::vector<std::pair<long, std::vector<Rat>>> rows_;  // (pivot position, integer row)
};

}  // namespace ghecke
