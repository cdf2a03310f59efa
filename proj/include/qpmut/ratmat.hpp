#pragma once

#include <optional>
#include <vector>

#include "qpmut/rational.hpp"

namespace qpmut {

// Dense exact-rational matrix.  Throughout the library linear maps follow
// the row-vector convention: a map f: V -> W with dim V = m, dim W = n is an
// m x n matrix F acting by v |-> v * F, and "f then g" is the product F * G.
// All eliminations pick pivots deterministically (leftmost column, first
// usable row), so every basis this module produces is a pure function of its
// input — a property the serialization and splitting contracts rely on.
class Mat {
public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols) {}

  static Mat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rat& at(int r, int c) { return a_[std::size_t(r) * cols_ + c]; }
  const Rat& at(int r, int c) const { return a_[std::size_t(r) * cols_ + c]; }

  bool is_zero() const;
  bool operator==(const Mat& o) const;
  bool operator!=(const Mat& o) const { return !(*this == o); }

private:
  int rows_, cols_;
  std::vector<Rat> a_;
};

Mat operator*(const Mat& a, const Mat& b);
Mat operator+(const Mat& a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);
Mat operator-(const Mat& a);
Mat scale(const Rat& c, const Mat& a);
Mat transpose(const Mat& a);

// Stack blocks: hstack([A B]), vstack([A; B]).  Empty dimensions are fine.
Mat hstack(const std::vector<Mat>& blocks);
Mat vstack(const std::vector<Mat>& blocks);
Mat submatrix_rows(const Mat& a, int first, int count);
Mat submatrix_cols(const Mat& a, int first, int count);

struct Rref {
  Mat r;                        // reduced row-echelon form
  std::vector<int> pivot_cols;  // ascending
  int rank = 0;
};

// Deterministic reduced row-echelon form (pivot = first nonzero entry in the
// leftmost unfinished column, rows kept in order).
Rref rref(Mat m);

int rank(const Mat& m);

// Echelonized basis of the row space of F, as rows.
Mat row_space(const Mat& f);

// Echelonized basis of { v : v * F = 0 }, as rows (the kernel of the map F
// in row-vector convention).  Basis vectors are ordered by ascending free
// coordinate; each has a 1 in its free coordinate.
Mat left_nullspace(const Mat& f);

// Solve X * F = B for X (each row of B independently).  Returns std::nullopt
// if any row is not in the row space of F.  When F has full row rank the
// solution is unique; otherwise the deterministic particular solution with
// zeros in the non-pivot coordinates is returned.
std::optional<Mat> solve_left(const Mat& f, const Mat& b);

// Coordinates of the rows of B in the row basis U (requires span(B) within
// span(U)); convenience wrapper around solve_left.
Mat coords_in_rows(const Mat& basis, const Mat& b);

// Basis (rows) of a complement of span(U) inside span(V), built greedily
// from the rows of V in order (pass `reverse_candidates` to scan V's rows
// last-to-first; this is the alternate deterministic splitting strategy).
// Precondition: span(U) is contained in span(V).
Mat complement_rows(const Mat& u, const Mat& v, bool reverse_candidates = false);

// Inverse of a square invertible matrix (throws QpError "not_invertible").
Mat inverse(const Mat& m);

}  // namespace qpmut
