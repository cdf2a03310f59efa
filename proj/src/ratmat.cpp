#include "qpmut/ratmat.hpp"

#include "qpmut/error.hpp"

namespace qpmut {

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

bool Mat::is_zero() const {
  for (const auto& x : a_)
    if (x != 0) return false;
  return true;
}

bool Mat::operator==(const Mat& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

Mat operator*(const Mat& a, const Mat& b) {
  require(a.cols() == b.rows(), "shape_mismatch", "matrix product shape mismatch");
  Mat c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const Rat& aik = a.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols(); ++j) {
        const Rat& bkj = b.at(k, j);
        if (bkj != 0) c.at(i, j) += aik * bkj;
      }
    }
  return c;
}

Mat operator+(const Mat& a, const Mat& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "shape_mismatch",
          "matrix sum shape mismatch");
  Mat c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j) + b.at(i, j);
  return c;
}

Mat operator-(const Mat& a, const Mat& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "shape_mismatch",
          "matrix difference shape mismatch");
  Mat c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j) - b.at(i, j);
  return c;
}

Mat operator-(const Mat& a) {
  Mat c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c.at(i, j) = -a.at(i, j);
  return c;
}

Mat scale(const Rat& c, const Mat& a) {
  Mat r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.at(i, j) = c * a.at(i, j);
  return r;
}

Mat transpose(const Mat& a) {
  Mat t(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) t.at(j, i) = a.at(i, j);
  return t;
}

Mat hstack(const std::vector<Mat>& blocks) {
  int rows = 0, cols = 0;
  for (const auto& b : blocks) {
    cols += b.cols();
    if (b.rows() > rows) rows = b.rows();
  }
  for (const auto& b : blocks)
    require(b.rows() == rows || b.cols() == 0, "shape_mismatch", "hstack row mismatch");
  Mat m(rows, cols);
  int off = 0;
  for (const auto& b : blocks) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) m.at(i, off + j) = b.at(i, j);
    off += b.cols();
  }
  return m;
}

Mat vstack(const std::vector<Mat>& blocks) {
  int rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    if (b.cols() > cols) cols = b.cols();
  }
  for (const auto& b : blocks)
    require(b.cols() == cols || b.rows() == 0, "shape_mismatch", "vstack col mismatch");
  Mat m(rows, cols);
  int off = 0;
  for (const auto& b : blocks) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) m.at(off + i, j) = b.at(i, j);
    off += b.rows();
  }
  return m;
}

Mat submatrix_rows(const Mat& a, int first, int count) {
  Mat m(count, a.cols());
  for (int i = 0; i < count; ++i)
    for (int j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(first + i, j);
  return m;
}

Mat submatrix_cols(const Mat& a, int first, int count) {
  Mat m(a.rows(), count);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < count; ++j) m.at(i, j) = a.at(i, first + j);
  return m;
}

Rref rref(Mat m) {
  Rref out;
  int lead = 0;
  const int rows = m.rows(), cols = m.cols();
  for (int c = 0; c < cols && lead < rows; ++c) {
    int piv = -1;
    for (int r = lead; r < rows; ++r) {
      if (m.at(r, c) != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != lead) {
      for (int j = 0; j < cols; ++j) std::swap(m.at(piv, j), m.at(lead, j));
    }
    const Rat inv = Rat(1) / m.at(lead, c);
    for (int j = c; j < cols; ++j) m.at(lead, j) *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == lead) continue;
      const Rat f = m.at(r, c);
      if (f == 0) continue;
      for (int j = c; j < cols; ++j) m.at(r, j) -= f * m.at(lead, j);
    }
    out.pivot_cols.push_back(c);
    ++lead;
  }
  out.rank = lead;
  out.r = std::move(m);
  return out;
}

int rank(const Mat& m) { return rref(m).rank; }

Mat row_space(const Mat& f) {
  Rref e = rref(f);
  return submatrix_rows(e.r, 0, e.rank);
}

Mat left_nullspace(const Mat& f) {
  // v * F = 0  <=>  F^T * v^T = 0: compute the standard nullspace of F^T.
  Rref e = rref(transpose(f));
  const int n = f.rows();
  std::vector<bool> is_pivot(n, false);
  for (int c : e.pivot_cols) is_pivot[c] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < n; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Mat basis(int(free_cols.size()), n);
  for (int b = 0; b < int(free_cols.size()); ++b) {
    const int fc = free_cols[b];
    basis.at(b, fc) = 1;
    for (int p = 0; p < e.rank; ++p) basis.at(b, e.pivot_cols[p]) = -e.r.at(p, fc);
  }
  return basis;
}

std::optional<Mat> solve_left(const Mat& f, const Mat& b) {
  require(f.cols() == b.cols(), "shape_mismatch", "solve_left shape mismatch");
  // X * F = B  <=>  F^T * X^T = B^T; eliminate on [F^T | B^T].
  Mat aug = hstack({transpose(f), transpose(b)});
  Rref e = rref(aug);
  const int n = f.rows();
  Mat xt(n, b.rows());
  for (int p = 0; p < e.rank; ++p) {
    const int c = e.pivot_cols[p];
    if (c >= n) return std::nullopt;  // pivot in the right block: inconsistent
    for (int j = 0; j < b.rows(); ++j) xt.at(c, j) = e.r.at(p, n + j);
  }
  return transpose(xt);
}

Mat coords_in_rows(const Mat& basis, const Mat& b) {
  auto x = solve_left(basis, b);
  require(x.has_value(), "not_in_span", "vector not in the span of the given basis");
  return *x;
}

Mat complement_rows(const Mat& u, const Mat& v, bool reverse_candidates) {
  require(u.cols() == v.cols() || u.rows() == 0 || v.rows() == 0, "shape_mismatch",
          "complement_rows shape mismatch");
  const int cols = v.cols();
  // Incrementally extend an echelonized copy of U by rows of V.  Rows have
  // pairwise distinct pivots (= leading nonzero columns); reducing a vector
  // against them in ascending pivot order is a complete reduction, because a
  // row is zero left of its own pivot.
  std::vector<std::vector<Rat>> ech;
  std::vector<int> ech_pivot;
  std::vector<int> by_pivot;  // indices into ech, sorted by pivot column
  auto reduce_vec = [&](std::vector<Rat>& w) {
    for (int i : by_pivot) {
      const int p = ech_pivot[i];
      if (w[p] == 0) continue;
      const Rat f = w[p] / ech[i][p];
      for (int j = p; j < cols; ++j) w[j] -= f * ech[i][j];
    }
  };
  auto insert_vec = [&](std::vector<Rat> w) -> bool {
    reduce_vec(w);
    int p = -1;
    for (int j = 0; j < cols; ++j)
      if (w[j] != 0) {
        p = j;
        break;
      }
    if (p < 0) return false;
    ech.push_back(std::move(w));
    ech_pivot.push_back(p);
    const int idx = int(ech.size()) - 1;
    auto it = by_pivot.begin();
    while (it != by_pivot.end() && ech_pivot[*it] < p) ++it;
    by_pivot.insert(it, idx);
    return true;
  };
  for (int i = 0; i < u.rows(); ++i) {
    std::vector<Rat> w(cols);
    for (int j = 0; j < cols; ++j) w[j] = u.at(i, j);
    insert_vec(std::move(w));
  }
  std::vector<int> order(v.rows());
  for (int i = 0; i < v.rows(); ++i) order[i] = reverse_candidates ? v.rows() - 1 - i : i;
  std::vector<int> chosen;
  for (int i : order) {
    std::vector<Rat> w(cols);
    for (int j = 0; j < cols; ++j) w[j] = v.at(i, j);
    if (insert_vec(std::move(w))) chosen.push_back(i);
  }
  Mat comp(int(chosen.size()), cols);
  for (int r = 0; r < int(chosen.size()); ++r)
    for (int j = 0; j < cols; ++j) comp.at(r, j) = v.at(chosen[r], j);
  return comp;
}

Mat inverse(const Mat& m) {
  require(m.rows() == m.cols(), "not_invertible", "inverse of non-square matrix");
  const int n = m.rows();
  Rref e = rref(hstack({m, Mat::identity(n)}));
  require(e.rank == n && (n == 0 || e.pivot_cols[n - 1] == n - 1), "not_invertible",
          "matrix is singular");
  return submatrix_cols(e.r, n, n);
}

}  // namespace qpmut
