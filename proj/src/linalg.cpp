#include "hsl/linalg.hpp"

#include <stdexcept>

namespace hsl {

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
  RationalMatrix c(a.rows_, b.cols_);
  for (size_t i = 0; i < a.rows_; ++i)
    for (size_t l = 0; l < a.cols_; ++l) {
      const mpq_class& x = a(i, l);
      if (x == 0) continue;
      for (size_t j = 0; j < b.cols_; ++j)
        if (b(l, j) != 0) c(i, j) += x * b(l, j);
    }
  return c;
}

std::vector<mpq_class> RationalMatrix::operator*(const std::vector<mpq_class>& x) const {
  if (x.size() != cols_) throw std::invalid_argument("matrix-vector shape mismatch");
  std::vector<mpq_class> y(rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != 0 && x[j] != 0) y[i] += (*this)(i, j) * x[j];
  return y;
}

RowEchelon rref(RationalMatrix a) {
  RowEchelon out;
  size_t row = 0;
  const size_t n = a.rows(), m = a.cols();
  for (size_t col = 0; col < m && row < n; ++col) {
    size_t piv = row;
    while (piv < n && a(piv, col) == 0) ++piv;
    if (piv == n) continue;
    if (piv != row)
      for (size_t j = 0; j < m; ++j) std::swap(a(piv, j), a(row, j));
    mpq_class inv = 1 / a(row, col);
    for (size_t j = col; j < m; ++j)
      if (a(row, j) != 0) a(row, j) *= inv;
    for (size_t i = 0; i < n; ++i) {
      if (i == row || a(i, col) == 0) continue;
      mpq_class f = a(i, col);
      for (size_t j = col; j < m; ++j)
        if (a(row, j) != 0) a(i, j) -= f * a(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.r = std::move(a);
  return out;
}

size_t rank(const RationalMatrix& a) { return rref(a).pivots.size(); }

std::vector<std::vector<mpq_class>> null_space(const RationalMatrix& a) {
  RowEchelon e = rref(a);
  const size_t m = a.cols();
  std::vector<bool> is_pivot(m, false);
  for (size_t c : e.pivots) is_pivot[c] = true;
  std::vector<std::vector<mpq_class>> basis;
  for (size_t free = 0; free < m; ++free) {
    if (is_pivot[free]) continue;
    std::vector<mpq_class> v(m);
    v[free] = 1;
    for (size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.r(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<SolveResult> solve_min_norm(const RationalMatrix& a, const std::vector<mpq_class>& b) {
  const size_t n = a.rows(), m = a.cols();
  if (b.size() != n) throw std::invalid_argument("rhs size mismatch");
  RationalMatrix aug(n, m + 1);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < m; ++j) aug(i, j) = a(i, j);
    aug(i, m) = b[i];
  }
  RowEchelon e = rref(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == m) return std::nullopt;
  std::vector<mpq_class> x0(m);
  for (size_t r = 0; r < e.pivots.size(); ++r) x0[e.pivots[r]] = e.r(r, m);
  auto ns = null_space(a);
  SolveResult res{x0, ns.size()};
  if (ns.empty()) return res;
  // minimise |x0 + N t|^2 : (N^T N) t = -N^T x0
  const size_t d = ns.size();
  RationalMatrix g(d, d + 1);
  for (size_t i = 0; i < d; ++i) {
    for (size_t j = 0; j < d; ++j)
      for (size_t l = 0; l < m; ++l) g(i, j) += ns[i][l] * ns[j][l];
    for (size_t l = 0; l < m; ++l) g(i, d) -= ns[i][l] * x0[l];
  }
  RowEchelon ge = rref(std::move(g));
  for (size_t r = 0; r < d; ++r)
    for (size_t l = 0; l < m; ++l) res.x[l] += ge.r(r, d) * ns[ge.pivots[r]][l];
  return res;
}

std::optional<RationalMatrix> inverse(const RationalMatrix& a) {
  const size_t n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("inverse of a non-square matrix");
  RationalMatrix aug(n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  RowEchelon e = rref(std::move(aug));
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  RationalMatrix inv(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv(i, j) = e.r(i, n + j);
  return inv;
}

}  // namespace hsl
