#pragma once

#include <optional>
#include <vector>

#include <gmpxx.h>

namespace hsl {

// Dense exact rational matrix, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  mpq_class& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const mpq_class& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  RationalMatrix transpose() const;
  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  std::vector<mpq_class> operator*(const std::vector<mpq_class>& x) const;
  bool operator==(const RationalMatrix& o) const = default;

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<mpq_class> a_;
};

struct RowEchelon {
  RationalMatrix r;             // reduced row echelon form
  std::vector<size_t> pivots;   // pivot column per nonzero row
};

RowEchelon rref(RationalMatrix a);
size_t rank(const RationalMatrix& a);
// basis of {x : A x = 0}, one vector per free column
std::vector<std::vector<mpq_class>> null_space(const RationalMatrix& a);

struct SolveResult {
  std::vector<mpq_class> x;  // minimal Euclidean norm solution
  size_t nullity = 0;        // dimension of the solution space
};
// returns nullopt when A x = b is inconsistent
std::optional<SolveResult> solve_min_norm(const RationalMatrix& a, const std::vector<mpq_class>& b);
std::optional<RationalMatrix> inverse(const RationalMatrix& a);

}  // namespace hsl
