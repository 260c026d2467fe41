#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <gmpxx.h>

#include "hsl/errors.hpp"

namespace hsl {

inline constexpr int kMaxDim = 10;

// Exact real number of the form sum_j q_j * pi^(j/2), q_j rational.
// A scalar may instead be "approximate" (float mode): then only a double is carried.
class ExactScalar {
 public:
  struct Term {
    int pi2;  // twice the pi exponent
    mpq_class q;
  };

  ExactScalar() = default;
  ExactScalar(long v) { if (v != 0) terms_.push_back({0, mpq_class(v)}); }
  ExactScalar(int v) : ExactScalar(static_cast<long>(v)) {}
  ExactScalar(const mpq_class& q, int pi2 = 0);
  static ExactScalar rational(long num, long den = 1);
  static ExactScalar pi_power(int pi2);
  static ExactScalar approx(double v);

  bool is_exact() const { return exact_; }
  bool is_zero() const { return exact_ ? terms_.empty() : approx_ == 0.0; }
  bool is_rational() const;  // exact with only the pi^0 grade
  mpq_class to_rational() const;
  bool is_homogeneous() const { return exact_ && terms_.size() <= 1; }
  // pi grade (twice the exponent) of a single-term scalar
  int grade() const;
  double to_double() const;
  const auto& terms() const { return terms_; }

  ExactScalar operator-() const;
  ExactScalar& operator+=(const ExactScalar& o);
  ExactScalar& operator-=(const ExactScalar& o);
  ExactScalar& operator*=(const ExactScalar& o);
  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
  friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b);
  friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) { return a * b.inverse(); }
  // exact inverse exists for single-term scalars only
  ExactScalar inverse() const;
  ExactScalar pow(int n) const;

  friend bool operator==(const ExactScalar& a, const ExactScalar& b);
  friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }

  std::string str() const;
  static ExactScalar parse(std::string_view s);

 private:
  boost::container::small_vector<Term, 1> terms_;  // sorted by pi2, no zero q
  bool exact_ = true;
  double approx_ = 0.0;
};

using Blade = std::uint32_t;

int blade_grade(Blade a);
// sign of e_A e_B relative to e_{A xor B}
int blade_product_sign(Blade a, Blade b);
int reversion_sign(Blade a);
int conjugation_sign(Blade a);

class Multivector {
 public:
  using Entry = std::pair<Blade, ExactScalar>;

  Multivector() = default;
  explicit Multivector(int dim) : dim_(dim) { check_dim(dim); }
  Multivector(int dim, const ExactScalar& s);
  static Multivector basis(int dim, Blade a, const ExactScalar& c = ExactScalar(1));
  static Multivector e(int dim, int i);  // i in 1..dim

  int dim() const { return dim_; }
  bool is_zero() const { return terms_.empty(); }
  const auto& terms() const { return terms_; }
  ExactScalar coeff(Blade a) const;
  ExactScalar scalar_part() const { return coeff(0); }
  bool is_scalar() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0); }
  void add(Blade a, const ExactScalar& c);

  Multivector operator-() const;
  Multivector& operator+=(const Multivector& o);
  Multivector& operator-=(const Multivector& o);
  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator*(const Multivector& a, const Multivector& b);
  friend Multivector operator*(const ExactScalar& s, const Multivector& a);
  friend Multivector operator*(const Multivector& a, const ExactScalar& s) { return s * a; }

  friend bool operator==(const Multivector& a, const Multivector& b);
  friend bool operator!=(const Multivector& a, const Multivector& b) { return !(a == b); }

  // largest |coefficient| as a double; 0 for the zero element
  double max_abs() const;

  std::string str() const;
  static Multivector parse(std::string_view s, int dim);

  static void check_dim(int dim);

 private:
  int dim_ = 0;
  std::vector<Entry> terms_;  // sorted by blade, no zero coefficients
  friend class MultivectorBuilder;
};

Multivector geometric_product(const Multivector& a, const Multivector& b);
Multivector reversion(const Multivector& a);
Multivector clifford_conjugate(const Multivector& a);
Multivector vector_embed(const std::vector<ExactScalar>& coords);

// Gamma(n/2) for positive integers n, as an ExactScalar (rational or rational * sqrt(pi))
ExactScalar gamma_half(int n);
// area of the unit sphere S^{m-1} in R^m
ExactScalar sphere_area(int m);

}  // namespace hsl
