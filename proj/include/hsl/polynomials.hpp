#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hsl/clifford.hpp"

namespace hsl {

enum class Var : int { X = 0, U = 1, V = 2 };

const char* var_name(Var v);
Var parse_var(std::string_view s);

struct Monomial {
  std::array<std::uint8_t, 3 * kMaxDim> e{};

  std::uint8_t& at(Var v, int i) { return e[static_cast<int>(v) * kMaxDim + i]; }
  std::uint8_t at(Var v, int i) const { return e[static_cast<int>(v) * kMaxDim + i]; }
  int degree(Var v) const;
  int total_degree() const;
  Monomial operator*(const Monomial& o) const;
  auto operator<=>(const Monomial&) const = default;
};

struct PolyTerm {
  Monomial mono;
  Blade blade;
  ExactScalar c;
};

// Polynomial in the scalar variables x_i, u_i, v_i with Cl_m coefficients.
// Monomials are central, so a term is mono * c * e_blade.
class CliffPoly {
 public:
  CliffPoly() = default;
  explicit CliffPoly(int m);
  CliffPoly(int m, const ExactScalar& c);
  explicit CliffPoly(const Multivector& c);
  static CliffPoly variable(int m, Var v, int i);  // i is 0-based
  static CliffPoly vector(int m, Var v);           // sum_i e_i w_i
  static CliffPoly monomial(int m, const Monomial& mono, const Multivector& c);
  static CliffPoly from_terms(int m, std::vector<PolyTerm> terms);  // merges and sorts
  static CliffPoly norm_squared(int m, Var v);     // sum_i w_i^2

  int dim() const { return m_; }
  const std::vector<PolyTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  std::vector<std::pair<Monomial, Multivector>> grouped() const;
  Multivector coefficient(const Monomial& mono) const;

  CliffPoly operator-() const;
  CliffPoly& operator+=(const CliffPoly& o);
  CliffPoly& operator-=(const CliffPoly& o);
  friend CliffPoly operator+(CliffPoly a, const CliffPoly& b) { return a += b; }
  friend CliffPoly operator-(CliffPoly a, const CliffPoly& b) { return a -= b; }
  friend CliffPoly operator*(const CliffPoly& a, const CliffPoly& b);
  friend CliffPoly operator*(const ExactScalar& s, const CliffPoly& a);
  friend CliffPoly operator*(const CliffPoly& a, const ExactScalar& s) { return s * a; }
  friend CliffPoly operator*(const Multivector& c, const CliffPoly& a);
  friend CliffPoly operator*(const CliffPoly& a, const Multivector& c);
  friend bool operator==(const CliffPoly& a, const CliffPoly& b);
  friend bool operator!=(const CliffPoly& a, const CliffPoly& b) { return !(a == b); }

  CliffPoly diff(Var v, int i) const;
  // multiply every term by w_i (cheap monomial shift)
  CliffPoly times_variable(Var v, int i) const;
  CliffPoly conj() const;
  CliffPoly reversion() const;
  // blade component as a scalar polynomial
  CliffPoly blade_part(Blade b) const;
  CliffPoly scalar_part() const { return blade_part(0); }
  bool is_scalar() const;

  int max_degree(Var v) const;
  int min_degree(Var v) const;
  bool is_homogeneous(Var v, int k) const;
  bool depends_on(Var v) const;
  double max_abs() const;

 private:
  int m_ = 0;
  std::vector<PolyTerm> terms_;  // sorted by (mono, blade), nonzero
  void normalize();
  friend class RadialFunction;
};

CliffPoly homogeneous_component(const CliffPoly& f, Var v, int k);

// Finite sum of p_q(x,u,v) * (x.x)^q with q a half-integer; stored keyed by 2q.
class RadialFunction {
 public:
  RadialFunction() = default;
  explicit RadialFunction(int m) : m_(m) { Multivector::check_dim(m); }
  RadialFunction(const CliffPoly& p);
  static RadialFunction r_power(int m, int q2);  // (x.x)^(q2/2)
  RadialFunction(int q2, const CliffPoly& p);

  int dim() const { return m_; }
  const std::map<int, CliffPoly>& parts() const { return parts_; }
  void add_part(int q2, const CliffPoly& p);
  bool is_polynomial() const;
  CliffPoly as_polynomial() const;  // throws unless is_polynomial()
  size_t size() const;

  RadialFunction operator-() const;
  RadialFunction& operator+=(const RadialFunction& o);
  RadialFunction& operator-=(const RadialFunction& o);
  friend RadialFunction operator+(RadialFunction a, const RadialFunction& b) { return a += b; }
  friend RadialFunction operator-(RadialFunction a, const RadialFunction& b) { return a -= b; }
  friend RadialFunction operator*(const RadialFunction& a, const RadialFunction& b);
  friend RadialFunction operator*(const ExactScalar& s, const RadialFunction& a);
  friend RadialFunction operator*(const RadialFunction& a, const ExactScalar& s) { return s * a; }
  friend RadialFunction operator*(const Multivector& c, const RadialFunction& a);
  friend RadialFunction operator*(const RadialFunction& a, const Multivector& c);

  RadialFunction diff(Var v, int i) const;
  RadialFunction conj() const;
  RadialFunction reversion() const;
  RadialFunction blade_part(Blade b) const;
  RadialFunction map_parts(const auto& fn) const {
    RadialFunction r(m_);
    for (const auto& [q2, p] : parts_) r.add_part(q2, fn(p));
    return r;
  }

  // single part per parity class of 2q, at the minimal exponent of that class
  RadialFunction canonical() const;
  bool is_zero() const;
  friend bool operator==(const RadialFunction& a, const RadialFunction& b) { return (a - b).is_zero(); }
  friend bool operator!=(const RadialFunction& a, const RadialFunction& b) { return !(a == b); }

  // common x-homogeneity degree (2q + |alpha|), if every term shares it
  std::optional<int> x_degree() const;
  bool depends_on(Var v) const;
  int max_degree(Var v) const;
  bool is_homogeneous(Var v, int k) const;
  double max_abs() const;

 private:
  int m_ = 0;
  std::map<int, CliffPoly> parts_;
};

// (x.x)^n as a polynomial
const CliffPoly& r_power_poly(int m, int n);

struct EvalPoint {
  int m = 0;
  bool exact = true;
  std::vector<ExactScalar> x, u, v;

  static EvalPoint exact_point(const std::vector<mpq_class>& x, const std::vector<mpq_class>& u,
                               const std::vector<mpq_class>& v = {});
  static EvalPoint float_point(const std::vector<double>& x, const std::vector<double>& u,
                               const std::vector<double>& v = {});
};

Multivector evaluate(const CliffPoly& f, const EvalPoint& pt);
Multivector evaluate(const RadialFunction& f, const EvalPoint& pt);

// Replace the coordinates of `var` by scalar-valued images. Substituting x requires f polynomial.
RadialFunction substitute(const RadialFunction& f, Var var, const std::vector<RadialFunction>& images);
// The Kelvin-type argument w -> x w x / (x.x) = w - 2<w,x> x / (x.x), w = u or v
RadialFunction substitute_kelvin(const RadialFunction& f, Var var = Var::U);
// images of w_i under w -> x w x/(x.x)
std::vector<RadialFunction> kelvin_images(int m, Var var);

// Canonical text: "(<multivector>) * x^(a..) u^(b..) v^(c..) * r^(q)" terms joined by " + ".
std::string to_text(const CliffPoly& f);
std::string to_text(const RadialFunction& f);
CliffPoly parse_poly(std::string_view s, int m);
RadialFunction parse_radial(std::string_view s, int m);

}  // namespace hsl
