#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hsl/spaces.hpp"

namespace hsl {

enum class QuadKind { ExactPolynomial, ProductGauss };

// Rule on S^{m-1}. ExactPolynomial routes to the closed monomial formula; ProductGauss is a
// tensor rule in hyperspherical angles (Gauss-Gegenbauer in cos(theta_j), trapezoid in phi),
// exact for spherical polynomials of degree <= `degree`.
struct QuadratureRule {
  int m = 3;
  QuadKind kind = QuadKind::ExactPolynomial;
  int degree = -1;  // -1: unbounded (exact rule)
  std::vector<double> coords;  // node i occupies coords[i*m .. i*m+m)
  std::vector<double> weights;
  std::vector<int> per_angle;  // node counts: theta_1..theta_{m-2}, phi

  static QuadratureRule exact(int m);
  static QuadratureRule product_gauss(int m, int degree);
  // same family with per-angle node counts doubled (node spacing halved)
  QuadratureRule refined() const;
  size_t size() const { return weights.size(); }
  std::string table() const;  // plain-text node/weight export
};

// Gauss rule for weight (1-t^2)^alpha on [-1,1]
void gauss_gegenbauer(int n, double alpha, std::vector<double>& t, std::vector<double>& w);

enum class Orientation { Outward, Inward };

// Sphere / ball in the variable x. Every integrand is written in z = x - y, with radial
// weights (z.z)^q centred at the pole y; `offset` is the centre of the domain minus y.
struct Ball {
  std::vector<mpq_class> offset;  // empty = centred at the pole
  mpq_class radius = 1;
  bool centred() const;
};

// outward (or inward) unit normal (z - offset)/R as a vector polynomial in x
CliffPoly sphere_normal(int m, const Ball& ball, Orientation o = Orientation::Outward);

// int over S^{m-1} in the variable `var`; other variables passive
CliffPoly integrate_sphere_var(const CliffPoly& f, const QuadratureRule& rule, Var var = Var::U);
Multivector integrate_sphere_u(const CliffPoly& f, const QuadratureRule& rule);

// int over the sphere |z - offset| = R of f dsigma (optionally n(x) f dsigma, n on the left);
// x is integrated out, u and v stay passive. Exact when the ball is centred (or f is
// polynomial) and the rule is exact; float otherwise.
CliffPoly integrate_boundary_sphere_x(const RadialFunction& f, const Ball& ball, const QuadratureRule& rule,
                                      std::optional<Orientation> normal = std::nullopt);
// int over the ball |z - offset| <= R of f dz
CliffPoly integrate_ball_x(const RadialFunction& f, const Ball& ball, const QuadratureRule& rule);

// shift a polynomial in x to the variable z = x - y (f(y + z))
CliffPoly translate_x(const CliffPoly& f, const std::vector<mpq_class>& y);

// ---- Moebius generators ---------------------------------------------------

struct MobiusGenerator {
  enum class Kind { Translation, Dilation, Rotation, Inversion };
  Kind kind = Kind::Translation;
  int m = 3;
  Multivector a, b, c, d;

  static MobiusGenerator translation(const std::vector<mpq_class>& shift);
  // x -> mu^2 x, Vahlen (mu, 0, 0, 1/mu)
  static MobiusGenerator dilation(int m, const mpq_class& mu);
  // x -> s x rev(s) for s an even product of unit vectors
  static MobiusGenerator rotation(const Multivector& s);
  // x -> x^{-1} = -x/|x|^2, Vahlen (0, 1, 1, 0)
  static MobiusGenerator inversion(int m);
  std::string str() const;
};

enum class Weight { J2, Jminus2 };
// Scalar: J f(phi(x), u').  Spinor: J (cx+d)~/|cx+d| f(phi(x), u').
enum class Action { Scalar, Spinor };

std::vector<RadialFunction> mobius_x_images(const MobiusGenerator& g);
std::vector<RadialFunction> mobius_u_images(const MobiusGenerator& g);
RadialFunction conformal_weight(const MobiusGenerator& g, Weight w);
RadialFunction mobius_transform_function(const CliffPoly& f, const MobiusGenerator& g, Weight w,
                                         Action action = Action::Scalar);

enum class ConformalOp { RkAk, QkBk, D2 };
const char* conformal_op_name(ConformalOp op);
RadialFunction apply_conformal_op(ConformalOp op, int m, int k, const RadialFunction& f);
// Op[J_2 [s] f(phi(x), u')] - [s] J_{-2} (Op f)(phi(x), u'), s the spinor factor when requested;
// this is J_{-2}^{-1}[s^{-1}] Op[...] - (Op f)(phi(x), u') multiplied through by [s] J_{-2}
RadialFunction conformal_invariance_residual(int m, int k, const MobiusGenerator& g, const CliffPoly& f,
                                             ConformalOp which, Action action = Action::Scalar);

}  // namespace hsl
