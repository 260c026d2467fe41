#include "hsl/geometry.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include <Eigen/Dense>

namespace hsl {

// ---- quadrature ------------------------------------------------------------

void gauss_gegenbauer(int n, double alpha, std::vector<double>& t, std::vector<double>& w) {
  if (n < 1) throw DomainError("gauss_gegenbauer: n >= 1");
  const double lam = alpha + 0.5;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int j = 1; j < n; ++j) {
    // monic recurrence coefficient for the Gegenbauer weight
    double b = j * (j + 2 * lam - 1) / (4.0 * (j + lam) * (j + lam - 1));
    J(j, j - 1) = J(j - 1, j) = std::sqrt(b);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  const double mu0 = std::sqrt(M_PI) * std::tgamma(alpha + 1) / std::tgamma(alpha + 1.5);
  t.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    t[i] = es.eigenvalues()(i);
    double v0 = es.eigenvectors()(0, i);
    w[i] = mu0 * v0 * v0;
  }
}

QuadratureRule QuadratureRule::exact(int m) {
  Multivector::check_dim(m);
  QuadratureRule r;
  r.m = m;
  return r;
}

namespace {

QuadratureRule product_rule(int m, int degree, std::vector<int> counts) {
  QuadratureRule r;
  r.m = m;
  r.kind = QuadKind::ProductGauss;
  r.degree = degree;
  r.per_angle = counts;
  const int nang = m - 2;
  std::vector<std::vector<double>> ts(nang), ws(nang);
  for (int j = 0; j < nang; ++j) {
    // theta_{j+1} carries sin^{m-2-j}
    double alpha = (m - 3 - j) / 2.0;
    gauss_gegenbauer(counts[j], alpha, ts[j], ws[j]);
  }
  const int nphi = counts[nang];
  size_t total = nphi;
  for (int j = 0; j < nang; ++j) total *= counts[j];
  r.coords.reserve(total * m);
  r.weights.reserve(total);
  std::vector<int> idx(nang, 0);
  std::vector<double> p(m);
  for (size_t n = 0; n < total / nphi; ++n) {
    double s = 1.0, wt = 1.0;
    for (int j = 0; j < nang; ++j) {
      double c = ts[j][idx[j]];
      p[j] = s * c;
      s *= std::sqrt(std::max(0.0, 1.0 - c * c));
      wt *= ws[j][idx[j]];
    }
    for (int q = 0; q < nphi; ++q) {
      double phi = 2.0 * M_PI * q / nphi;
      p[m - 2] = s * std::cos(phi);
      p[m - 1] = s * std::sin(phi);
      r.coords.insert(r.coords.end(), p.begin(), p.end());
      r.weights.push_back(wt * 2.0 * M_PI / nphi);
    }
    for (int j = nang - 1; j >= 0; --j) {
      if (++idx[j] < counts[j]) break;
      idx[j] = 0;
    }
  }
  return r;
}

}  // namespace

QuadratureRule QuadratureRule::product_gauss(int m, int degree) {
  Multivector::check_dim(m);
  if (m < 2) throw DimensionError("product_gauss: m >= 2");
  if (degree < 0) throw DomainError("product_gauss: degree >= 0");
  std::vector<int> counts(m - 2, (degree + 2) / 2);
  counts.push_back(degree + 1);
  return product_rule(m, degree, counts);
}

QuadratureRule QuadratureRule::refined() const {
  if (kind != QuadKind::ProductGauss) return *this;
  std::vector<int> counts = per_angle;
  for (int& c : counts) c *= 2;
  return product_rule(m, 2 * degree + 1, counts);
}

std::string QuadratureRule::table() const {
  std::ostringstream os;
  os << "# m=" << m << " degree=" << degree << " nodes=" << size() << "\n";
  char buf[64];
  for (size_t i = 0; i < size(); ++i) {
    for (int j = 0; j < m; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g ", coords[i * m + j]);
      os << buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g\n", weights[i]);
    os << buf;
  }
  return os.str();
}

// ---- float evaluation of integrands ----------------------------------------

namespace {

// Integrand compiled for node evaluation. Distinct (exponent, radial power) pairs form a
// small basis whose integrals are accumulated once; terms then combine those moments.
struct Compiled {
  struct Basis {
    std::array<std::uint8_t, kMaxDim> e{};
    int q2 = 0;
    int deg = 0;
    auto operator<=>(const Basis&) const = default;
  };
  struct Term {
    int basis = 0;
    int slot = 0;
    double c = 0;
  };
  int m = 0;
  int maxdeg = 0;
  std::vector<Basis> basis;
  std::vector<Term> terms;
  std::vector<std::pair<Monomial, Blade>> slots;
};

Compiled compile(const RadialFunction& f, Var var) {
  Compiled c;
  c.m = f.dim();
  std::map<std::pair<Monomial, Blade>, int> index;
  std::map<Compiled::Basis, int> bindex;
  for (const auto& [q2, p] : f.parts()) {
    for (const auto& t : p.terms()) {
      Compiled::Basis bs;
      Monomial rest = t.mono;
      for (int i = 0; i < c.m; ++i) {
        bs.e[i] = t.mono.at(var, i);
        bs.deg += bs.e[i];
        rest.at(var, i) = 0;
      }
      bs.q2 = q2;
      auto bit = bindex.find(bs);
      if (bit == bindex.end()) {
        bit = bindex.emplace(bs, static_cast<int>(c.basis.size())).first;
        c.basis.push_back(bs);
      }
      auto key = std::make_pair(rest, t.blade);
      auto it = index.find(key);
      if (it == index.end()) {
        it = index.emplace(key, static_cast<int>(c.slots.size())).first;
        c.slots.push_back(key);
      }
      c.maxdeg = std::max(c.maxdeg, bs.deg);
      c.terms.push_back({bit->second, it->second, t.c.to_double()});
    }
  }
  return c;
}

CliffPoly assemble(const Compiled& c, const std::vector<double>& moments) {
  std::vector<double> acc(c.slots.size(), 0.0);
  for (const auto& t : c.terms) acc[t.slot] += t.c * moments[t.basis];
  std::vector<PolyTerm> out;
  for (size_t s = 0; s < c.slots.size(); ++s)
    if (acc[s] != 0.0) out.push_back({c.slots[s].first, c.slots[s].second, ExactScalar::approx(acc[s])});
  return CliffPoly::from_terms(c.m, std::move(out));
}

// Per-node contribution to the basis moments. Sphere mode multiplies by (p.p)^{q2/2};
// ball mode replaces the radial integral by rho^{deg+q2+m}/(deg+q2+m), p a unit direction.
struct NodeEval {
  const Compiled& c;
  bool ball = false;
  double rho = 0;
  std::vector<std::vector<double>> pw;  // pw[i][e] = p_i^e

  explicit NodeEval(const Compiled& cc) : c(cc), pw(cc.m, std::vector<double>(cc.maxdeg + 1, 1.0)) {}

  void add(const double* p, double weight, std::vector<double>& acc) {
    double rr = 0;
    for (int i = 0; i < c.m; ++i) {
      rr += p[i] * p[i];
      for (int e = 1; e <= c.maxdeg; ++e) pw[i][e] = pw[i][e - 1] * p[i];
    }
    const double r = std::sqrt(rr);
    for (size_t j = 0; j < c.basis.size(); ++j) {
      const auto& b = c.basis[j];
      double v = weight;
      for (int i = 0; i < c.m; ++i)
        if (b.e[i]) v *= pw[i][b.e[i]];
      if (ball) {
        int pe = b.deg + b.q2 + c.m;
        if (pe <= 0) throw DomainError("ball integral: non-integrable radial exponent");
        v *= std::pow(rho, pe) / pe;
      } else if (b.q2) {
        v *= std::pow(r, b.q2);
      }
      acc[j] += v;
    }
  }
};

// pairwise reduction over node blocks; `visit(i, acc)` adds node i
template <class Visit>
std::vector<double> pairwise(size_t lo, size_t hi, size_t width, const Visit& visit) {
  if (hi - lo <= 64) {
    std::vector<double> acc(width, 0.0);
    for (size_t i = lo; i < hi; ++i) visit(i, acc);
    return acc;
  }
  size_t mid = lo + (hi - lo) / 2;
  std::vector<double> a = pairwise(lo, mid, width, visit);
  std::vector<double> b = pairwise(mid, hi, width, visit);
  for (size_t s = 0; s < width; ++s) a[s] += b[s];
  return a;
}

void require_float_rule(const QuadratureRule& rule, int m) {
  if (rule.kind != QuadKind::ProductGauss) throw DomainError("float integration needs a product_gauss rule");
  if (rule.m != m) throw DimensionError("quadrature rule dimension mismatch");
}

std::vector<double> offset_double(const Ball& ball, int m) {
  std::vector<double> d(m, 0.0);
  for (size_t i = 0; i < ball.offset.size() && i < size_t(m); ++i) d[i] = ball.offset[i].get_d();
  return d;
}

ExactScalar rational_pow(const mpq_class& r, int n) { return ExactScalar(r).pow(n); }

// centred exact integral of f over |z| = R (sphere) or |z| <= R (ball)
CliffPoly exact_centred(const RadialFunction& f, const mpq_class& R, bool ball) {
  const int m = f.dim();
  std::vector<PolyTerm> out;
  for (const auto& [q2, p] : f.parts()) {
    for (const auto& t : p.terms()) {
      ExactScalar mom = sphere_moment(m, t.mono, Var::X);
      if (mom.is_zero()) continue;
      int deg = t.mono.degree(Var::X);
      ExactScalar scale;
      if (ball) {
        int pe = deg + q2 + m;
        if (pe <= 0) throw DomainError("ball integral: non-integrable radial exponent");
        scale = rational_pow(R, pe) * ExactScalar::rational(1, pe);
      } else {
        scale = rational_pow(R, q2 + deg + m - 1);
      }
      PolyTerm n = t;
      for (int i = 0; i < m; ++i) n.mono.at(Var::X, i) = 0;
      n.c = t.c * mom * scale;
      out.push_back(n);
    }
  }
  return CliffPoly::from_terms(m, std::move(out));
}

}  // namespace

CliffPoly integrate_sphere_var(const CliffPoly& f, const QuadratureRule& rule, Var var) {
  if (rule.kind == QuadKind::ExactPolynomial) return integrate_sphere(f, var);
  const int m = f.dim();
  require_float_rule(rule, m);
  Compiled c = compile(RadialFunction(f), var);
  if (rule.degree >= 0 && c.maxdeg > rule.degree)
    std::fprintf(stderr, "warning: integrand degree %d exceeds rule exactness %d\n", c.maxdeg, rule.degree);
  NodeEval ev(c);
  auto acc = pairwise(0, rule.size(), c.basis.size(), [&](size_t i, std::vector<double>& a) {
    ev.add(&rule.coords[i * m], rule.weights[i], a);
  });
  return assemble(c, acc);
}

Multivector integrate_sphere_u(const CliffPoly& f, const QuadratureRule& rule) {
  CliffPoly r = integrate_sphere_var(f, rule, Var::U);
  if (r.depends_on(Var::U) || r.depends_on(Var::X) || r.depends_on(Var::V))
    throw DomainError("integrate_sphere_u: integrand has passive variables");
  return constant_value(r);
}

bool Ball::centred() const {
  for (const auto& q : offset)
    if (q != 0) return false;
  return true;
}

CliffPoly sphere_normal(int m, const Ball& ball, Orientation o) {
  CliffPoly n = CliffPoly::vector(m, Var::X);
  for (size_t i = 0; i < ball.offset.size(); ++i)
    n -= CliffPoly(Multivector::e(m, static_cast<int>(i) + 1)) * ExactScalar(ball.offset[i]);
  ExactScalar s = ExactScalar(mpq_class(1) / ball.radius);
  return (o == Orientation::Outward ? s : -s) * n;
}

CliffPoly translate_x(const CliffPoly& f, const std::vector<mpq_class>& y) {
  const int m = f.dim();
  std::vector<RadialFunction> img;
  for (int i = 0; i < m; ++i) {
    CliffPoly xi = CliffPoly::variable(m, Var::X, i);
    if (i < static_cast<int>(y.size())) xi += CliffPoly(m, ExactScalar(y[i]));
    img.emplace_back(xi);
  }
  return substitute(RadialFunction(f), Var::X, img).as_polynomial();
}

namespace {

CliffPoly float_domain(const RadialFunction& f, const Ball& ball, const QuadratureRule& rule, bool is_ball) {
  const int m = f.dim();
  require_float_rule(rule, m);
  Compiled c = compile(f, Var::X);
  NodeEval ev(c);
  ev.ball = is_ball;
  const std::vector<double> d = offset_double(ball, m);
  const double R = ball.radius.get_d();
  double dd = 0;
  for (double di : d) dd += di * di;
  if (is_ball && std::sqrt(dd) >= R) throw DomainError("ball integral: pole outside the ball");
  const double scale = is_ball ? 1.0 : std::pow(R, m - 1);
  auto acc = pairwise(0, rule.size(), c.basis.size(), [&](size_t i, std::vector<double>& a) {
    const double* zeta = &rule.coords[i * m];
    double p[kMaxDim];
    if (is_ball) {
      double zd = 0;
      for (int j = 0; j < m; ++j) zd += zeta[j] * d[j];
      ev.rho = zd + std::sqrt(zd * zd - dd + R * R);
      ev.add(zeta, rule.weights[i], a);
    } else {
      for (int j = 0; j < m; ++j) p[j] = d[j] + R * zeta[j];
      ev.add(p, rule.weights[i] * scale, a);
    }
  });
  return assemble(c, acc);
}

}  // namespace

CliffPoly integrate_boundary_sphere_x(const RadialFunction& f, const Ball& ball, const QuadratureRule& rule,
                                      std::optional<Orientation> normal) {
  const int m = f.dim();
  RadialFunction g = f;
  if (normal) g = RadialFunction(sphere_normal(m, ball, *normal)) * f;
  if (rule.kind == QuadKind::ExactPolynomial) {
    if (ball.centred()) return exact_centred(g, ball.radius, false);
    if (!g.is_polynomial()) throw DomainError("exact off-centre integration needs a polynomial integrand");
    // w = z - offset
    CliffPoly w = translate_x(g.as_polynomial(), ball.offset);
    return exact_centred(RadialFunction(w), ball.radius, false);
  }
  return float_domain(g, ball, rule, false);
}

CliffPoly integrate_ball_x(const RadialFunction& f, const Ball& ball, const QuadratureRule& rule) {
  if (rule.kind == QuadKind::ExactPolynomial) {
    if (ball.centred()) return exact_centred(f, ball.radius, true);
    if (!f.is_polynomial()) throw DomainError("exact off-centre integration needs a polynomial integrand");
    CliffPoly w = translate_x(f.as_polynomial(), ball.offset);
    return exact_centred(RadialFunction(w), ball.radius, true);
  }
  return float_domain(f, ball, rule, true);
}

// ---- Moebius generators ------------------------------------------------------

MobiusGenerator MobiusGenerator::translation(const std::vector<mpq_class>& shift) {
  MobiusGenerator g;
  g.kind = Kind::Translation;
  g.m = static_cast<int>(shift.size());
  std::vector<ExactScalar> c;
  for (const auto& q : shift) c.emplace_back(q);
  g.a = Multivector(g.m, 1);
  g.b = vector_embed(c);
  g.c = Multivector(g.m);
  g.d = Multivector(g.m, 1);
  return g;
}

MobiusGenerator MobiusGenerator::dilation(int m, const mpq_class& mu) {
  if (mu <= 0) throw DomainError("dilation: mu > 0");
  MobiusGenerator g;
  g.kind = Kind::Dilation;
  g.m = m;
  g.a = Multivector(m, ExactScalar(mu));
  g.b = Multivector(m);
  g.c = Multivector(m);
  g.d = Multivector(m, ExactScalar(mpq_class(1) / mu));
  return g;
}

MobiusGenerator MobiusGenerator::rotation(const Multivector& s) {
  const int m = s.dim();
  for (const auto& [bl, c] : s.terms())
    if (blade_grade(bl) % 2) throw DomainError("rotation: s must be even");
  if (s * reversion(s) != Multivector(m, 1)) throw DomainError("rotation: s rev(s) != 1");
  MobiusGenerator g;
  g.kind = Kind::Rotation;
  g.m = m;
  g.a = s;
  g.b = Multivector(m);
  g.c = Multivector(m);
  g.d = s;
  return g;
}

MobiusGenerator MobiusGenerator::inversion(int m) {
  MobiusGenerator g;
  g.kind = Kind::Inversion;
  g.m = m;
  g.a = Multivector(m);
  g.b = Multivector(m, 1);
  g.c = Multivector(m, 1);
  g.d = Multivector(m);
  return g;
}

std::string MobiusGenerator::str() const {
  static const char* names[] = {"translation", "dilation", "rotation", "inversion"};
  return std::string(names[static_cast<int>(kind)]) + "(a=" + a.str() + ", b=" + b.str() + ", c=" + c.str() +
         ", d=" + d.str() + ")";
}

namespace {

CliffPoly cx_plus_d(const MobiusGenerator& g) {
  return g.c * CliffPoly::vector(g.m, Var::X) + CliffPoly(g.d);
}

// |cx+d|^2 written as n0 * (x.x)^(e/2), e in {0, 2}
struct NormSq {
  mpq_class n0;
  int e = 0;
};

NormSq norm_sq(const MobiusGenerator& g) {
  const int m = g.m;
  CliffPoly C = cx_plus_d(g);
  CliffPoly N = C * C.conj();
  if (!N.is_scalar()) throw DomainError("Moebius: (cx+d) conj(cx+d) not scalar");
  if (!N.depends_on(Var::X)) {
    Multivector v = constant_value(N);
    ExactScalar s = v.scalar_part();
    if (!s.is_rational() || s.is_zero()) throw DomainError("Moebius: singular constant norm");
    return {s.to_rational(), 0};
  }
  Monomial x1sq;
  x1sq.at(Var::X, 0) = 2;
  ExactScalar s = N.coefficient(x1sq).scalar_part();
  if (!s.is_rational() || N != s * CliffPoly::norm_squared(m, Var::X))
    throw DomainError("Moebius: only |cx+d|^2 = const or const*|x|^2 supported");
  return {s.to_rational(), 2};
}

mpq_class rational_sqrt(const mpq_class& q) {
  if (q < 0) throw DomainError("Moebius: negative norm");
  mpz_class n = q.get_num(), d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
    throw DomainError("Moebius: half-integer weight of a non-square constant");
  return mpq_class(mpz_class(sqrt(n)), mpz_class(sqrt(d)));
}

// |cx+d|^{t}, t an integer
RadialFunction norm_power(const MobiusGenerator& g, int t) {
  NormSq ns = norm_sq(g);
  mpq_class base = ns.n0;
  if (t % 2) base = rational_sqrt(base);
  ExactScalar c = t % 2 ? ExactScalar(base).pow(t) : ExactScalar(ns.n0).pow(t / 2);
  if (ns.e == 0) return RadialFunction(CliffPoly(g.m, c));
  return c * RadialFunction::r_power(g.m, t);
}

std::vector<RadialFunction> vector_coords(const RadialFunction& v, int m) {
  std::vector<RadialFunction> out;
  RadialFunction rest = v;
  for (int i = 0; i < m; ++i) {
    Blade b = Blade(1) << i;
    RadialFunction c = v.blade_part(b);
    out.push_back(c);
    rest -= c * Multivector::e(m, i + 1);
  }
  if (!rest.is_zero()) throw DomainError("Moebius: image is not a vector");
  return out;
}

RadialFunction spinor_factor(const MobiusGenerator& g, bool inverse) {
  CliffPoly C = cx_plus_d(g);
  CliffPoly rc = C.reversion();
  if (rc * rc.conj() != C * C.conj()) throw DomainError("Moebius: spinor norm mismatch");
  RadialFunction inv_norm = norm_power(g, -1);
  return inverse ? RadialFunction(rc.conj()) * inv_norm : RadialFunction(rc) * inv_norm;
}

}  // namespace

std::vector<RadialFunction> mobius_x_images(const MobiusGenerator& g) {
  const int m = g.m;
  CliffPoly X = CliffPoly::vector(m, Var::X);
  CliffPoly A = g.a * X + CliffPoly(g.b);
  CliffPoly C = cx_plus_d(g);
  RadialFunction phi = RadialFunction(A * C.conj()) * norm_power(g, -2);
  return vector_coords(phi, m);
}

std::vector<RadialFunction> mobius_u_images(const MobiusGenerator& g) {
  const int m = g.m;
  CliffPoly C = cx_plus_d(g);
  CliffPoly U = CliffPoly::vector(m, Var::U);
  RadialFunction up = RadialFunction(C * U * C.reversion()) * norm_power(g, -2);
  return vector_coords(up, m);
}

RadialFunction conformal_weight(const MobiusGenerator& g, Weight w) {
  return norm_power(g, w == Weight::J2 ? 2 - g.m : -g.m - 2);
}

namespace {

RadialFunction compose(const RadialFunction& f, const MobiusGenerator& g) {
  // x first: the u-images are written in the original x
  RadialFunction fx = substitute(f, Var::X, mobius_x_images(g));
  return substitute(fx, Var::U, mobius_u_images(g));
}

}  // namespace

RadialFunction mobius_transform_function(const CliffPoly& f, const MobiusGenerator& g, Weight w, Action action) {
  if (f.dim() != g.m) throw DimensionError("mobius_transform_function: dimension mismatch");
  RadialFunction r = conformal_weight(g, w) * compose(RadialFunction(f), g);
  if (action == Action::Spinor) r = spinor_factor(g, false) * r;
  return r;
}

const char* conformal_op_name(ConformalOp op) {
  switch (op) {
    case ConformalOp::RkAk: return "RkAk";
    case ConformalOp::QkBk: return "QkBk";
    case ConformalOp::D2: return "D2";
  }
  return "?";
}

RadialFunction apply_conformal_op(ConformalOp op, int m, int k, const RadialFunction& f) {
  switch (op) {
    case ConformalOp::RkAk:
      return apply(OperatorSpec{OpName::Rk, Side::Left, m, k}, apply(OperatorSpec{OpName::Ak, Side::Left, m, k}, f));
    case ConformalOp::QkBk:
      return apply(OperatorSpec{OpName::Qk, Side::Left, m, k}, apply(OperatorSpec{OpName::Bk, Side::Left, m, k}, f));
    case ConformalOp::D2:
      return apply(OperatorSpec{OpName::D2, Side::Left, m, k}, f);
  }
  throw DomainError("unknown conformal operator");
}

RadialFunction conformal_invariance_residual(int m, int k, const MobiusGenerator& g, const CliffPoly& f,
                                             ConformalOp which, Action action) {
  // J_{-2}^{-1} s^{-1} Op[J_2 s f o g] - (Op f) o g, multiplied through by s J_{-2}: same zero
  // set, and negative radial powers never need expanding
  RadialFunction lhs = apply_conformal_op(which, m, k, mobius_transform_function(f, g, Weight::J2, action));
  RadialFunction rhs = conformal_weight(g, Weight::Jminus2) * compose(apply_conformal_op(which, m, k, RadialFunction(f)), g);
  if (action == Action::Spinor) rhs = spinor_factor(g, false) * rhs;
  return lhs - rhs;
}

}  // namespace hsl
