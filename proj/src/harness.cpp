#include "hsl/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "json.hpp"

namespace hsl {

const char* mode_name(Mode m) { return m == Mode::Exact ? "exact" : "float"; }

Mode parse_mode(const std::string& s) {
  if (s == "exact") return Mode::Exact;
  if (s == "float") return Mode::Float;
  throw ParseError("mode must be exact or float: " + s);
}

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skip: return "skip";
  }
  return "?";
}

void RunConfig::validate() const {
  for (const auto& [m, k] : pairs) {
    if (m < 3) throw DomainError("RunConfig: m >= 3 required");
    if (m > kMaxDim) throw DimensionError("RunConfig: m too large");
    if (k < 0) throw DomainError("RunConfig: k >= 0 required");
  }
  if (!(tol > 0)) throw DomainError("RunConfig: tol > 0 required");
  if (xdeg < 0) throw DomainError("RunConfig: xdeg >= 0 required");
  if (quad_degree < 0) throw DomainError("RunConfig: quad_degree >= 0 required");
}

const std::vector<std::string>& check_ids() {
  static const std::vector<std::string> ids = {
      "clifford", "spaces",    "kernels",   "decomposition", "commutation", "fundamental",   "stokes-rk",
      "stokes-tk", "stokes-qk", "conformal", "lemma72",       "borel-pompeiu", "green"};
  return ids;
}

std::vector<mpq_class> offcentre_pole(int m) {
  std::vector<mpq_class> y(m, 0);
  y[0] = mpq_class(1, 5);
  y[1] = mpq_class(-1, 10);
  if (m > 2) y[2] = mpq_class(1, 10);
  return y;
}

namespace {

// ---- seeded randomness ---------------------------------------------------------

std::uint64_t derive_seed(std::uint64_t base, const std::string& tag, int m, int k) {
  // FNV-1a over the tag, mixed with the base seed and (m, k)
  std::uint64_t h = 1469598103934665603ull ^ base;
  auto mix = [&](unsigned char c) {
    h ^= c;
    h *= 1099511628211ull;
  };
  for (char c : tag) mix(static_cast<unsigned char>(c));
  mix(static_cast<unsigned char>(m));
  mix(static_cast<unsigned char>(k));
  return h;
}

struct Rng {
  std::mt19937_64 g;
  explicit Rng(std::uint64_t s) : g(s) {}
  int uniform(int a, int b) { return std::uniform_int_distribution<int>(a, b)(g); }
  mpq_class small_rational() {
    int num = 0;
    while (num == 0) num = uniform(-9, 9);
    mpq_class q(num, uniform(1, 9));
    q.canonicalize();
    return q;
  }
  Multivector multivector(int m, int nterms) {
    Multivector a(m);
    for (int i = 0; i < nterms; ++i) a.add(static_cast<Blade>(uniform(0, (1 << m) - 1)), ExactScalar(small_rational()));
    if (a.is_zero()) a = Multivector(m, 1);
    return a;
  }
  Monomial x_monomial(int m, int maxdeg) {
    Monomial mono;
    int d = uniform(0, maxdeg);
    for (int j = 0; j < d; ++j) ++mono.at(Var::X, uniform(0, m - 1));
    return mono;
  }
};

std::vector<Monomial> x_monomials(int m, int maxdeg) {
  std::vector<Monomial> out{Monomial{}};
  std::vector<Monomial> layer{Monomial{}};
  for (int d = 1; d <= maxdeg; ++d) {
    std::vector<Monomial> next;
    for (const auto& mono : layer) {
      int last = 0;
      for (int i = 0; i < m; ++i)
        if (mono.at(Var::X, i)) last = i;
      for (int i = last; i < m; ++i) {
        Monomial n = mono;
        ++n.at(Var::X, i);
        next.push_back(n);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

CliffPoly x_power(int m, const Monomial& mono) { return CliffPoly::monomial(m, mono, Multivector(m, 1)); }

// ---- small helpers ---------------------------------------------------------------

struct Tally {
  bool zero = true;
  double worst = 0;
  void add(const RadialFunction& r) {
    if (!r.is_zero()) {
      zero = false;
      worst = std::max(worst, std::max(r.canonical().max_abs(), 1e-300));
    }
  }
  void add(const CliffPoly& p) { add(RadialFunction(p)); }
  void add(const Multivector& a) {
    if (!a.is_zero()) {
      zero = false;
      worst = std::max(worst, std::max(a.max_abs(), 1e-300));
    }
  }
  void flag(bool ok) {
    if (!ok) {
      zero = false;
      worst = std::max(worst, 1.0);
    }
  }
};

RadialFunction integrate_u(const RadialFunction& f) {
  return f.map_parts([](const CliffPoly& p) { return integrate_sphere(p, Var::U); });
}

// value at z = 0 with u renamed to v
CliffPoly value_at_pole(const CliffPoly& f) {
  std::vector<PolyTerm> t;
  for (const auto& term : f.terms())
    if (term.mono.degree(Var::X) == 0) t.push_back(term);
  return rename_var(CliffPoly::from_terms(f.dim(), std::move(t)), Var::U, Var::V);
}

OperatorSpec op(OpName n, int m, int k, Side s = Side::Left) { return OperatorSpec{n, s, m, k}; }

struct Outcome {
  Status status = Status::Pass;
  double residual = 0;
  std::string reason;
  std::string detail;
  Mode mode = Mode::Exact;
};

Outcome exact_outcome(const Tally& t, std::string detail = {}) {
  Outcome o;
  o.status = t.zero ? Status::Pass : Status::Fail;
  o.residual = t.zero ? 0.0 : t.worst;
  if (!t.zero) o.reason = "residual not identically zero";
  o.detail = std::move(detail);
  return o;
}

Outcome skip(std::string why) {
  Outcome o;
  o.status = Status::Skip;
  o.reason = std::move(why);
  return o;
}

// ---- individual checks ------------------------------------------------------------

Outcome check_clifford(int m, std::uint64_t seed) {
  Rng rng(seed);
  Tally t;
  for (int trial = 0; trial < 8; ++trial) {
    Multivector a = rng.multivector(m, 4), b = rng.multivector(m, 4), c = rng.multivector(m, 4);
    t.add((a * b) * c - a * (b * c));
    t.add(reversion(a * b) - reversion(b) * reversion(a));
    t.add(clifford_conjugate(a * b) - clifford_conjugate(b) * clifford_conjugate(a));
    t.add(reversion(reversion(a)) - a);
    t.flag(Multivector::parse(a.str(), m) == a);
    std::vector<ExactScalar> xs;
    ExactScalar nn;
    for (int i = 0; i < m; ++i) {
      xs.emplace_back(rng.small_rational());
      nn += xs.back() * xs.back();
    }
    Multivector x = vector_embed(xs);
    t.add(x * x + Multivector(m, nn));
  }
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j)
      t.add(Multivector::e(m, i) * Multivector::e(m, j) + Multivector::e(m, j) * Multivector::e(m, i) +
            Multivector(m, i == j ? 2 : 0));
  return exact_outcome(t);
}

Outcome check_spaces(int m, int k) {
  Tally t;
  std::ostringstream det;
  SpaceBasis hk = build_basis(m, k, Space::Hk);
  SpaceBasis mk = build_basis(m, k, Space::Mk);
  t.flag(static_cast<long>(hk.elements.size()) == harmonic_dimension(m, k));
  t.flag(static_cast<long>(mk.elements.size()) == monogenic_rank(m, k));
  for (const auto& e : hk.elements) t.flag(domain_check(RadialFunction(e), Space::Hk, m, k).ok);
  for (const auto& e : mk.elements) t.flag(domain_check(RadialFunction(e), Space::Mk, m, k).ok);
  const auto& z2 = zonal_kernel(m, k, ReproducingKernel::Kind::Z2);
  const auto& z1 = zonal_kernel(m, k, ReproducingKernel::Kind::Z1);
  t.flag(verify_reproducing(z2, hk));
  t.flag(verify_reproducing(z1, mk));
  det << "dim Hk=" << hk.elements.size() << " rank Mk=" << mk.elements.size() << " nullity Z2=" << z2.nullity
      << " Z1=" << z1.nullity;
  if (k >= 1) {
    SpaceBasis umk = build_basis(m, k, Space::uMk1);
    t.flag(static_cast<long>(umk.elements.size()) == monogenic_rank(m, k - 1));
    for (const auto& e : umk.elements) t.flag(domain_check(RadialFunction(e), Space::uMk1, m, k).ok);
    // orthogonality of right-monogenic p_{k-1} u against left-monogenic p_k
    SpaceBasis right = build_basis(m, k - 1, Space::Mk, Side::Right);
    CliffPoly U = CliffPoly::vector(m, Var::U);
    for (const auto& p : right.elements)
      for (const auto& q : mk.elements) t.add(integrate_sphere(p * U * q, Var::U));
    det << " orthogonality pairs=" << right.elements.size() * mk.elements.size();
  }
  return exact_outcome(t, det.str());
}

CliffPoly x_constant_test(int m, int k, std::uint64_t seed) {
  return random_space_function(build_basis(m, k, Space::Hk), 0, seed, 2);
}

Outcome check_kernels(int m, int k, std::uint64_t seed) {
  Tally t;
  std::ostringstream det;
  FundamentalSolution e = build_kernel(m, k, KernelKind::Ek);
  FundamentalSolution ep = build_kernel(m, k, KernelKind::Ek, KernelForm::Printed);
  t.add(annihilation_check(e));
  t.add(annihilation_check(ep));
  t.add(swapped_form(m, k, KernelKind::Ek) - ep.value);
  if (k >= 1) {
    FundamentalSolution f = build_kernel(m, k, KernelKind::Fk);
    FundamentalSolution fp = build_kernel(m, k, KernelKind::Fk, KernelForm::Printed);
    t.add(annihilation_check(f));
    t.add(annihilation_check(fp));
    t.add(swapped_form(m, k, KernelKind::Fk) - fp.value);
    ReproductionResult rep = run_eq_one_reproduction(m, k, x_constant_test(m, k, seed));
    t.flag(rep.plus_exact);
    t.flag(rep.minus_exact);
    t.flag(rep.decay_ratio >= 2.0);
    det << "reproduction decay ratio=" << rep.decay_ratio;
  } else {
    ReproductionResult rep = run_eq_one_reproduction(m, 0, CliffPoly(Multivector(m, 1)));
    t.flag(rep.plus_exact);
  }
  return exact_outcome(t, det.str());
}

std::vector<CliffPoly> sweep_functions(int m, int k, int xdeg) {
  std::vector<CliffPoly> out;
  SpaceBasis hk = build_basis(m, k, Space::Hk);
  auto monos = x_monomials(m, xdeg);
  for (const auto& h : hk.elements)
    for (const auto& mono : monos) out.push_back(h * x_power(m, mono));
  return out;
}

Outcome check_decomposition(int m, int k, int xdeg) {
  if (k < 1) return skip("k >= 1 required (P_k^- undefined at k=0)");
  if (xdeg < 2) return skip("xdeg >= 2 required (D2 is second order)");
  Tally t;
  auto fs = sweep_functions(m, k, xdeg);
  for (const auto& f : fs) {
    DecompositionResidual r = verify_decomposition(m, k, RadialFunction(f));
    t.add(r.eq_first);
    t.add(r.eq_second);
    t.add(r.lemma);
    t.add(r.ra_qb);
  }
  return exact_outcome(t, "functions=" + std::to_string(fs.size()));
}

Outcome check_commutation(int m, int k, int xdeg) {
  Tally t;
  auto fs = sweep_functions(m, k, xdeg);
  for (const auto& p : fs) {
    RadialFunction f(p);
    // D_x(u f) = -u D_x f - 2<u,D_x> f
    t.add(dirac(vector_mul(f, Var::U), Var::X) + vector_mul(dirac(f, Var::X), Var::U) + 2 * u_dot_dx(f));
    // D_u(u f) = -m f - 2 E_u f - u D_u f
    t.add(dirac(vector_mul(f, Var::U), Var::U) + m * f + 2 * euler(f, Var::U) +
          vector_mul(dirac(f, Var::U), Var::U));
    if (k >= 1) {
      RadialFunction plus = apply(op(OpName::Pk_plus, m, k), f);
      RadialFunction minus = apply(op(OpName::Pk_minus, m, k), f);
      t.add(verify_commutation(m, k, minus).first);
      t.add(verify_commutation(m, k, plus).second);
    }
  }
  return exact_outcome(t, "functions=" + std::to_string(fs.size()));
}

Outcome check_fundamental(int m, int k) {
  if (m < 5) return skip("m<5 for H_k");
  if (k < 1) return skip("k >= 1 required");
  Tally t;
  auto [da, db] = verify_fundamental_relations(m, k);
  t.add(da);
  t.add(db);
  t.add(annihilation_check(build_kernel(m, k, KernelKind::Ek)));
  t.add(annihilation_check(build_kernel(m, k, KernelKind::Fk)));
  t.add(annihilation_check(build_kernel(m, k, KernelKind::Hk)));
  return exact_outcome(t);
}

enum class StokesKind { R, T, Q };

Outcome check_stokes(int m, int k, StokesKind kind, const RunConfig& cfg, std::uint64_t seed) {
  if (kind != StokesKind::R && k < 1) return skip("k >= 1 required (u M_{k-1})");
  Space fs = kind == StokesKind::Q ? Space::uMk1 : Space::Mk;
  Space gs = kind == StokesKind::R ? Space::Mk : Space::uMk1;
  SpaceBasis fb = build_basis(m, k, fs, Side::Left);
  SpaceBasis gb = build_basis(m, k, gs, Side::Right);
  OperatorSpec fop = op(kind == StokesKind::R ? OpName::Rk : kind == StokesKind::T ? OpName::Tk_star : OpName::Qk, m, k);
  OperatorSpec gop =
      op(kind == StokesKind::R ? OpName::Rk : kind == StokesKind::T ? OpName::Tk : OpName::Qk, m, k, Side::Right);
  Ball ball;
  QuadratureRule rule = cfg.mode == Mode::Exact ? QuadratureRule::exact(m) : QuadratureRule::product_gauss(m, cfg.quad_degree);
  Tally t;
  double worst = 0;
  const int samples = 2;
  for (int s = 0; s < samples; ++s) {
    CliffPoly f = random_space_function(fb, cfg.xdeg, seed + 2 * s);
    CliffPoly g = random_space_function(gb, cfg.xdeg, seed + 2 * s + 1);
    RadialFunction F(f), G(g);
    RadialFunction vol_integrand = integrate_u(apply(gop, G) * F + G * apply(fop, F));
    RadialFunction bd_integrand = integrate_u(G * RadialFunction(CliffPoly::vector(m, Var::X)) * F);
    CliffPoly vol = integrate_ball_x(vol_integrand, ball, rule);
    CliffPoly bd = integrate_boundary_sphere_x(bd_integrand, ball, rule);
    CliffPoly diff = vol - bd;
    t.add(diff);
    worst = std::max(worst, diff.max_abs());
  }
  if (cfg.mode == Mode::Exact) return exact_outcome(t, "samples=" + std::to_string(samples));
  Outcome o;
  o.mode = Mode::Float;
  o.residual = worst;
  o.status = worst <= cfg.tol ? Status::Pass : Status::Fail;
  if (o.status == Status::Fail) o.reason = "residual above tolerance";
  return o;
}

// generators used by the conformal check
std::vector<std::pair<std::string, MobiusGenerator>> conformal_generators(int m) {
  std::vector<mpq_class> shift(m, 0);
  shift[0] = 1;
  shift[1] = mpq_class(-1, 2);
  Multivector a = ExactScalar::rational(3, 5) * Multivector::e(m, 1) + ExactScalar::rational(4, 5) * Multivector::e(m, 3);
  Multivector b = ExactScalar::rational(5, 13) * Multivector::e(m, 2) + ExactScalar::rational(12, 13) * Multivector::e(m, m);
  return {{"translation", MobiusGenerator::translation(shift)},
          {"dilation", MobiusGenerator::dilation(m, 2)},
          {"rotation-e1e2", MobiusGenerator::rotation(Multivector::e(m, 1) * Multivector::e(m, 2))},
          {"rotation-ab", MobiusGenerator::rotation(a * b)},
          {"inversion", MobiusGenerator::inversion(m)}};
}

Outcome check_conformal(int m, int k, int xdeg, std::uint64_t seed) {
  if (k < 1) return skip("k >= 1 required (A_k, B_k)");
  CliffPoly f = random_space_function(build_basis(m, k, Space::Hk), std::min(xdeg, 2), seed, 2);
  Tally t;
  std::string failed;
  for (const auto& [name, g] : conformal_generators(m)) {
    for (ConformalOp which : {ConformalOp::D2, ConformalOp::RkAk, ConformalOp::QkBk}) {
      // D2 is scalar; R_kA_k and Q_kB_k act on spinor-valued outputs
      Action action = which == ConformalOp::D2 ? Action::Scalar : Action::Spinor;
      RadialFunction r = conformal_invariance_residual(m, k, g, f, which, action);
      if (!r.is_zero()) failed += (failed.empty() ? "" : ", ") + name + "/" + conformal_op_name(which);
      t.add(r);
    }
  }
  Outcome o = exact_outcome(t);
  if (!failed.empty()) o.reason = "nonzero residual: " + failed;
  return o;
}

Outcome check_lemma72(int m, int k, const RunConfig& cfg) {
  SpaceBasis hk = build_basis(m, k, Space::Hk);
  CliffPoly X = CliffPoly::vector(m, Var::X), U = CliffPoly::vector(m, Var::U);
  CliffPoly xux = X * U * X;
  std::vector<RadialFunction> img;
  for (int i = 0; i < m; ++i) img.emplace_back(xux.blade_part(Blade(1) << i));
  QuadratureRule rule = cfg.mode == Mode::Exact ? QuadratureRule::exact(m)
                                                : QuadratureRule::product_gauss(m, std::max(cfg.quad_degree, 2 * k));
  Ball ball;
  Tally t;
  double worst = 0;
  for (const auto& h : hk.elements) {
    RadialFunction hx = substitute(RadialFunction(h), Var::U, img);
    CliffPoly lhs = omega(m).inverse() * integrate_boundary_sphere_x(hx, ball, rule);
    CliffPoly d = lhs - a_k(m, k) * h;
    t.add(d);
    worst = std::max(worst, d.max_abs());
  }
  if (cfg.mode == Mode::Exact) return exact_outcome(t, "basis=" + std::to_string(hk.elements.size()));
  Outcome o;
  o.mode = Mode::Float;
  o.residual = worst;
  o.status = worst <= cfg.tol ? Status::Pass : Status::Fail;
  if (o.status == Status::Fail) o.reason = "residual above tolerance";
  return o;
}

struct BoundaryIntegrands {
  RadialFunction boundary;  // u-paired, normal included
  RadialFunction volume;
  CliffPoly at_pole;
};

BoundaryIntegrands bp_integrands(int m, int k, const CliffPoly& fz, const Ball& ball) {
  RadialFunction H = build_kernel(m, k, KernelKind::Hk).value;
  RadialFunction E = build_kernel(m, k, KernelKind::Ek).value;
  RadialFunction F = build_kernel(m, k, KernelKind::Fk).value;
  mpq_class c = mpq_class(m + 2 * k - 4) * controls::current().den_boundary;
  if (c == 0) throw SingularParameter("m+2k-4 = 0");
  ExactScalar two_c(mpq_class(2) / c), mk_c(mpq_class(m + 2 * k) / c);
  RadialFunction Hp = apply(op(OpName::Pk_plus, m, k, Side::Right), H);
  RadialFunction Hm = apply(op(OpName::Pk_minus, m, k, Side::Right), H);
  RadialFunction K1 = Hp - two_c * Hm;
  RadialFunction K3 = two_c * Hp + mk_c * Hm;
  RadialFunction f(fz);
  RadialFunction Pf = apply(op(OpName::Pk_plus, m, k), f);
  RadialFunction Mf = apply(op(OpName::Pk_minus, m, k), f);
  RadialFunction n(sphere_normal(m, ball, Orientation::Outward));
  BoundaryIntegrands b;
  b.boundary = integrate_u(K1 * n * apply(op(OpName::Rk, m, k), Pf)) + integrate_u(E * n * Pf) +
               integrate_u(K3 * n * apply(op(OpName::Qk, m, k), Mf)) + integrate_u(F * n * Mf);
  b.volume = integrate_u(H * apply(op(OpName::D2, m, k), f));
  b.at_pole = value_at_pole(fz);
  return b;
}

}  // namespace

// ---- public pieces -------------------------------------------------------------------

CliffPoly random_space_function(const SpaceBasis& basis, int xdeg, std::uint64_t seed, int nterms) {
  const int m = basis.m;
  Rng rng(seed);
  CliffPoly out(m);
  if (basis.elements.empty()) return out;
  for (int t = 0; t < nterms; ++t) {
    const CliffPoly& e = basis.elements[rng.uniform(0, static_cast<int>(basis.elements.size()) - 1)];
    CliffPoly xp(m);
    int nm = rng.uniform(1, 2);
    for (int j = 0; j < nm; ++j)
      xp += CliffPoly::monomial(m, rng.x_monomial(m, xdeg), Multivector(m, ExactScalar(rng.small_rational())));
    Multivector c = rng.multivector(m, 2);
    // Clifford constants go on the module side so values stay in the space
    if (basis.side == Side::Left && !basis.scalar())
      out += e * xp * c;
    else
      out += c * e * xp;
  }
  return out;
}

CliffPoly build_d2_harmonic(int m, int k, int xdeg, std::uint64_t seed, size_t* kernel_dim) {
  SpaceBasis hk = build_basis(m, k, Space::Hk);
  auto monos = x_monomials(m, xdeg);
  std::vector<CliffPoly> cols;
  std::vector<CliffPoly> images;
  std::map<std::pair<Monomial, Blade>, size_t> rows;
  for (const auto& h : hk.elements)
    for (const auto& mono : monos) {
      CliffPoly f = h * x_power(m, mono);
      CliffPoly d = apply(op(OpName::D2, m, k), f);
      for (const auto& term : d.terms()) rows.emplace(std::make_pair(term.mono, term.blade), rows.size());
      cols.push_back(f);
      images.push_back(d);
    }
  RationalMatrix A(rows.size(), cols.size());
  for (size_t j = 0; j < images.size(); ++j)
    for (const auto& term : images[j].terms()) {
      if (!term.c.is_rational()) throw DomainError("build_d2_harmonic: irrational coefficient");
      A(rows.at({term.mono, term.blade}), j) = term.c.to_rational();
    }
  auto ns = null_space(A);
  if (kernel_dim) *kernel_dim = ns.size();
  Rng rng(seed);
  CliffPoly out(m);
  for (const auto& v : ns) {
    if (rng.uniform(0, 2) == 0) continue;  // sparse combination
    CliffPoly kv(m);
    for (size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0) kv += ExactScalar(v[j]) * cols[j];
    out += rng.multivector(m, 2) * kv;
  }
  if (out.is_zero() && !ns.empty()) {
    for (size_t j = 0; j < ns[0].size(); ++j)
      if (ns[0][j] != 0) out += ExactScalar(ns[0][j]) * cols[j];
  }
  return out;
}

BorelPompeiuResult borel_pompeiu_defect(int m, int k, const CliffPoly& f, bool centred, int quad_degree,
                                        const mpq_class& radius) {
  if (m == 4) throw SingularParameter("m = 4");
  if (m < 5) throw DomainError("m<5 for H_k");
  if (k < 1) throw DomainError("k >= 1 required");
  Ball ball;
  CliffPoly fz = f;
  if (centred) {
    ball.radius = radius;
  } else {
    // Omega = B_1(0), pole y; in z = x - y the centre sits at -y
    std::vector<mpq_class> y = offcentre_pole(m);
    fz = translate_x(f, y);
    for (const auto& q : y) ball.offset.push_back(-q);
  }
  BoundaryIntegrands b = bp_integrands(m, k, fz, ball);
  BorelPompeiuResult r;
  r.volume_nonzero = !b.volume.is_zero();
  if (centred) {
    QuadratureRule ex = QuadratureRule::exact(m);
    CliffPoly d = integrate_boundary_sphere_x(b.boundary, ball, ex) + integrate_ball_x(b.volume, ball, ex) - b.at_pole;
    r.exact_zero = d.is_zero();
    r.defect = d.max_abs();
    return r;
  }
  auto defect = [&](const QuadratureRule& q) {
    CliffPoly d = integrate_boundary_sphere_x(b.boundary, ball, q) + integrate_ball_x(b.volume, ball, q) - b.at_pole;
    return d.max_abs();
  };
  QuadratureRule q = QuadratureRule::product_gauss(m, quad_degree);
  r.defect = defect(q);
  r.refined_defect = defect(q.refined());
  return r;
}

ReproductionResult run_eq_one_reproduction(int m, int k, const CliffPoly& h) {
  ReproductionResult res;
  RadialFunction E = build_kernel(m, k, KernelKind::Ek).value;
  QuadratureRule ex = QuadratureRule::exact(m);
  auto pair_at = [&](const RadialFunction& K, const CliffPoly& g, const mpq_class& r) {
    Ball ball;
    ball.radius = r;
    RadialFunction n(sphere_normal(m, ball, Orientation::Outward));
    return integrate_boundary_sphere_x(integrate_u(K * n * RadialFunction(g)), ball, ex);
  };
  CliffPoly plus = k >= 1 ? apply(op(OpName::Pk_plus, m, k), h) : h;
  res.plus_exact = true;
  for (mpq_class r : {mpq_class(1), mpq_class(1, 2)})
    res.plus_exact = res.plus_exact && (pair_at(E, plus, r) - value_at_pole(plus)).is_zero();
  if (k < 1) return res;
  RadialFunction F = build_kernel(m, k, KernelKind::Fk).value;
  CliffPoly minus = apply(op(OpName::Pk_minus, m, k), h);
  res.minus_exact = true;
  for (mpq_class r : {mpq_class(1), mpq_class(1, 2)})
    res.minus_exact = res.minus_exact && (pair_at(F, minus, r) - value_at_pole(minus)).is_zero();
  // x-dependent data h (x_1 + x_1^2), vanishing at the pole: defect at r = 1/2 and 1/4
  CliffPoly x1 = CliffPoly::variable(m, Var::X, 0);
  CliffPoly hx = h * (x1 + x1 * x1);
  CliffPoly hp = apply(op(OpName::Pk_plus, m, k), hx), hm = apply(op(OpName::Pk_minus, m, k), hx);
  auto defect = [&](const mpq_class& r) {
    return std::max((pair_at(E, hp, r) - value_at_pole(hp)).max_abs(), (pair_at(F, hm, r) - value_at_pole(hm)).max_abs());
  };
  double d2 = defect(mpq_class(1, 2)), d4 = defect(mpq_class(1, 4));
  res.decay_ratio = d4 == 0 ? (d2 == 0 ? INFINITY : 0) : d2 / d4;
  return res;
}

CheckReport run_reproduction(const RunConfig& cfg, int m, int k) { return run_check("kernels", m, k, cfg); }

namespace {

Outcome bp_outcome(const RunConfig& cfg, int m, int k, bool centred, bool green, std::uint64_t seed) {
  if (m < 5) return skip("m<5 for H_k");
  if (k < 1) return skip("k >= 1 required");
  std::vector<CliffPoly> fs;
  std::ostringstream det;
  const int xd = std::min(cfg.xdeg, 2);
  if (green) {
    size_t dim = 0;
    CliffPoly f = build_d2_harmonic(m, k, xd, seed, &dim);
    fs.push_back(f);
    det << "D2-kernel dim=" << dim << " (xdeg " << xd << ")";
    if (!apply(op(OpName::D2, m, k), f).is_zero()) return exact_outcome([] { Tally t; t.flag(false); return t; }(), det.str());
  } else {
    SpaceBasis hk = build_basis(m, k, Space::Hk);
    fs.push_back(random_space_function(hk, 0, seed, 2));  // D2 f = 0
    CliffPoly f2 = random_space_function(hk, xd, seed + 1, 3);
    if (k == 1) {
      Monomial mono;
      mono.at(Var::U, 0) = 1;
      mono.at(Var::X, 0) = 2;
      f2 += CliffPoly::monomial(m, mono, Multivector(m, 1));  // u_1 x_1^2
    }
    fs.push_back(f2);
  }
  Outcome o;
  if (centred) {
    Tally t;
    bool volume_seen = false;
    for (const auto& f : fs) {
      BorelPompeiuResult r = borel_pompeiu_defect(m, k, f, true, cfg.quad_degree);
      if (!r.exact_zero) t.add(Multivector(m, ExactScalar::approx(std::max(r.defect, 1e-300))));
      volume_seen = volume_seen || r.volume_nonzero;
    }
    if (!green && !volume_seen) t.flag(false);
    det << (det.str().empty() ? "" : "; ") << "centred B_1(y), outer normal, volume term "
        << (volume_seen ? "nonzero" : "zero");
    return exact_outcome(t, det.str());
  }
  o.mode = Mode::Float;
  double worst = 0, worst_ref = 0;
  for (const auto& f : fs) {
    BorelPompeiuResult r = borel_pompeiu_defect(m, k, f, false, cfg.quad_degree);
    worst = std::max(worst, r.defect);
    worst_ref = std::max(worst_ref, r.refined_defect);
  }
  o.residual = worst;
  o.status = worst <= cfg.tol ? Status::Pass : Status::Fail;
  if (o.status == Status::Fail) o.reason = "defect above tolerance";
  char buf[160];
  std::snprintf(buf, sizeof buf, "off-centre pole, degree %d defect %.3e, refined defect %.3e", cfg.quad_degree, worst,
                worst_ref);
  det << (det.str().empty() ? "" : "; ") << buf;
  o.detail = det.str();
  return o;
}

CheckReport to_report(const std::string& id, int m, int k, const RunConfig& cfg, const Outcome& o, double ms) {
  CheckReport r;
  r.check = id;
  r.m = m;
  r.k = k;
  r.mode = o.mode;
  r.status = o.status;
  r.residual = o.residual;
  r.elapsed_ms = ms;
  r.seed = cfg.seed;
  r.reason = o.reason;
  r.detail = o.detail;
  return r;
}

}  // namespace

CheckReport run_borel_pompeiu(const RunConfig& cfg, int m, int k, bool centred) {
  controls::Scoped scope(cfg.overrides);
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = bp_outcome(cfg, m, k, centred, false, derive_seed(cfg.seed, "borel-pompeiu", m, k));
  } catch (const std::exception& e) {
    o = skip(e.what());
  }
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (!centred) o.mode = Mode::Float;
  return to_report("borel-pompeiu", m, k, cfg, o, ms);
}

CheckReport run_green(const RunConfig& cfg, int m, int k, bool centred) {
  controls::Scoped scope(cfg.overrides);
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = bp_outcome(cfg, m, k, centred, true, derive_seed(cfg.seed, "green", m, k));
  } catch (const std::exception& e) {
    o = skip(e.what());
  }
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (!centred) o.mode = Mode::Float;
  return to_report("green", m, k, cfg, o, ms);
}

CheckReport run_check(const std::string& id, int m, int k, const RunConfig& cfg) {
  if (id == "borel-pompeiu") return run_borel_pompeiu(cfg, m, k, cfg.mode == Mode::Exact);
  if (id == "green") return run_green(cfg, m, k, cfg.mode == Mode::Exact);
  controls::Scoped scope(cfg.overrides);
  const std::uint64_t seed = derive_seed(cfg.seed, id, m, k);
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    if (id == "clifford") o = check_clifford(m, seed);
    else if (id == "spaces") o = check_spaces(m, k);
    else if (id == "kernels") o = check_kernels(m, k, seed);
    else if (id == "decomposition") o = check_decomposition(m, k, cfg.xdeg);
    else if (id == "commutation") o = check_commutation(m, k, cfg.xdeg);
    else if (id == "fundamental") o = check_fundamental(m, k);
    else if (id == "stokes-rk") o = check_stokes(m, k, StokesKind::R, cfg, seed);
    else if (id == "stokes-tk") o = check_stokes(m, k, StokesKind::T, cfg, seed);
    else if (id == "stokes-qk") o = check_stokes(m, k, StokesKind::Q, cfg, seed);
    else if (id == "conformal") o = check_conformal(m, k, cfg.xdeg, seed);
    else if (id == "lemma72") o = check_lemma72(m, k, cfg);
    else throw ParseError("unknown check id: " + id);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    o = skip(e.what());
  }
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return to_report(id, m, k, cfg, o, ms);
}

std::vector<CheckReport> run_all(const RunConfig& cfg, const std::vector<std::string>& ids) {
  cfg.validate();
  const std::vector<std::string>& list = ids.empty() ? check_ids() : ids;
  for (const auto& id : list)
    if (std::find(check_ids().begin(), check_ids().end(), id) == check_ids().end())
      throw ParseError("unknown check id: " + id);
  std::vector<CheckReport> out;
  for (const auto& [m, k] : cfg.pairs)
    for (const auto& id : list) out.push_back(run_check(id, m, k, cfg));
  return out;
}

std::string report_json_line(const CheckReport& r) {
  nlohmann::ordered_json j;
  j["check"] = r.check;
  j["m"] = r.m;
  j["k"] = r.k;
  j["mode"] = mode_name(r.mode);
  j["status"] = status_name(r.status);
  j["residual"] = r.residual;
  j["elapsed_ms"] = std::round(r.elapsed_ms * 1000) / 1000;
  j["seed"] = r.seed;
  if (!r.reason.empty()) j["reason"] = r.reason;
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j.dump();
}

std::string summary_markdown(const std::vector<CheckReport>& reports) {
  size_t pass = 0, fail = 0, sk = 0;
  for (const auto& r : reports) (r.status == Status::Pass ? pass : r.status == Status::Fail ? fail : sk)++;
  std::ostringstream os;
  os << "# hsl verification summary\n\n";
  os << "pass: " << pass << ", fail: " << fail << ", skip: " << sk << "\n\n";
  os << "| check | m | k | mode | status | residual | ms | note |\n";
  os << "|---|---|---|---|---|---|---|---|\n";
  char buf[64];
  for (const auto& r : reports) {
    std::snprintf(buf, sizeof buf, "%.3g", r.residual);
    std::string note = r.reason;
    if (!r.detail.empty()) note += (note.empty() ? "" : "; ") + r.detail;
    std::replace(note.begin(), note.end(), '|', '/');
    os << "| " << r.check << " | " << r.m << " | " << r.k << " | " << mode_name(r.mode) << " | "
       << status_name(r.status) << " | " << buf << " | " << static_cast<long>(std::lround(r.elapsed_ms)) << " | "
       << note << " |\n";
  }
  return os.str();
}

bool write_reports(const RunConfig& cfg, const std::vector<CheckReport>& reports) {
  bool ok = true;
  if (!cfg.out_jsonl.empty()) {
    std::ofstream js(cfg.out_jsonl);
    for (const auto& r : reports) js << report_json_line(r) << "\n";
    ok = ok && static_cast<bool>(js);
  }
  if (!cfg.out_md.empty()) {
    std::ofstream md(cfg.out_md);
    md << summary_markdown(reports);
    ok = ok && static_cast<bool>(md);
  }
  return ok;
}

bool all_passed(const std::vector<CheckReport>& reports) {
  return std::none_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.status == Status::Fail; });
}

}  // namespace hsl
