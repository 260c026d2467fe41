#include "hsl/calculus.hpp"

#include "hsl/controls.hpp"

#include <algorithm>
#include <map>

namespace hsl {

namespace {

struct NameInfo {
  OpName name;
  const char* token;
};

constexpr NameInfo kNames[] = {
    {OpName::Dx, "Dx"},           {OpName::Du, "Du"},           {OpName::Delta_x, "Delta_x"},
    {OpName::Euler_u, "Euler_u"}, {OpName::u_dot_Dx, "u_dot_Dx"}, {OpName::Du_dot_Dx, "Du_dot_Dx"},
    {OpName::Pk_plus, "Pk+"},     {OpName::Pk_minus, "Pk-"},     {OpName::p0, "p0"},
    {OpName::p1, "p1"},           {OpName::Rk, "Rk"},           {OpName::Tk, "Tk"},
    {OpName::Tk_star, "Tk*"},     {OpName::Qk, "Qk"},           {OpName::D2, "D2"},
    {OpName::Ak, "Ak"},           {OpName::Bk, "Bk"},           {OpName::Ak_r, "Ak_r"},
    {OpName::Bk_r, "Bk_r"},
};

const std::map<std::string, OpName>& aliases() {
  static const std::map<std::string, OpName> a = {
      {"Pk_plus", OpName::Pk_plus}, {"Pk_minus", OpName::Pk_minus}, {"Tk_star", OpName::Tk_star},
      {"Lx", OpName::Delta_x},      {"Eu", OpName::Euler_u},
  };
  return a;
}

ExactScalar inv(long d) { return ExactScalar::rational(1, d); }

// num / (den * factor); factor is 1 outside negative-control runs
ExactScalar frac(long num, long den, const mpq_class& factor) {
  mpq_class q(num, den);
  q.canonicalize();
  q /= factor;
  return ExactScalar(q);
}

RadialFunction pk_plus(const RadialFunction& f, int m, int k, Side s) {
  // left: f + u D_u f / c ; right: f + (f D_u) u / c
  return f + inv(m + 2 * k - 2) * vector_mul(dirac(f, Var::U, s), Var::U, s);
}

RadialFunction pk_minus(const RadialFunction& f, int m, int k, Side s) {
  return ExactScalar::rational(-1, m + 2 * k - 2) * vector_mul(dirac(f, Var::U, s), Var::U, s);
}

// R_k raw formula (P_k^+ D_x); T_k has the same formula; Q_k and T_k^* use P_k^-
RadialFunction rk(const RadialFunction& f, int m, int k, Side s) { return pk_plus(dirac(f, Var::X, s), m, k, s); }
RadialFunction qk(const RadialFunction& f, int m, int k, Side s) { return pk_minus(dirac(f, Var::X, s), m, k, s); }

RadialFunction d2(const RadialFunction& f, int m, int k) {
  RadialFunction r = laplace(f, Var::X);
  if (k == 0) return r;
  const long a = m + 2 * k - 2, b = m + 2 * k - 4;
  RadialFunction g = du_dot_dx(f);
  r += ExactScalar::rational(-4, a) * u_dot_dx(g);
  r += frac(4, a * b, controls::current().den_d2) * norm_sq_mul(du_dot_dx(g), Var::U);
  return r;
}

RadialFunction ak(const RadialFunction& f, int m, int k, Side s) {
  const long c = m + 2 * k - 4;
  return -rk(pk_plus(f, m, k, s), m, k, s) + frac(2, c, controls::current().den_ak) * rk(pk_minus(f, m, k, s), m, k, s);
}

RadialFunction bk(const RadialFunction& f, int m, int k, Side s) {
  const long c = m + 2 * k - 4;
  const mpq_class& fc = controls::current().den_bk;
  return frac(-2, c, fc) * qk(pk_plus(f, m, k, s), m, k, s) - frac(m + 2 * k, c, fc) * qk(pk_minus(f, m, k, s), m, k, s);
}

}  // namespace

const char* space_name(Space s) {
  switch (s) {
    case Space::Hk: return "Hk";
    case Space::Mk: return "Mk";
    case Space::uMk1: return "uMk1";
  }
  return "?";
}

CliffPoly generator_mul(const CliffPoly& f, int i, Side side) {
  const Blade g = Blade(1) << i;
  std::vector<PolyTerm> out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) {
    int sign = side == Side::Left ? blade_product_sign(g, t.blade) : blade_product_sign(t.blade, g);
    out.push_back({t.mono, t.blade ^ g, sign < 0 ? -t.c : t.c});
  }
  return CliffPoly::from_terms(f.dim(), std::move(out));
}

RadialFunction dirac(const RadialFunction& f, Var v, Side side) {
  const int m = f.dim();
  RadialFunction r(m);
  for (int i = 0; i < m; ++i) {
    RadialFunction d = f.diff(v, i);
    for (const auto& [q2, p] : d.parts()) r.add_part(q2, generator_mul(p, i, side));
  }
  return r;
}

RadialFunction laplace(const RadialFunction& f, Var v) {
  RadialFunction r(f.dim());
  for (int i = 0; i < f.dim(); ++i) r += f.diff(v, i).diff(v, i);
  return r;
}

RadialFunction euler(const RadialFunction& f, Var v) {
  return f.map_parts([v](const CliffPoly& p) {
    std::vector<PolyTerm> out;
    for (const auto& t : p.terms()) {
      int d = t.mono.degree(v);
      if (d) out.push_back({t.mono, t.blade, ExactScalar(d) * t.c});
    }
    return CliffPoly::from_terms(p.dim(), std::move(out));
  });
}

RadialFunction u_dot_dx(const RadialFunction& f) {
  RadialFunction r(f.dim());
  for (int i = 0; i < f.dim(); ++i)
    r += f.diff(Var::X, i).map_parts([i](const CliffPoly& p) { return p.times_variable(Var::U, i); });
  return r;
}

RadialFunction du_dot_dx(const RadialFunction& f) {
  RadialFunction r(f.dim());
  for (int i = 0; i < f.dim(); ++i) r += f.diff(Var::X, i).diff(Var::U, i);
  return r;
}

RadialFunction vector_mul(const RadialFunction& f, Var v, Side side) {
  const int m = f.dim();
  RadialFunction r(m);
  for (int i = 0; i < m; ++i)
    for (const auto& [q2, p] : f.parts()) r.add_part(q2, generator_mul(p.times_variable(v, i), i, side));
  return r;
}

RadialFunction norm_sq_mul(const RadialFunction& f, Var v) {
  RadialFunction r(f.dim());
  for (int i = 0; i < f.dim(); ++i)
    r += f.map_parts([v, i](const CliffPoly& p) { return p.times_variable(v, i).times_variable(v, i); });
  return r;
}

void OperatorSpec::validate() const {
  Multivector::check_dim(m);
  if (k < 0) throw DomainError("k must be non-negative");
  const bool needs_k1 = name == OpName::Tk || name == OpName::Tk_star || name == OpName::Qk || name == OpName::p0;
  if (needs_k1 && k < 1) throw DomainError(str() + " requires k >= 1 (it references M_{k-1})");
  if (k == 0 && (name == OpName::Pk_minus || name == OpName::Ak || name == OpName::Bk || name == OpName::Ak_r ||
                 name == OpName::Bk_r))
    throw DomainError(str() + " is undefined for k = 0");
  const bool uses_c = name == OpName::Ak || name == OpName::Bk || name == OpName::Ak_r || name == OpName::Bk_r ||
                      (name == OpName::D2 && k > 0);
  if (uses_c && m + 2 * k - 4 == 0) throw SingularParameter(str() + ": m+2k-4 = 0");
  if (m + 2 * k - 2 == 0) throw SingularParameter(str() + ": m+2k-2 = 0");
}

std::string OperatorSpec::str() const {
  for (const auto& n : kNames)
    if (n.name == name) {
      std::string s = n.token;
      const bool explicit_r = name == OpName::Ak_r || name == OpName::Bk_r;
      if (side == Side::Right && !explicit_r) s += "_r";
      return s;
    }
  return "?";
}

OperatorSpec OperatorSpec::parse(std::string_view token, int m, int k) {
  std::string t(token);
  t.erase(std::remove(t.begin(), t.end(), ' '), t.end());
  for (const auto& n : kNames)
    if (t == n.token) return {n.name, (n.name == OpName::Ak_r || n.name == OpName::Bk_r) ? Side::Right : Side::Left, m, k};
  if (auto it = aliases().find(t); it != aliases().end()) return {it->second, Side::Left, m, k};
  if (t.size() > 2 && t.substr(t.size() - 2) == "_r") {
    OperatorSpec s = parse(t.substr(0, t.size() - 2), m, k);
    s.side = Side::Right;
    return s;
  }
  throw ParseError("unknown operator '" + t + "'");
}

RadialFunction apply(const OperatorSpec& op, const RadialFunction& f) {
  op.validate();
  if (f.dim() != 0 && f.dim() != op.m) throw DimensionError("operator dimension does not match function");
  const int m = op.m, k = op.k;
  const Side s = op.side;
  switch (op.name) {
    case OpName::Dx: return dirac(f, Var::X, s);
    case OpName::Du: return dirac(f, Var::U, s);
    case OpName::Delta_x: return laplace(f, Var::X);
    case OpName::Euler_u: return euler(f, Var::U);
    case OpName::u_dot_Dx: return u_dot_dx(f);
    case OpName::Du_dot_Dx: return du_dot_dx(f);
    case OpName::Pk_plus:
    case OpName::p1: return pk_plus(f, m, k, s);
    case OpName::Pk_minus: return pk_minus(f, m, k, s);
    case OpName::p0: return ExactScalar::rational(-1, m + 2 * k - 2) * dirac(f, Var::U, s);
    case OpName::Rk:
    case OpName::Tk: return rk(f, m, k, s);
    case OpName::Tk_star:
    case OpName::Qk: return qk(f, m, k, s);
    case OpName::D2: return d2(f, m, k);
    case OpName::Ak: return ak(f, m, k, s);
    case OpName::Bk: return bk(f, m, k, s);
    case OpName::Ak_r: return ak(f, m, k, Side::Right);
    case OpName::Bk_r: return bk(f, m, k, Side::Right);
  }
  throw DomainError("unhandled operator");
}

CliffPoly apply(const OperatorSpec& op, const CliffPoly& f) { return apply(op, RadialFunction(f)).as_polynomial(); }

std::vector<OperatorSpec> parse_pipeline(std::string_view text, int m, int k) {
  std::vector<OperatorSpec> ops;
  size_t start = 0;
  std::string s(text);
  while (true) {
    size_t dot = s.find(" . ", start);
    std::string tok = s.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    tok.erase(std::remove(tok.begin(), tok.end(), ' '), tok.end());
    if (tok.empty()) throw ParseError("empty operator in pipeline '" + s + "'");
    ops.push_back(OperatorSpec::parse(tok, m, k));
    if (dot == std::string::npos) break;
    start = dot + 3;
  }
  std::reverse(ops.begin(), ops.end());  // application order
  return ops;
}

RadialFunction apply_pipeline(const std::vector<OperatorSpec>& ops, const RadialFunction& f) {
  RadialFunction r = f;
  for (const auto& op : ops) r = apply(op, r);
  return r;
}

DomainResult domain_check(const RadialFunction& f, Space space, int m, int k, Side side) {
  if (!f.is_homogeneous(Var::U, k)) throw DomainError("domain_check: input is not homogeneous of degree k in u");
  RadialFunction res(m);
  switch (space) {
    case Space::Hk: res = laplace(f, Var::U); break;
    case Space::Mk: res = dirac(f, Var::U, side); break;
    case Space::uMk1:
      if (k < 1) throw DomainError("uM_{k-1} needs k >= 1");
      res = pk_plus(f, m, k, side) + laplace(f, Var::U);
      break;
  }
  return {res.is_zero(), res};
}

DecompositionResidual verify_decomposition(int m, int k, const RadialFunction& f) {
  if (m + 2 * k - 4 == 0) throw SingularParameter("verify_decomposition: m+2k-4 = 0");
  if (k < 1) throw DomainError("verify_decomposition: k >= 1 required");
  const Side L = Side::Left;
  const long c = m + 2 * k - 4, a = m + 2 * k - 2;
  RadialFunction direct = d2(f, m, k);
  RadialFunction pp = pk_plus(f, m, k, L), pm = pk_minus(f, m, k, L);
  RadialFunction r_pp = rk(pp, m, k, L);
  RadialFunction q_pm = qk(pm, m, k, L);
  RadialFunction r_pm = rk(pm, m, k, L);  // T_k P^-
  RadialFunction q_pp = qk(pp, m, k, L);  // T_k^* P^+
  RadialFunction rr = rk(r_pp, m, k, L);
  RadialFunction qq = qk(q_pm, m, k, L);

  const mpq_class& fc = controls::current().den_decomposition;
  RadialFunction first = -rr + frac(2, c, fc) * qk(r_pp, m, k, L) - frac(2, c, fc) * rk(q_pm, m, k, L) -
                         frac(m + 2 * k, c, fc) * qq;
  RadialFunction second = -rr + frac(2, c, fc) * rk(r_pm, m, k, L) - frac(2, c, fc) * qk(q_pp, m, k, L) -
                          frac(m + 2 * k, c, fc) * qq;

  // -R_k^2 p_1 + 4u<D_u,D_x>R_k p_1/(ab) - u R_{k-1}^2 p_0 - 4/a (<u,D_x> - |u|^2<D_u,D_x>/c) R_{k-1} p_0
  RadialFunction p0f = ExactScalar::rational(-1, a) * dirac(f, Var::U, L);
  RadialFunction r1 = rk(p0f, m, k - 1, L);
  RadialFunction lemma = -rr + ExactScalar::rational(4, a * c) * vector_mul(du_dot_dx(r_pp), Var::U, L) -
                         vector_mul(rk(r1, m, k - 1, L), Var::U, L) -
                         ExactScalar::rational(4, a) * (u_dot_dx(r1) - inv(c) * norm_sq_mul(du_dot_dx(r1), Var::U));

  RadialFunction raqb = rk(ak(f, m, k, L), m, k, L) + qk(bk(f, m, k, L), m, k, L);
  return {direct - first, direct - second, direct - lemma, direct - raqb};
}

std::pair<RadialFunction, RadialFunction> verify_commutation(int m, int k, const RadialFunction& f) {
  if (k < 1) throw DomainError("verify_commutation: k >= 1 required");
  const Side L = Side::Left;
  RadialFunction tq = rk(qk(f, m, k, L), m, k, L) + rk(rk(f, m, k, L), m, k, L);
  RadialFunction tr = qk(rk(f, m, k, L), m, k, L) + qk(qk(f, m, k, L), m, k, L);
  return {tq, tr};
}

}  // namespace hsl
