#include "hsl/polynomials.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace hsl {

const char* var_name(Var v) {
  switch (v) {
    case Var::X: return "x";
    case Var::U: return "u";
    case Var::V: return "v";
  }
  return "?";
}

Var parse_var(std::string_view s) {
  if (s == "x") return Var::X;
  if (s == "u") return Var::U;
  if (s == "v") return Var::V;
  throw ParseError("unknown variable '" + std::string(s) + "'");
}

int Monomial::degree(Var v) const {
  int d = 0;
  for (int i = 0; i < kMaxDim; ++i) d += at(v, i);
  return d;
}

int Monomial::total_degree() const {
  int d = 0;
  for (auto x : e) d += x;
  return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  for (size_t i = 0; i < e.size(); ++i) {
    int s = e[i] + o.e[i];
    if (s > 255) throw DomainError("monomial exponent overflow");
    r.e[i] = static_cast<std::uint8_t>(s);
  }
  return r;
}

namespace {

bool key_less(const PolyTerm& a, const PolyTerm& b) {
  if (a.mono != b.mono) return a.mono < b.mono;
  return a.blade < b.blade;
}

bool dead(const ExactScalar& c) { return c.is_exact() && c.is_zero(); }

}  // namespace

CliffPoly::CliffPoly(int m) : m_(m) { Multivector::check_dim(m); }

CliffPoly::CliffPoly(int m, const ExactScalar& c) : CliffPoly(m) {
  if (!dead(c)) terms_.push_back({Monomial{}, 0, c});
}

CliffPoly::CliffPoly(const Multivector& c) : CliffPoly(c.dim()) {
  for (const auto& [b, s] : c.terms()) terms_.push_back({Monomial{}, b, s});
}

CliffPoly CliffPoly::variable(int m, Var v, int i) {
  if (i < 0 || i >= m) throw DimensionError("variable index out of range");
  CliffPoly p(m);
  Monomial mono;
  mono.at(v, i) = 1;
  p.terms_.push_back({mono, 0, ExactScalar(1)});
  return p;
}

CliffPoly CliffPoly::vector(int m, Var v) {
  CliffPoly p(m);
  for (int i = 0; i < m; ++i) {
    Monomial mono;
    mono.at(v, i) = 1;
    p.terms_.push_back({mono, Blade(1) << i, ExactScalar(1)});
  }
  p.normalize();
  return p;
}

CliffPoly CliffPoly::norm_squared(int m, Var v) {
  CliffPoly p(m);
  for (int i = 0; i < m; ++i) {
    Monomial mono;
    mono.at(v, i) = 2;
    p.terms_.push_back({mono, 0, ExactScalar(1)});
  }
  p.normalize();
  return p;
}

CliffPoly CliffPoly::monomial(int m, const Monomial& mono, const Multivector& c) {
  if (c.dim() != m && !c.is_zero()) throw DimensionError("coefficient dimension mismatch");
  CliffPoly p(m);
  for (const auto& [b, s] : c.terms()) p.terms_.push_back({mono, b, s});
  return p;
}

CliffPoly CliffPoly::from_terms(int m, std::vector<PolyTerm> terms) {
  CliffPoly p(m);
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

void CliffPoly::normalize() {
  if (terms_.empty()) return;
  std::sort(terms_.begin(), terms_.end(), key_less);
  size_t w = 0;
  for (size_t i = 0; i < terms_.size(); ++i) {
    if (w > 0 && terms_[w - 1].mono == terms_[i].mono && terms_[w - 1].blade == terms_[i].blade) {
      terms_[w - 1].c += terms_[i].c;
    } else {
      if (w > 0 && dead(terms_[w - 1].c)) --w;
      if (w != i) terms_[w] = std::move(terms_[i]);
      ++w;
    }
  }
  if (w > 0 && dead(terms_[w - 1].c)) --w;
  terms_.resize(w);
}

std::vector<std::pair<Monomial, Multivector>> CliffPoly::grouped() const {
  std::vector<std::pair<Monomial, Multivector>> out;
  for (const auto& t : terms_) {
    if (out.empty() || out.back().first != t.mono) out.push_back({t.mono, Multivector(m_)});
    out.back().second.add(t.blade, t.c);
  }
  return out;
}

Multivector CliffPoly::coefficient(const Monomial& mono) const {
  Multivector r(m_);
  auto it = std::lower_bound(terms_.begin(), terms_.end(), mono,
                             [](const PolyTerm& t, const Monomial& mm) { return t.mono < mm; });
  for (; it != terms_.end() && it->mono == mono; ++it) r.add(it->blade, it->c);
  return r;
}

CliffPoly CliffPoly::operator-() const {
  CliffPoly r = *this;
  for (auto& t : r.terms_) t.c = -t.c;
  return r;
}

CliffPoly& CliffPoly::operator+=(const CliffPoly& o) {
  if (m_ == 0) m_ = o.m_;
  if (o.m_ != 0 && o.m_ != m_) throw DimensionError("polynomial dimension mismatch");
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = o.terms_;
    return *this;
  }
  std::vector<PolyTerm> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && key_less(terms_[i], o.terms_[j]))) {
      merged.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || key_less(o.terms_[j], terms_[i])) {
      merged.push_back(o.terms_[j++]);
    } else {
      ExactScalar c = terms_[i].c + o.terms_[j].c;
      if (!dead(c)) merged.push_back({terms_[i].mono, terms_[i].blade, std::move(c)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

CliffPoly& CliffPoly::operator-=(const CliffPoly& o) { return *this += -o; }

CliffPoly operator*(const CliffPoly& a, const CliffPoly& b) {
  if (a.m_ != b.m_ && a.m_ != 0 && b.m_ != 0) throw DimensionError("polynomial dimension mismatch");
  CliffPoly r(a.m_ ? a.m_ : b.m_);
  r.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) {
      ExactScalar c = s.c * t.c;
      if (blade_product_sign(s.blade, t.blade) < 0) c = -c;
      r.terms_.push_back({s.mono * t.mono, s.blade ^ t.blade, std::move(c)});
    }
  r.normalize();
  return r;
}

CliffPoly operator*(const ExactScalar& s, const CliffPoly& a) {
  CliffPoly r(a.m_);
  if (dead(s)) return r;
  r.terms_.reserve(a.terms_.size());
  for (const auto& t : a.terms_) r.terms_.push_back({t.mono, t.blade, s * t.c});
  if (!s.is_exact()) return r;
  return r;
}

CliffPoly operator*(const Multivector& c, const CliffPoly& a) { return CliffPoly(c) * a; }
CliffPoly operator*(const CliffPoly& a, const Multivector& c) { return a * CliffPoly(c); }

bool operator==(const CliffPoly& a, const CliffPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (size_t i = 0; i < a.terms_.size(); ++i) {
    const auto &s = a.terms_[i], &t = b.terms_[i];
    if (s.mono != t.mono || s.blade != t.blade || s.c != t.c) return false;
  }
  return true;
}

CliffPoly CliffPoly::diff(Var v, int i) const {
  CliffPoly r(m_);
  for (const auto& t : terms_) {
    int e = t.mono.at(v, i);
    if (e == 0) continue;
    PolyTerm n = t;
    n.mono.at(v, i) = static_cast<std::uint8_t>(e - 1);
    n.c = ExactScalar(e) * t.c;
    r.terms_.push_back(std::move(n));
  }
  // lowering one exponent keeps distinct keys distinct and preserves order
  return r;
}

CliffPoly CliffPoly::times_variable(Var v, int i) const {
  CliffPoly r = *this;
  for (auto& t : r.terms_) {
    if (t.mono.at(v, i) == 255) throw DomainError("monomial exponent overflow");
    ++t.mono.at(v, i);
  }
  return r;
}

CliffPoly CliffPoly::conj() const {
  CliffPoly r = *this;
  for (auto& t : r.terms_)
    if (conjugation_sign(t.blade) < 0) t.c = -t.c;
  return r;
}

CliffPoly CliffPoly::reversion() const {
  CliffPoly r = *this;
  for (auto& t : r.terms_)
    if (reversion_sign(t.blade) < 0) t.c = -t.c;
  return r;
}

CliffPoly CliffPoly::blade_part(Blade b) const {
  CliffPoly r(m_);
  for (const auto& t : terms_)
    if (t.blade == b) r.terms_.push_back({t.mono, 0, t.c});
  return r;
}

bool CliffPoly::is_scalar() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const PolyTerm& t) { return t.blade == 0; });
}

int CliffPoly::max_degree(Var v) const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree(v));
  return d;
}

int CliffPoly::min_degree(Var v) const {
  int d = -1;
  for (const auto& t : terms_) {
    int e = t.mono.degree(v);
    d = d < 0 ? e : std::min(d, e);
  }
  return d;
}

bool CliffPoly::is_homogeneous(Var v, int k) const {
  return std::all_of(terms_.begin(), terms_.end(), [&](const PolyTerm& t) { return t.mono.degree(v) == k; });
}

bool CliffPoly::depends_on(Var v) const {
  return std::any_of(terms_.begin(), terms_.end(), [&](const PolyTerm& t) { return t.mono.degree(v) > 0; });
}

double CliffPoly::max_abs() const {
  double r = 0.0;
  for (const auto& t : terms_) r = std::max(r, std::abs(t.c.to_double()));
  return r;
}

CliffPoly homogeneous_component(const CliffPoly& f, Var v, int k) {
  std::vector<PolyTerm> keep;
  for (const auto& t : f.terms())
    if (t.mono.degree(v) == k) keep.push_back(t);
  return CliffPoly::from_terms(f.dim(), std::move(keep));
}

// ---------------------------------------------------------------------------

const CliffPoly& r_power_poly(int m, int n) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, CliffPoly> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(m, n);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  CliffPoly p(m, ExactScalar(1));
  CliffPoly r = CliffPoly::norm_squared(m, Var::X);
  for (int i = 0; i < n; ++i) p = p * r;
  return cache.emplace(key, std::move(p)).first->second;
}

RadialFunction::RadialFunction(const CliffPoly& p) : m_(p.dim()) {
  if (!p.is_zero()) parts_.emplace(0, p);
}

RadialFunction::RadialFunction(int q2, const CliffPoly& p) : m_(p.dim()) { add_part(q2, p); }

RadialFunction RadialFunction::r_power(int m, int q2) { return RadialFunction(q2, CliffPoly(m, ExactScalar(1))); }

void RadialFunction::add_part(int q2, const CliffPoly& p) {
  if (p.is_zero()) return;
  if (m_ == 0) m_ = p.dim();
  if (p.dim() != m_) throw DimensionError("radial function dimension mismatch");
  if (q2 > 0 && q2 % 2 == 0) {
    add_part(0, p * r_power_poly(m_, q2 / 2));
    return;
  }
  auto it = parts_.find(q2);
  if (it == parts_.end()) {
    parts_.emplace(q2, p);
  } else {
    it->second += p;
    if (it->second.is_zero()) parts_.erase(it);
  }
}

bool RadialFunction::is_polynomial() const { return parts_.empty() || (parts_.size() == 1 && parts_.begin()->first == 0); }

CliffPoly RadialFunction::as_polynomial() const {
  if (!is_polynomial()) {
    // a negative power may still cancel into a polynomial
    RadialFunction c = canonical();
    if (c.parts_.empty()) return CliffPoly(m_);
    if (c.parts_.size() == 1 && c.parts_.begin()->first <= 0 && c.parts_.begin()->first % 2 == 0) {
      throw DomainError("radial function has a negative power of x.x");
    }
    throw DomainError("radial function is not polynomial");
  }
  return parts_.empty() ? CliffPoly(m_) : parts_.begin()->second;
}

size_t RadialFunction::size() const {
  size_t n = 0;
  for (const auto& [q, p] : parts_) n += p.size();
  return n;
}

RadialFunction RadialFunction::operator-() const {
  RadialFunction r = *this;
  for (auto& [q, p] : r.parts_) p = -p;
  return r;
}

RadialFunction& RadialFunction::operator+=(const RadialFunction& o) {
  if (m_ == 0) m_ = o.m_;
  for (const auto& [q, p] : o.parts_) add_part(q, p);
  return *this;
}

RadialFunction& RadialFunction::operator-=(const RadialFunction& o) { return *this += -o; }

RadialFunction operator*(const RadialFunction& a, const RadialFunction& b) {
  RadialFunction r(a.m_ ? a.m_ : (b.m_ ? b.m_ : 1));
  if (a.m_ && b.m_ && a.m_ != b.m_) throw DimensionError("radial function dimension mismatch");
  for (const auto& [qa, pa] : a.parts_)
    for (const auto& [qb, pb] : b.parts_) r.add_part(qa + qb, pa * pb);
  return r;
}

RadialFunction operator*(const ExactScalar& s, const RadialFunction& a) {
  return a.map_parts([&](const CliffPoly& p) { return s * p; });
}

RadialFunction operator*(const Multivector& c, const RadialFunction& a) {
  CliffPoly cp(c);
  return a.map_parts([&](const CliffPoly& p) { return cp * p; });
}

RadialFunction operator*(const RadialFunction& a, const Multivector& c) {
  CliffPoly cp(c);
  return a.map_parts([&](const CliffPoly& p) { return p * cp; });
}

RadialFunction RadialFunction::diff(Var v, int i) const {
  RadialFunction r(m_);
  for (const auto& [q2, p] : parts_) {
    r.add_part(q2, p.diff(v, i));
    // d/dx_i (x.x)^q = 2q x_i (x.x)^(q-1)
    if (v == Var::X && q2 != 0) r.add_part(q2 - 2, ExactScalar(q2) * p.times_variable(Var::X, i));
  }
  return r;
}

RadialFunction RadialFunction::conj() const {
  return map_parts([](const CliffPoly& p) { return p.conj(); });
}

RadialFunction RadialFunction::reversion() const {
  return map_parts([](const CliffPoly& p) { return p.reversion(); });
}

RadialFunction RadialFunction::blade_part(Blade b) const {
  return map_parts([b](const CliffPoly& p) { return p.blade_part(b); });
}

RadialFunction RadialFunction::canonical() const {
  RadialFunction r(m_);
  for (int parity = 0; parity < 2; ++parity) {
    std::optional<int> qmin;
    for (const auto& [q2, p] : parts_)
      if (((q2 % 2) + 2) % 2 == parity && (!qmin || q2 < *qmin)) qmin = q2;
    if (!qmin) continue;
    CliffPoly sum(m_);
    for (const auto& [q2, p] : parts_)
      if (((q2 % 2) + 2) % 2 == parity) sum += p * r_power_poly(m_, (q2 - *qmin) / 2);
    if (!sum.is_zero()) r.parts_.emplace(*qmin, std::move(sum));
  }
  return r;
}

bool RadialFunction::is_zero() const {
  if (parts_.empty()) return true;
  return canonical().parts_.empty();
}

std::optional<int> RadialFunction::x_degree() const {
  std::optional<int> d;
  for (const auto& [q2, p] : parts_)
    for (const auto& t : p.terms()) {
      int e = q2 + t.mono.degree(Var::X);
      if (d && *d != e) return std::nullopt;
      d = e;
    }
  return d;
}

bool RadialFunction::depends_on(Var v) const {
  if (v == Var::X && !is_polynomial()) return true;
  for (const auto& [q, p] : parts_)
    if (p.depends_on(v)) return true;
  return false;
}

int RadialFunction::max_degree(Var v) const {
  int d = -1;
  for (const auto& [q, p] : parts_) d = std::max(d, p.max_degree(v));
  return d;
}

bool RadialFunction::is_homogeneous(Var v, int k) const {
  for (const auto& [q, p] : parts_)
    if (!p.is_homogeneous(v, k)) return false;
  return true;
}

double RadialFunction::max_abs() const {
  double r = 0.0;
  for (const auto& [q, p] : parts_) r = std::max(r, p.max_abs());
  return r;
}

// ---------------------------------------------------------------------------

EvalPoint EvalPoint::exact_point(const std::vector<mpq_class>& x, const std::vector<mpq_class>& u,
                                 const std::vector<mpq_class>& v) {
  EvalPoint p;
  p.m = static_cast<int>(x.size());
  p.exact = true;
  auto conv = [&](const std::vector<mpq_class>& a) {
    std::vector<ExactScalar> r;
    for (const auto& q : a) r.emplace_back(q);
    if (r.empty()) r.assign(p.m, ExactScalar());
    if (static_cast<int>(r.size()) != p.m) throw DimensionError("evaluation point dimension mismatch");
    return r;
  };
  p.x = conv(x);
  p.u = conv(u);
  p.v = conv(v);
  return p;
}

EvalPoint EvalPoint::float_point(const std::vector<double>& x, const std::vector<double>& u,
                                 const std::vector<double>& v) {
  EvalPoint p;
  p.m = static_cast<int>(x.size());
  p.exact = false;
  auto conv = [&](const std::vector<double>& a) {
    std::vector<ExactScalar> r;
    for (double d : a) r.push_back(ExactScalar::approx(d));
    if (r.empty()) r.assign(p.m, ExactScalar::approx(0.0));
    if (static_cast<int>(r.size()) != p.m) throw DimensionError("evaluation point dimension mismatch");
    return r;
  };
  p.x = conv(x);
  p.u = conv(u);
  p.v = conv(v);
  return p;
}

namespace {

const std::vector<ExactScalar>& coords(const EvalPoint& pt, Var v) {
  return v == Var::X ? pt.x : (v == Var::U ? pt.u : pt.v);
}

ExactScalar to_mode(const ExactScalar& s, bool exact) { return exact ? s : ExactScalar::approx(s.to_double()); }

Multivector eval_poly(const CliffPoly& f, const EvalPoint& pt, const ExactScalar& weight) {
  const int m = f.dim();
  if (pt.m != m) throw DimensionError("evaluation point dimension mismatch");
  // power tables per coordinate
  std::vector<std::vector<ExactScalar>> pw(3 * m);
  int maxdeg[3] = {f.max_degree(Var::X), f.max_degree(Var::U), f.max_degree(Var::V)};
  for (int v = 0; v < 3; ++v)
    for (int i = 0; i < m; ++i) {
      auto& tab = pw[v * m + i];
      tab.push_back(to_mode(ExactScalar(1), pt.exact));
      for (int e = 1; e <= maxdeg[v]; ++e) tab.push_back(tab.back() * coords(pt, static_cast<Var>(v))[i]);
    }
  Multivector r(m);
  for (const auto& t : f.terms()) {
    ExactScalar c = to_mode(t.c, pt.exact) * weight;
    for (int v = 0; v < 3; ++v)
      for (int i = 0; i < m; ++i) {
        int e = t.mono.at(static_cast<Var>(v), i);
        if (e) c *= pw[v * m + i][e];
      }
    r.add(t.blade, c);
  }
  return r;
}

// (x.x)^(q2/2)
ExactScalar radial_weight(const ExactScalar& rr, int q2, bool exact) {
  if (q2 == 0) return to_mode(ExactScalar(1), exact);
  if (!exact) {
    double d = rr.to_double();
    if (d == 0.0 && q2 < 0) throw DomainError("singular point: x = 0 with negative radial power");
    return ExactScalar::approx(std::pow(d, 0.5 * q2));
  }
  mpq_class r = rr.to_rational();
  if (r == 0) {
    if (q2 < 0) throw DomainError("singular point: x = 0 with negative radial power");
    return ExactScalar();
  }
  if (q2 % 2 == 0) return ExactScalar(r).pow(q2 / 2);
  mpz_class num = r.get_num(), den = r.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    throw DomainError("half-integer power of a non-square rational in exact mode");
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  return ExactScalar(mpq_class(sn, sd)).pow(q2);
}

}  // namespace

Multivector evaluate(const CliffPoly& f, const EvalPoint& pt) {
  return eval_poly(f, pt, to_mode(ExactScalar(1), pt.exact));
}

Multivector evaluate(const RadialFunction& f, const EvalPoint& pt) {
  if (f.parts().empty()) return Multivector(pt.m);
  ExactScalar rr = to_mode(ExactScalar(), pt.exact);
  for (const auto& xi : pt.x) rr += xi * xi;
  Multivector r(pt.m);
  for (const auto& [q2, p] : f.parts()) r += eval_poly(p, pt, radial_weight(rr, q2, pt.exact));
  return r;
}

RadialFunction substitute(const RadialFunction& f, Var var, const std::vector<RadialFunction>& images) {
  const int m = f.dim();
  if (static_cast<int>(images.size()) != m) throw DimensionError("substitute: need one image per coordinate");
  if (var == Var::X && !f.is_polynomial()) throw DomainError("substituting x requires a polynomial in x");
  std::vector<std::vector<RadialFunction>> pw(m);
  RadialFunction result(m);
  for (const auto& [q2, p] : f.parts()) {
    // group terms by their exponent vector in `var`
    std::map<std::array<std::uint8_t, kMaxDim>, std::vector<PolyTerm>> groups;
    for (const auto& t : p.terms()) {
      std::array<std::uint8_t, kMaxDim> key{};
      PolyTerm rest = t;
      for (int i = 0; i < m; ++i) {
        key[i] = t.mono.at(var, i);
        rest.mono.at(var, i) = 0;
      }
      groups[key].push_back(std::move(rest));
    }
    for (auto& [key, terms] : groups) {
      RadialFunction img(CliffPoly(m, ExactScalar(1)));
      for (int i = 0; i < m; ++i) {
        auto& tab = pw[i];
        if (tab.empty()) tab.push_back(RadialFunction(CliffPoly(m, ExactScalar(1))));
        while (static_cast<int>(tab.size()) <= key[i]) tab.push_back(tab.back() * images[i]);
        if (key[i]) img = img * tab[key[i]];
      }
      RadialFunction rest(q2, CliffPoly::from_terms(m, std::move(terms)));
      result += img * rest;
    }
  }
  return result;
}

std::vector<RadialFunction> kelvin_images(int m, Var var) {
  // w - 2<w,x>x/(x.x)
  CliffPoly wx(m);
  for (int j = 0; j < m; ++j) wx += CliffPoly::variable(m, var, j) * CliffPoly::variable(m, Var::X, j);
  std::vector<RadialFunction> img;
  for (int i = 0; i < m; ++i) {
    RadialFunction r(CliffPoly::variable(m, var, i));
    r.add_part(-2, ExactScalar(-2) * wx.times_variable(Var::X, i));
    img.push_back(std::move(r));
  }
  return img;
}

RadialFunction substitute_kelvin(const RadialFunction& f, Var var) {
  if (var == Var::X) throw DomainError("Kelvin substitution acts on u or v");
  return substitute(f, var, kelvin_images(f.dim(), var));
}

}  // namespace hsl
