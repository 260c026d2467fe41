#include "hsl/clifford.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace hsl {

namespace {

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// split at top-level occurrences of " + "
std::vector<std::string> split_sum(std::string_view s) {
  std::vector<std::string> out;
  int depth = 0;
  size_t start = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(' || c == '{') ++depth;
    else if (c == ')' || c == '}') --depth;
    else if (depth == 0 && c == '+' && i > 0 && s[i - 1] == ' ' && i + 1 < s.size() && s[i + 1] == ' ') {
      out.push_back(trim(s.substr(start, i - 1 - start)));
      start = i + 2;
    }
  }
  out.push_back(trim(s.substr(start)));
  return out;
}

mpq_class parse_rational(const std::string& t) {
  mpq_class q;
  if (t.empty() || q.set_str(t, 10) != 0) throw ParseError("bad rational: '" + t + "'");
  if (q.get_den() == 0) throw ParseError("zero denominator: '" + t + "'");
  q.canonicalize();
  return q;
}

double pi_pow_double(int pi2) { return std::pow(std::numbers::pi, 0.5 * pi2); }

std::string half_str(int twice) {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

}  // namespace

ExactScalar::ExactScalar(const mpq_class& q, int pi2) {
  if (q != 0) {
    terms_.push_back({pi2, q});
    terms_.back().q.canonicalize();
  }
}

ExactScalar ExactScalar::rational(long num, long den) {
  if (den == 0) throw DomainError("zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return ExactScalar(q);
}

ExactScalar ExactScalar::pi_power(int pi2) { return ExactScalar(mpq_class(1), pi2); }

ExactScalar ExactScalar::approx(double v) {
  ExactScalar s;
  s.exact_ = false;
  s.approx_ = v;
  return s;
}

bool ExactScalar::is_rational() const {
  return exact_ && (terms_.empty() || (terms_.size() == 1 && terms_[0].pi2 == 0));
}

mpq_class ExactScalar::to_rational() const {
  if (!is_rational()) throw DomainError("scalar is not rational: " + str());
  return terms_.empty() ? mpq_class(0) : terms_[0].q;
}

int ExactScalar::grade() const {
  if (!exact_ || terms_.size() > 1) throw DomainError("scalar has no single pi grade: " + str());
  return terms_.empty() ? 0 : terms_[0].pi2;
}

double ExactScalar::to_double() const {
  if (!exact_) return approx_;
  double s = 0.0;
  for (const auto& t : terms_) s += t.q.get_d() * pi_pow_double(t.pi2);
  return s;
}

ExactScalar ExactScalar::operator-() const {
  ExactScalar r = *this;
  if (!exact_) {
    r.approx_ = -approx_;
    return r;
  }
  for (auto& t : r.terms_) t.q = -t.q;
  return r;
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& o) {
  if (!exact_ || !o.exact_) {
    double v = to_double() + o.to_double();
    *this = approx(v);
    return *this;
  }
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = o.terms_;
    return *this;
  }
  if (terms_.size() == 1 && o.terms_.size() == 1 && terms_[0].pi2 == o.terms_[0].pi2) {
    terms_[0].q += o.terms_[0].q;
    if (terms_[0].q == 0) terms_.clear();
    return *this;
  }
  decltype(terms_) merged;
  size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].pi2 < o.terms_[j].pi2)) {
      merged.push_back(terms_[i++]);
    } else if (i == terms_.size() || o.terms_[j].pi2 < terms_[i].pi2) {
      merged.push_back(o.terms_[j++]);
    } else {
      mpq_class q = terms_[i].q + o.terms_[j].q;
      if (q != 0) merged.push_back({terms_[i].pi2, q});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o) { return *this += -o; }

ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
  if (!a.exact_ || !b.exact_) return ExactScalar::approx(a.to_double() * b.to_double());
  ExactScalar r;
  if (a.terms_.empty() || b.terms_.empty()) return r;
  if (a.terms_.size() == 1 && b.terms_.size() == 1) {
    r.terms_.push_back({a.terms_[0].pi2 + b.terms_[0].pi2, a.terms_[0].q * b.terms_[0].q});
    return r;
  }
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) r += ExactScalar(s.q * t.q, s.pi2 + t.pi2);
  return r;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& o) { return *this = *this * o; }

ExactScalar ExactScalar::inverse() const {
  if (!exact_) {
    if (approx_ == 0.0) throw DomainError("division by zero");
    return approx(1.0 / approx_);
  }
  if (terms_.empty()) throw DomainError("division by zero");
  if (terms_.size() > 1) throw DomainError("no exact inverse for multi-grade scalar " + str());
  return ExactScalar(1 / terms_[0].q, -terms_[0].pi2);
}

ExactScalar ExactScalar::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  ExactScalar r(1), b = *this;
  while (n) {
    if (n & 1) r *= b;
    b *= b;
    n >>= 1;
  }
  return r;
}

bool operator==(const ExactScalar& a, const ExactScalar& b) {
  if (!a.exact_ || !b.exact_) return a.to_double() == b.to_double();
  if (a.terms_.size() != b.terms_.size()) return false;
  for (size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].pi2 != b.terms_[i].pi2 || a.terms_[i].q != b.terms_[i].q) return false;
  return true;
}

std::string ExactScalar::str() const {
  if (!exact_) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", approx_);
    std::string s = buf;
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";  // keep it recognisably float
    return s;
  }
  if (terms_.empty()) return "0";
  std::string out;
  for (size_t i = 0; i < terms_.size(); ++i) {
    if (i) out += " + ";
    out += terms_[i].q.get_str();
    if (terms_[i].pi2 != 0) out += "*pi^(" + half_str(terms_[i].pi2) + ")";
  }
  return terms_.size() > 1 ? "(" + out + ")" : out;
}

ExactScalar ExactScalar::parse(std::string_view text) {
  std::string s = trim(text);
  if (s.empty()) throw ParseError("empty scalar");
  if (s.front() == '(' && s.back() == ')') {
    ExactScalar r;
    for (const auto& part : split_sum(std::string_view(s).substr(1, s.size() - 2))) r += parse(part);
    return r;
  }
  auto star = s.find("*pi^(");
  if (star == std::string::npos) {
    if (s.find_first_of(".eEn") != std::string::npos) {
      size_t used = 0;
      double v = std::stod(s, &used);
      if (used != s.size()) throw ParseError("bad float scalar: '" + s + "'");
      return approx(v);
    }
    return ExactScalar(parse_rational(s));
  }
  if (s.back() != ')') throw ParseError("bad pi power: '" + s + "'");
  mpq_class q = parse_rational(s.substr(0, star));
  mpq_class e = parse_rational(s.substr(star + 5, s.size() - star - 6));
  mpq_class e2 = 2 * e;
  e2.canonicalize();
  if (e2.get_den() != 1) throw ParseError("pi exponent must be a half-integer: '" + s + "'");
  return ExactScalar(q, static_cast<int>(e2.get_num().get_si()));
}

int blade_grade(Blade a) { return std::popcount(a); }

int blade_product_sign(Blade a, Blade b) {
  // move each generator of b leftwards past the higher generators of a
  int swaps = 0;
  for (Blade bb = b; bb; bb &= bb - 1) {
    Blade low = bb & (~bb + 1);
    swaps += std::popcount(a & ~((low << 1) - 1));
  }
  swaps += std::popcount(a & b);  // e_i e_i = -1
  return (swaps & 1) ? -1 : 1;
}

int reversion_sign(Blade a) {
  int g = blade_grade(a);
  return ((g * (g - 1) / 2) & 1) ? -1 : 1;
}

int conjugation_sign(Blade a) {
  int g = blade_grade(a);
  return ((g * (g + 1) / 2) & 1) ? -1 : 1;
}

void Multivector::check_dim(int dim) {
  if (dim < 1 || dim > kMaxDim) throw DimensionError("dimension must be in 1..10, got " + std::to_string(dim));
}

Multivector::Multivector(int dim, const ExactScalar& s) : dim_(dim) {
  check_dim(dim);
  if (!s.is_zero()) terms_.push_back({0, s});
}

Multivector Multivector::basis(int dim, Blade a, const ExactScalar& c) {
  Multivector r(dim);
  if (a >> dim) throw DimensionError("blade outside dimension");
  if (!c.is_zero()) r.terms_.push_back({a, c});
  return r;
}

Multivector Multivector::e(int dim, int i) {
  if (i < 1 || i > dim) throw DimensionError("generator index out of range");
  return basis(dim, Blade(1) << (i - 1));
}

ExactScalar Multivector::coeff(Blade a) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), a, [](const Entry& e, Blade b) { return e.first < b; });
  if (it != terms_.end() && it->first == a) return it->second;
  return ExactScalar();
}

void Multivector::add(Blade a, const ExactScalar& c) {
  if (c.is_zero() && c.is_exact()) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), a, [](const Entry& e, Blade b) { return e.first < b; });
  if (it != terms_.end() && it->first == a) {
    it->second += c;
    if (it->second.is_zero() && it->second.is_exact()) terms_.erase(it);
  } else {
    terms_.insert(it, {a, c});
  }
}

Multivector Multivector::operator-() const {
  Multivector r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

Multivector& Multivector::operator+=(const Multivector& o) {
  if (dim_ == 0) dim_ = o.dim_;
  if (o.dim_ != 0 && o.dim_ != dim_) throw DimensionError("multivector dimension mismatch");
  if (o.terms_.empty()) return *this;
  std::vector<Entry> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
      merged.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
      merged.push_back(o.terms_[j++]);
    } else {
      ExactScalar c = terms_[i].second + o.terms_[j].second;
      if (!(c.is_zero() && c.is_exact())) merged.push_back({terms_[i].first, std::move(c)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& o) { return *this += -o; }

Multivector operator*(const Multivector& a, const Multivector& b) {
  if (a.dim_ != b.dim_ && a.dim_ != 0 && b.dim_ != 0) throw DimensionError("multivector dimension mismatch");
  Multivector r(a.dim_ ? a.dim_ : b.dim_);
  std::vector<Multivector::Entry> prods;
  prods.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ba, ca] : a.terms_)
    for (const auto& [bb, cb] : b.terms_) {
      ExactScalar c = ca * cb;
      if (blade_product_sign(ba, bb) < 0) c = -c;
      prods.push_back({ba ^ bb, std::move(c)});
    }
  std::stable_sort(prods.begin(), prods.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  for (auto& p : prods) {
    if (!r.terms_.empty() && r.terms_.back().first == p.first) {
      r.terms_.back().second += p.second;
    } else {
      if (!r.terms_.empty() && r.terms_.back().second.is_zero() && r.terms_.back().second.is_exact()) r.terms_.pop_back();
      r.terms_.push_back(std::move(p));
    }
  }
  if (!r.terms_.empty() && r.terms_.back().second.is_zero() && r.terms_.back().second.is_exact()) r.terms_.pop_back();
  return r;
}

Multivector operator*(const ExactScalar& s, const Multivector& a) {
  Multivector r(a.dim_);
  if (s.is_zero() && s.is_exact()) return r;
  for (const auto& [b, c] : a.terms_) {
    ExactScalar p = s * c;
    if (!(p.is_zero() && p.is_exact())) r.terms_.push_back({b, std::move(p)});
  }
  return r;
}

bool operator==(const Multivector& a, const Multivector& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  if (!a.terms_.empty() && a.dim_ != b.dim_) return false;
  for (size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].first != b.terms_[i].first || a.terms_[i].second != b.terms_[i].second) return false;
  return true;
}

double Multivector::max_abs() const {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, std::abs(t.second.to_double()));
  return m;
}

std::string Multivector::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  for (size_t i = 0; i < terms_.size(); ++i) {
    if (i) os << " + ";
    os << terms_[i].second.str() << "*e{";
    bool first = true;
    for (int j = 0; j < dim_; ++j)
      if (terms_[i].first >> j & 1) {
        if (!first) os << ',';
        os << j + 1;
        first = false;
      }
    os << '}';
  }
  return os.str();
}

Multivector Multivector::parse(std::string_view text, int dim) {
  Multivector r(dim);
  std::string s = trim(text);
  if (s == "0") return r;
  for (const auto& part : split_sum(s)) {
    auto pos = part.rfind("*e{");
    if (pos == std::string::npos || part.back() != '}') throw ParseError("bad multivector term: '" + part + "'");
    ExactScalar c = ExactScalar::parse(part.substr(0, pos));
    std::string idx = part.substr(pos + 3, part.size() - pos - 4);
    Blade b = 0;
    std::stringstream ss(idx);
    std::string tok;
    int prev = 0;
    while (std::getline(ss, tok, ',')) {
      int i = std::stoi(tok);
      if (i < 1 || i > dim) throw ParseError("blade index out of range in '" + part + "'");
      if (i <= prev) throw ParseError("blade indices must be ascending in '" + part + "'");
      prev = i;
      b |= Blade(1) << (i - 1);
    }
    r.add(b, c);
  }
  return r;
}

Multivector geometric_product(const Multivector& a, const Multivector& b) {
  if (a.dim() != b.dim()) throw DimensionError("geometric_product: dimension mismatch");
  return a * b;
}

Multivector reversion(const Multivector& a) {
  Multivector r(a.dim());
  for (const auto& [b, c] : a.terms()) r.add(b, reversion_sign(b) < 0 ? -c : c);
  return r;
}

Multivector clifford_conjugate(const Multivector& a) {
  Multivector r(a.dim());
  for (const auto& [b, c] : a.terms()) r.add(b, conjugation_sign(b) < 0 ? -c : c);
  return r;
}

Multivector vector_embed(const std::vector<ExactScalar>& coords) {
  int m = static_cast<int>(coords.size());
  Multivector r(m);
  for (int i = 0; i < m; ++i) r.add(Blade(1) << i, coords[i]);
  return r;
}

ExactScalar gamma_half(int n) {
  if (n <= 0) throw DomainError("gamma_half needs a positive argument");
  if (n % 2 == 0) {
    mpz_class f = 1;
    for (int i = 2; i < n / 2; ++i) f *= i;
    return ExactScalar(mpq_class(f));
  }
  // Gamma(j + 1/2) = (2j)! / (4^j j!) sqrt(pi)
  int j = (n - 1) / 2;
  mpq_class q = 1;
  for (int i = 1; i <= j; ++i) q *= mpq_class(2 * i - 1, 2);
  q.canonicalize();
  return ExactScalar(q, 1);
}

ExactScalar sphere_area(int m) { return 2 * ExactScalar::pi_power(m) / gamma_half(m); }

}  // namespace hsl
