#include "hsl/spaces.hpp"

#include <map>
#include <mutex>

namespace hsl {

namespace {

// all exponent vectors of total degree k in variables [first, m)
void degree_monomials(int m, int k, int first, Var v, Monomial cur, std::vector<Monomial>& out) {
  if (first == m - 1) {
    cur.at(v, first) = static_cast<std::uint8_t>(k);
    out.push_back(cur);
    return;
  }
  for (int e = k; e >= 0; --e) {
    cur.at(v, first) = static_cast<std::uint8_t>(e);
    degree_monomials(m, k - e, first + 1, v, cur, out);
  }
}

std::vector<Monomial> monomials_of_degree(int m, int k, Var v, int first = 0) {
  std::vector<Monomial> out;
  if (k < 0) return out;
  if (first >= m) {
    if (k == 0) out.push_back(Monomial{});
    return out;
  }
  degree_monomials(m, k, first, v, Monomial{}, out);
  return out;
}

// single pi grade shared by every sphere moment in dimension m
int moment_grade(int m) { return sphere_area(m).grade(); }

mpq_class graded_rational(const ExactScalar& s, int pi2) {
  if (s.is_zero()) return 0;
  if (!s.is_homogeneous() || s.grade() != pi2) throw DomainError("unexpected pi grade in exact solve: " + s.str());
  return s.terms()[0].q;
}

long binom(long n, long r) {
  if (r < 0 || n < r) return 0;
  long b = 1;
  for (long i = 1; i <= r; ++i) b = b * (n - r + i) / i;
  return b;
}

}  // namespace

ExactScalar sphere_moment(int m, const Monomial& mono, Var var) {
  static std::mutex mu;
  static std::map<std::pair<int, std::array<std::uint8_t, kMaxDim>>, ExactScalar> cache;
  std::array<std::uint8_t, kMaxDim> key{};
  int total = 0;
  for (int i = 0; i < m; ++i) {
    key[i] = mono.at(var, i);
    if (key[i] % 2) return ExactScalar();
    total += key[i];
  }
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({m, key});
  if (it != cache.end()) return it->second;
  // 2 prod Gamma((a_i+1)/2) / Gamma((|a|+m)/2)
  ExactScalar num(2);
  for (int i = 0; i < m; ++i) num *= gamma_half(key[i] + 1);
  ExactScalar value = num / gamma_half(total + m);
  cache.emplace(std::make_pair(m, key), value);
  return value;
}

CliffPoly integrate_sphere(const CliffPoly& f, Var var) {
  const int m = f.dim();
  std::vector<PolyTerm> out;
  for (const auto& t : f.terms()) {
    ExactScalar mom = sphere_moment(m, t.mono, var);
    if (mom.is_zero()) continue;
    PolyTerm n = t;
    for (int i = 0; i < m; ++i) n.mono.at(var, i) = 0;
    n.c = mom * t.c;
    out.push_back(std::move(n));
  }
  return CliffPoly::from_terms(m, std::move(out));
}

CliffPoly sphere_inner_product(const CliffPoly& f, const CliffPoly& g, Var var) {
  return integrate_sphere(f * g, var);
}

Multivector constant_value(const CliffPoly& f) {
  Multivector r(f.dim());
  for (const auto& t : f.terms()) {
    if (t.mono != Monomial{}) throw DomainError("constant_value: polynomial still depends on a variable");
    r.add(t.blade, t.c);
  }
  return r;
}

CliffPoly rename_var(const CliffPoly& f, Var from, Var to) {
  std::vector<PolyTerm> out;
  for (const auto& t : f.terms()) {
    PolyTerm n = t;
    for (int i = 0; i < f.dim(); ++i) {
      if (from != to && t.mono.at(to, i)) throw DomainError("rename_var: target variable already present");
      n.mono.at(to, i) = t.mono.at(from, i);
      if (from != to) n.mono.at(from, i) = 0;
    }
    out.push_back(std::move(n));
  }
  return CliffPoly::from_terms(f.dim(), std::move(out));
}

long harmonic_dimension(int m, int k) { return binom(m + k - 1, k) - binom(m + k - 3, k - 2); }
long monogenic_rank(int m, int k) { return k < 0 ? 0 : binom(m + k - 2, k); }

size_t SpaceBasis::real_dimension() const { return elements.size() * (size_t(1) << m); }

std::vector<CliffPoly> SpaceBasis::real_elements() const {
  std::vector<CliffPoly> out;
  for (const auto& e : elements)
    for (Blade a = 0; a < (Blade(1) << m); ++a) {
      Multivector ea = Multivector::basis(m, a);
      out.push_back(side == Side::Left ? e * ea : ea * e);
    }
  return out;
}

namespace {

std::vector<CliffPoly> harmonic_scalars(int m, int k) {
  auto cols = monomials_of_degree(m, k, Var::U);
  auto rows = monomials_of_degree(m, k - 2, Var::U);
  std::map<Monomial, size_t> row_index;
  for (size_t i = 0; i < rows.size(); ++i) row_index[rows[i]] = i;
  std::vector<CliffPoly> out;
  if (rows.empty()) {
    for (const auto& c : cols) out.push_back(CliffPoly::monomial(m, c, Multivector(m, ExactScalar(1))));
    return out;
  }
  RationalMatrix a(rows.size(), cols.size());
  for (size_t j = 0; j < cols.size(); ++j) {
    for (int i = 0; i < m; ++i) {
      int e = cols[j].at(Var::U, i);
      if (e < 2) continue;
      Monomial d = cols[j];
      d.at(Var::U, i) = static_cast<std::uint8_t>(e - 2);
      a(row_index.at(d), j) += e * (e - 1);
    }
  }
  for (const auto& v : null_space(a)) {
    std::vector<PolyTerm> terms;
    for (size_t j = 0; j < cols.size(); ++j)
      if (v[j] != 0) terms.push_back({cols[j], 0, ExactScalar(v[j])});
    out.push_back(CliffPoly::from_terms(m, std::move(terms)));
  }
  return out;
}

// Cauchy-Kovalevskaya extension of u_2..u_m monomials: sum_j u_1^j/j! (e_1 D')^j mu
std::vector<CliffPoly> monogenic_left(int m, int k) {
  std::vector<CliffPoly> out;
  const CliffPoly e1(Multivector::e(m, 1));
  for (const auto& mu : monomials_of_degree(m, k, Var::U, 1)) {
    CliffPoly a = CliffPoly::monomial(m, mu, Multivector(m, ExactScalar(1)));
    CliffPoly p = a;
    mpz_class fact = 1;
    for (int j = 1; j <= k; ++j) {
      CliffPoly d(m);
      for (int i = 1; i < m; ++i) d += generator_mul(a.diff(Var::U, i), i, Side::Left);
      a = e1 * d;
      if (a.is_zero()) break;
      fact *= j;
      CliffPoly term = a;
      for (int l = 0; l < j; ++l) term = term.times_variable(Var::U, 0);
      p += ExactScalar(mpq_class(1, fact)) * term;
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

SpaceBasis build_basis(int m, int k, Space kind, Side side) {
  if (m < 3) throw DomainError("build_basis requires m >= 3");
  if (k < 0) throw DomainError("build_basis requires k >= 0");
  SpaceBasis b;
  b.m = m;
  b.k = k;
  b.kind = kind;
  b.side = side;
  switch (kind) {
    case Space::Hk: b.elements = harmonic_scalars(m, k); break;
    case Space::Mk:
      b.elements = monogenic_left(m, k);
      if (side == Side::Right)
        for (auto& e : b.elements) e = e.conj();
      break;
    case Space::uMk1: {
      if (k < 1) throw DomainError("uM_{k-1} requires k >= 1");
      SpaceBasis prev = build_basis(m, k - 1, Space::Mk, side);
      const CliffPoly u = CliffPoly::vector(m, Var::U);
      for (const auto& e : prev.elements) b.elements.push_back(side == Side::Left ? u * e : e * u);
      break;
    }
  }
  return b;
}

ReproducingKernel build_reproducing_kernel(const SpaceBasis& basis) {
  if (basis.kind == Space::uMk1) throw DomainError("reproducing kernels are built for Hk or Mk");
  if (basis.side != Side::Left) throw DomainError("reproducing kernels are built for left spaces");
  const int m = basis.m, k = basis.k;
  const int g = moment_grade(m);
  ReproducingKernel z;
  z.m = m;
  z.k = k;
  z.kind = basis.kind == Space::Hk ? ReproducingKernel::Kind::Z2 : ReproducingKernel::Kind::Z1;
  z.kernel = CliffPoly(m);

  // ansatz: sum_ij C_ij L_i(u) h_j(v) with h the scalar harmonics, L_i = h_i (Z2) or P_k^+ h_i (Z1)
  const std::vector<CliffPoly> h = harmonic_scalars(m, k);
  const size_t n = h.size();
  std::vector<CliffPoly> left = h;
  if (z.kind == ReproducingKernel::Kind::Z1) {
    OperatorSpec pp{OpName::Pk_plus, Side::Left, m, k};
    for (auto& l : left) l = apply(pp, l);
  }
  const std::vector<CliffPoly>& targets = basis.elements;
  const size_t nt = targets.size();

  // M_{ia} = int conj(L_i) f_a dS, a Clifford number of grade g
  std::vector<std::vector<Multivector>> mij(n, std::vector<Multivector>(nt));
  for (size_t i = 0; i < n; ++i)
    for (size_t a = 0; a < nt; ++a) mij[i][a] = constant_value(sphere_inner_product(left[i].conj(), targets[a]));

  // expand each target f_a(v) = sum_j h_j(v) N_{ja} per blade
  std::vector<Monomial> monos = monomials_of_degree(m, k, Var::U);
  std::map<Monomial, size_t> mono_index;
  for (size_t i = 0; i < monos.size(); ++i) mono_index[monos[i]] = i;
  RationalMatrix hmat(monos.size(), n);
  for (size_t j = 0; j < n; ++j)
    for (const auto& t : h[j].terms()) hmat(mono_index.at(t.mono), j) = t.c.to_rational();
  const Blade nb = Blade(1) << m;
  std::vector<std::vector<Multivector>> nja(n, std::vector<Multivector>(nt, Multivector(m)));
  for (size_t a = 0; a < nt; ++a)
    for (Blade bl = 0; bl < nb; ++bl) {
      CliffPoly comp = targets[a].blade_part(bl);
      if (comp.is_zero()) continue;
      std::vector<mpq_class> rhs(monos.size());
      for (const auto& t : comp.terms()) rhs[mono_index.at(t.mono)] = t.c.to_rational();
      auto sol = solve_min_norm(hmat, rhs);
      if (!sol) throw DomainError("basis element is not harmonic; reproducing system inconsistent");
      for (size_t j = 0; j < n; ++j)
        if (sol->x[j] != 0) nja[j][a].add(bl, ExactScalar(sol->x[j]));
    }

  // per j: sum_i C_ij M_{ia} = N_{ja}, all blades
  const ExactScalar unpi = ExactScalar::pi_power(-g);
  for (size_t j = 0; j < n; ++j) {
    std::vector<std::vector<mpq_class>> rows;
    std::vector<mpq_class> rhs;
    for (size_t a = 0; a < nt; ++a)
      for (Blade bl = 0; bl < nb; ++bl) {
        std::vector<mpq_class> row(n);
        bool any = false;
        for (size_t i = 0; i < n; ++i) {
          row[i] = graded_rational(mij[i][a].coeff(bl), g);
          any = any || row[i] != 0;
        }
        mpq_class b = nja[j][a].coeff(bl).to_rational();
        if (!any && b == 0) continue;
        rows.push_back(std::move(row));
        rhs.push_back(b);
      }
    RationalMatrix A(rows.size(), n);
    for (size_t r = 0; r < rows.size(); ++r)
      for (size_t i = 0; i < n; ++i) A(r, i) = rows[r][i];
    auto sol = solve_min_norm(A, rhs);
    if (!sol) throw DomainError("reproducing system is inconsistent (basis bug)");
    z.nullity += sol->nullity;
    CliffPoly hv = rename_var(h[j], Var::U, Var::V);
    for (size_t i = 0; i < n; ++i)
      if (sol->x[i] != 0) z.kernel += (ExactScalar(sol->x[i]) * unpi) * (left[i] * hv);
  }
  if (!verify_reproducing(z, basis)) throw DomainError("reproducing kernel failed post-verification");
  return z;
}

bool verify_reproducing(const ReproducingKernel& z, const SpaceBasis& basis) {
  const CliffPoly zc = z.kernel.conj();
  for (const auto& f : basis.elements) {
    CliffPoly lhs = integrate_sphere(zc * f, Var::U);
    if (lhs != rename_var(f, Var::U, Var::V)) return false;
  }
  return true;
}

CliffPoly project(const CliffPoly& f, const SpaceBasis& basis) {
  const int m = basis.m;
  if (!f.is_homogeneous(Var::U, basis.k)) throw DomainError("project: input must be homogeneous of degree k in u");
  const int g = moment_grade(m);
  std::vector<CliffPoly> w = basis.real_elements();
  const size_t n = w.size();
  std::vector<CliffPoly> wc;
  for (const auto& e : w) wc.push_back(e.conj());
  RationalMatrix gram(n, n);
  for (size_t s = 0; s < n; ++s)
    for (size_t t = s; t < n; ++t) {
      ExactScalar v = constant_value(sphere_inner_product(wc[s], w[t])).scalar_part();
      gram(s, t) = gram(t, s) = graded_rational(v, g);
    }
  // f may carry passive x, v: project each passive monomial separately
  std::map<Monomial, CliffPoly> slices;
  for (const auto& t : f.terms()) {
    Monomial passive = t.mono;
    for (int i = 0; i < m; ++i) passive.at(Var::U, i) = 0;
    PolyTerm only_u = t;
    for (int i = 0; i < m; ++i) {
      only_u.mono.at(Var::X, i) = 0;
      only_u.mono.at(Var::V, i) = 0;
    }
    auto it = slices.try_emplace(passive, CliffPoly(m)).first;
    it->second += CliffPoly::from_terms(m, {only_u});
  }
  CliffPoly out(m);
  for (const auto& [passive, slice] : slices) {
    std::vector<mpq_class> rhs(n);
    for (size_t s = 0; s < n; ++s)
      rhs[s] = graded_rational(constant_value(sphere_inner_product(wc[s], slice)).scalar_part(), g);
    auto sol = solve_min_norm(gram, rhs);
    if (!sol) throw DomainError("project: singular Gram system");
    CliffPoly proj(m);
    for (size_t s = 0; s < n; ++s)
      if (sol->x[s] != 0) proj += ExactScalar(sol->x[s]) * w[s];
    out += CliffPoly::monomial(m, passive, Multivector(m, ExactScalar(1))) * proj;
  }
  return out;
}

}  // namespace hsl
