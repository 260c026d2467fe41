#include "doctest.h"
#include "test_util.hpp"

using namespace hsl;
using namespace testutil;

namespace {

OperatorSpec op(OpName n, int m, int k, Side s = Side::Left) { return OperatorSpec{n, s, m, k}; }

RadialFunction ap(OpName n, int m, int k, const RadialFunction& f, Side s = Side::Left) { return apply(op(n, m, k, s), f); }

// random H_k-valued polynomial with Clifford coefficients, x-degree <= xdeg
CliffPoly random_hk(int m, int k, int xdeg, std::uint64_t seed) {
  return random_space_function(build_basis(m, k, Space::Hk), xdeg, seed, 3);
}

}  // namespace

TEST_SUITE("calculus") {

TEST_CASE("D_u applied to u") {
  CliffPoly U = CliffPoly::vector(3, Var::U);
  CHECK(apply(op(OpName::Du, 3, 1), U) == CliffPoly(3, -3));
}

TEST_CASE("P_1^+ of u_1 in dimension three") {
  const int m = 3;
  CliffPoly u1 = var(m, Var::U, 0);
  CliffPoly p = apply(op(OpName::Pk_plus, m, 1), u1);
  CHECK(p == u1 + q(1, 3) * (CliffPoly::vector(m, Var::U) * e(m, 1)));
  // brute-force monogenicity: sum_i e_i d/du_i
  CliffPoly du(m);
  for (int i = 0; i < m; ++i) du += e(m, i + 1) * p.diff(Var::U, i);
  CHECK(du.is_zero());
}

TEST_CASE("D2 at k = 0 is the Laplacian") {
  Rng rng(41);
  for (int m : {3, 5}) {
    RadialFunction f(rng.poly(m, {Var::X}, 4, 6));
    RadialFunction lap(m);
    for (int i = 0; i < m; ++i) lap += f.diff(Var::X, i).diff(Var::X, i);
    CHECK(ap(OpName::D2, m, 0, f) == lap);
  }
}

TEST_CASE("u dot D_x on x_1") {
  CHECK(apply(op(OpName::u_dot_Dx, 3, 1), var(3, Var::X, 0)) == var(3, Var::U, 0));
}

TEST_CASE("domain check examples") {
  const int m = 3;
  CliffPoly u1 = var(m, Var::U, 0);
  CHECK(domain_check(RadialFunction(u1), Space::Hk, m, 1).ok);
  DomainResult r = domain_check(RadialFunction(u1 * u1), Space::Hk, m, 2);
  CHECK(!r.ok);
  CHECK(r.residual == RadialFunction(CliffPoly(m, 2)));
  CHECK(domain_check(RadialFunction(apply(op(OpName::Pk_plus, m, 1), u1)), Space::Mk, m, 1).ok);
  CHECK(!domain_check(RadialFunction(u1), Space::Mk, m, 1).ok);
  CHECK_THROWS_AS(domain_check(RadialFunction(u1 + u1 * u1), Space::Hk, m, 1), DomainError);
}

TEST_CASE("parameter errors") {
  CHECK_THROWS_AS(op(OpName::Tk, 3, 0).validate(), DomainError);
  CHECK_THROWS_AS(op(OpName::Qk, 3, 0).validate(), DomainError);
  CHECK_THROWS_AS(op(OpName::p0, 3, 0).validate(), DomainError);
  CHECK_THROWS_AS(op(OpName::D2, 2, 1).validate(), SingularParameter);
  CHECK_THROWS_AS(op(OpName::Ak, 2, 1).validate(), SingularParameter);
  CHECK_NOTHROW(op(OpName::D2, 3, 0).validate());
  CHECK_NOTHROW(op(OpName::Rk, 3, 0).validate());
  CHECK_THROWS_AS(verify_decomposition(2, 1, RadialFunction(2)), SingularParameter);
  CHECK_THROWS_AS(OperatorSpec::parse("Zk", 3, 1), ParseError);
}

TEST_CASE("pipeline text") {
  auto ops = parse_pipeline("Tk* . Rk . Pk+", 3, 1);
  REQUIRE(ops.size() == 3);
  CHECK(ops[0].name == OpName::Pk_plus);
  CHECK(ops[1].name == OpName::Rk);
  CHECK(ops[2].name == OpName::Tk_star);
  CHECK(OperatorSpec::parse("Rk_r", 3, 1).side == Side::Right);
  CHECK(OperatorSpec::parse("Ak_r", 3, 1).name == OpName::Ak_r);
  CliffPoly f = random_hk(3, 1, 2, 3);
  RadialFunction direct = ap(OpName::Tk_star, 3, 1, ap(OpName::Rk, 3, 1, ap(OpName::Pk_plus, 3, 1, RadialFunction(f))));
  CHECK(apply_pipeline(ops, RadialFunction(f)) == direct);
}

TEST_CASE("decomposition examples") {
  {
    const int m = 3;
    Monomial mono;
    mono.at(Var::U, 0) = 1;
    mono.at(Var::X, 0) = 2;
    auto r = verify_decomposition(m, 1, RadialFunction(CliffPoly::monomial(m, mono, Multivector(m, 1))));
    CHECK(r.eq_first.is_zero());
    CHECK(r.eq_second.is_zero());
    CHECK(r.lemma.is_zero());
    CHECK(r.ra_qb.is_zero());
  }
  {
    CliffPoly h = random_hk(3, 2, 0, 5);
    RadialFunction f(h);
    CHECK(ap(OpName::D2, 3, 2, f).is_zero());
    auto r = verify_decomposition(3, 2, f);
    CHECK(r.eq_first.is_zero());
    CHECK(r.eq_second.is_zero());
  }
  {
    RadialFunction f(random_hk(5, 2, 2, 9));
    auto r = verify_decomposition(5, 2, f);
    CHECK(r.eq_first.is_zero());
    CHECK(r.eq_second.is_zero());
    CHECK(r.lemma.is_zero());
    CHECK(r.ra_qb.is_zero());
  }
}

TEST_CASE("commutation examples") {
  {
    const int m = 3;
    RadialFunction f(CliffPoly::vector(m, Var::U) * var(m, Var::X, 0));
    CHECK(domain_check(f, Space::uMk1, m, 1).ok);
    CHECK(verify_commutation(m, 1, f).first.is_zero());
  }
  {
    RadialFunction f(random_hk(3, 1, 0, 2));
    auto [a, b] = verify_commutation(3, 1, f);
    CHECK(a.is_zero());
    CHECK(b.is_zero());
  }
  {
    const int m = 4;
    CliffPoly x2 = var(m, Var::X, 1);
    RadialFunction f(apply(op(OpName::Pk_plus, m, 1), var(m, Var::U, 0)) * x2 * x2);
    CHECK(domain_check(f, Space::Mk, m, 1).ok);
    CHECK(verify_commutation(m, 1, f).second.is_zero());
  }
}

TEST_CASE("property: projection algebra") {
  for (auto [m, k] : std::vector<std::pair<int, int>>{{3, 1}, {3, 2}, {4, 1}, {5, 2}}) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      RadialFunction f(random_hk(m, k, 2, seed));
      RadialFunction p = ap(OpName::Pk_plus, m, k, f), n = ap(OpName::Pk_minus, m, k, f);
      CHECK(p + n == f);
      CHECK(ap(OpName::Pk_plus, m, k, p) == p);
      CHECK(ap(OpName::Pk_minus, m, k, n) == n);
      CHECK(ap(OpName::Pk_plus, m, k, n).is_zero());
      CHECK(ap(OpName::Pk_minus, m, k, p).is_zero());
      // right-side projections obey the same algebra
      RadialFunction pr = ap(OpName::Pk_plus, m, k, f, Side::Right), nr = ap(OpName::Pk_minus, m, k, f, Side::Right);
      CHECK(pr + nr == f);
      CHECK(ap(OpName::Pk_plus, m, k, pr, Side::Right) == pr);
      CHECK(ap(OpName::Pk_plus, m, k, nr, Side::Right).is_zero());
    }
  }
}

TEST_CASE("property: vector identities on arbitrary polynomials") {
  Rng rng(43);
  for (int m : {3, 4, 5}) {
    for (int trial = 0; trial < 5; ++trial) {
      RadialFunction f(rng.poly(m, {Var::X, Var::U}, 3, 5));
      RadialFunction uf = vector_mul(f, Var::U);
      CHECK(dirac(uf, Var::X) == -vector_mul(dirac(f, Var::X), Var::U) - q(2) * u_dot_dx(f));
      CHECK(dirac(uf, Var::U) == -q(m) * f - q(2) * euler(f, Var::U) - vector_mul(dirac(f, Var::U), Var::U));
    }
  }
}

TEST_CASE("property: D_u(u p) = -(m+2k-2) p for monogenic p") {
  for (int m : {3, 4, 5})
    for (int k : {1, 2, 3}) {
      SpaceBasis b = build_basis(m, k - 1, Space::Mk);
      for (const auto& p : b.elements) {
        RadialFunction P(p);
        CHECK(dirac(vector_mul(P, Var::U), Var::U) == q(-(m + 2 * k - 2)) * P);
      }
    }
}

TEST_CASE("property: operator ranges between the two spaces") {
  for (auto [m, k] : std::vector<std::pair<int, int>>{{3, 1}, {3, 2}, {5, 1}}) {
    SpaceBasis mk = build_basis(m, k, Space::Mk), umk = build_basis(m, k, Space::uMk1);
    for (std::uint64_t seed : {4u, 5u}) {
      RadialFunction f(random_space_function(mk, 3, seed));
      RadialFunction g(random_space_function(umk, 3, seed + 10));
      REQUIRE(domain_check(f, Space::Mk, m, k).ok);
      REQUIRE(domain_check(g, Space::uMk1, m, k).ok);
      CHECK(domain_check(ap(OpName::Rk, m, k, f), Space::Mk, m, k).ok);
      CHECK(domain_check(ap(OpName::Qk, m, k, g), Space::uMk1, m, k).ok);
      CHECK(domain_check(ap(OpName::Tk, m, k, g), Space::Mk, m, k).ok);
      CHECK(domain_check(ap(OpName::Tk_star, m, k, f), Space::uMk1, m, k).ok);
    }
  }
}

TEST_CASE("property: D2 = R_k A_k + Q_k B_k") {
  for (auto [m, k] : std::vector<std::pair<int, int>>{{3, 1}, {3, 2}, {5, 1}, {6, 2}}) {
    RadialFunction f(random_hk(m, k, 3, 77));
    RadialFunction rhs = ap(OpName::Rk, m, k, ap(OpName::Ak, m, k, f)) + ap(OpName::Qk, m, k, ap(OpName::Bk, m, k, f));
    CHECK(ap(OpName::D2, m, k, f) == rhs);
  }
}

TEST_CASE("D2 kills x-linear functions") {
  const int m = 5, k = 1;
  SpaceBasis hk = build_basis(m, k, Space::Hk);
  for (const auto& h : hk.elements) {
    RadialFunction f(h * (var(m, Var::X, 0) + q(3) * var(m, Var::X, 2)));
    CHECK(ap(OpName::D2, m, k, f).is_zero());
  }
}

}
