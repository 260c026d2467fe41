#include "doctest.h"
#include "test_util.hpp"

using namespace hsl;
using namespace testutil;

namespace {

OperatorSpec op(OpName n, int m, int k, Side s = Side::Left) { return OperatorSpec{n, s, m, k}; }

Multivector pairing(const CliffPoly& f, const CliffPoly& g) { return constant_value(sphere_inner_product(f, g)); }

}  // namespace

TEST_SUITE("spaces") {

TEST_CASE("harmonic dimensions") {
  CHECK(build_basis(3, 1, Space::Hk).elements.size() == 3);
  CHECK(build_basis(3, 2, Space::Hk).elements.size() == 5);
  for (int k = 0; k <= 4; ++k) CHECK(harmonic_dimension(3, k) == 2 * k + 1);
  // m = 5: C(k+4,4) - C(k+2,4)
  CHECK(harmonic_dimension(5, 2) == 14);
  CHECK(monogenic_rank(3, 1) == 2);
  CHECK(monogenic_rank(5, 2) == 10);
}

TEST_CASE("monogenic basis spans the projections of u_i") {
  const int m = 3;
  SpaceBasis mk = build_basis(m, 1, Space::Mk);
  std::vector<CliffPoly> proj;
  for (int i = 0; i < m; ++i) {
    CliffPoly p = apply(op(OpName::Pk_plus, m, 1), var(m, Var::U, i));
    CHECK(domain_check(RadialFunction(p), Space::Mk, m, 1).ok);
    CHECK(project(p, mk) == p);
    for (Blade b = 0; b < 8; ++b) proj.push_back(p * Multivector::basis(m, b));
  }
  CHECK(rank(coefficient_matrix(proj)) == mk.real_dimension());
}

TEST_CASE("property: monogenic real dimension equals the null space of D_u") {
  for (auto [m, k] : std::vector<std::pair<int, int>>{{3, 1}, {3, 2}, {4, 2}, {5, 1}}) {
    // independent oracle: D_u on every Clifford-valued degree-k monomial
    std::vector<CliffPoly> images;
    auto monos = u_monomials(m, k);
    for (const auto& mono : monos)
      for (Blade b = 0; b < (Blade(1) << m); ++b) {
        CliffPoly f = CliffPoly::monomial(m, mono, Multivector::basis(m, b));
        CliffPoly d(m);
        for (int i = 0; i < m; ++i) d += e(m, i + 1) * f.diff(Var::U, i);
        images.push_back(d);
      }
    RationalMatrix a = coefficient_matrix(images);
    size_t nullity = monos.size() * (size_t(1) << m) - rank(a);
    SpaceBasis mk = build_basis(m, k, Space::Mk);
    CHECK(mk.real_dimension() == nullity);
    CHECK(rank(coefficient_matrix(mk.real_elements())) == mk.real_dimension());
    SpaceBasis hk = build_basis(m, k, Space::Hk);
    SpaceBasis umk = build_basis(m, k, Space::uMk1);
    CHECK(hk.real_dimension() == mk.real_dimension() + umk.real_dimension());
  }
}

TEST_CASE("basis elements pass their domain checks and are independent") {
  for (auto [m, k] : std::vector<std::pair<int, int>>{{3, 0}, {3, 2}, {5, 1}, {6, 2}}) {
    for (Space s : {Space::Hk, Space::Mk, Space::uMk1}) {
      if (s == Space::uMk1 && k == 0) continue;
      SpaceBasis b = build_basis(m, k, s);
      for (const auto& f : b.elements) {
        CHECK(f.is_homogeneous(Var::U, k));
        CHECK(domain_check(RadialFunction(f), s, m, k).ok);
      }
      CHECK(rank(coefficient_matrix(b.real_elements())) == b.real_dimension());
    }
  }
}

TEST_CASE("sphere pairing examples") {
  const int m = 3;
  CliffPoly u1 = var(m, Var::U, 0), u2 = var(m, Var::U, 1);
  CHECK(pairing(one(m), one(m)) == Multivector(m, pi_q(4, 1, 2)));
  CHECK(pairing(u1, u1) == Multivector(m, pi_q(4, 3, 2)));
  CHECK(pairing(u1, u2).is_zero());
  for (int d = 3; d <= 7; ++d) CHECK(pairing(one(d), one(d)) == Multivector(d, sphere_area(d)));
  // Clifford-valued pairing keeps factor order
  CliffPoly a = e(m, 1) * u1, b = e(m, 2) * u1;
  CHECK(pairing(a, b) == -pairing(b, a));
}

TEST_CASE("reproducing kernel examples") {
  for (int m : {3, 5}) {
    ExactScalar inv_omega = sphere_area(m).inverse();
    CHECK(zonal_kernel(m, 0, ReproducingKernel::Kind::Z2).kernel == CliffPoly(m, inv_omega));
    CHECK(zonal_kernel(m, 0, ReproducingKernel::Kind::Z1).kernel == CliffPoly(m, inv_omega));
  }
  const int m = 3;
  CliffPoly uv(m);
  for (int i = 0; i < m; ++i) uv += var(m, Var::U, i) * var(m, Var::V, i);
  CHECK(zonal_kernel(m, 1, ReproducingKernel::Kind::Z2).kernel == pi_q(3, 4, -2) * uv);
  const auto& z1 = zonal_kernel(m, 1, ReproducingKernel::Kind::Z1);
  SpaceBasis mk = build_basis(m, 1, Space::Mk);
  CHECK(verify_reproducing(z1, mk));
  // reproduce every P_1^+(u_i) times a blade by direct integration
  for (int i = 0; i < m; ++i) {
    CliffPoly p = apply(op(OpName::Pk_plus, m, 1), var(m, Var::U, i)) * Multivector::e(m, 2);
    CliffPoly lhs = integrate_sphere(z1.kernel.conj() * p, Var::U);
    CHECK(lhs == rename_var(p, Var::U, Var::V));
  }
}

TEST_CASE("property: reproducing kernels reproduce full bases") {
  for (int m : {3, 5})
    for (int k = 0; k <= 2; ++k) {
      SpaceBasis hk = build_basis(m, k, Space::Hk), mk = build_basis(m, k, Space::Mk);
      const auto& z2 = zonal_kernel(m, k, ReproducingKernel::Kind::Z2);
      const auto& z1 = zonal_kernel(m, k, ReproducingKernel::Kind::Z1);
      CHECK(verify_reproducing(z2, hk));
      CHECK(verify_reproducing(z1, mk));
      CHECK(z2.kernel.is_scalar());
      CHECK(rename_var(rename_var(rename_var(z2.kernel, Var::U, Var::X), Var::V, Var::U), Var::X, Var::V) == z2.kernel);
      for (const auto& h : hk.elements) {
        CliffPoly lhs = integrate_sphere(z2.kernel.conj() * h, Var::U);
        CHECK(lhs == rename_var(h, Var::U, Var::V));
      }
    }
}

TEST_CASE("projection examples") {
  const int m = 3;
  SpaceBasis h2 = build_basis(m, 2, Space::Hk);
  CHECK(project(CliffPoly::norm_squared(m, Var::U), h2).is_zero());
  CliffPoly f = h2.elements[0] * Multivector::e(m, 1) + h2.elements[1];
  CHECK(project(f, h2) == f);
  CHECK(project(project(f + CliffPoly::norm_squared(m, Var::U), h2), h2) == project(f + CliffPoly::norm_squared(m, Var::U), h2));
}

TEST_CASE("property: Almansi-Fischer reassembly") {
  for (auto [m, k] : std::vector<std::pair<int, int>>{{3, 1}, {3, 2}, {5, 1}, {5, 2}, {6, 1}}) {
    SpaceBasis hk = build_basis(m, k, Space::Hk);
    for (const auto& h : hk.elements) {
      CliffPoly p = apply(op(OpName::Pk_plus, m, k), h), n = apply(op(OpName::Pk_minus, m, k), h);
      CHECK(p + n == h);
      CHECK(domain_check(RadialFunction(p), Space::Mk, m, k).ok);
      CHECK(domain_check(RadialFunction(n), Space::uMk1, m, k).ok);
    }
  }
}

TEST_CASE("property: right-monogenic times u is orthogonal to left-monogenic") {
  for (auto [m, k] : std::vector<std::pair<int, int>>{{3, 1}, {3, 2}, {5, 1}, {5, 2}}) {
    SpaceBasis right = build_basis(m, k - 1, Space::Mk, Side::Right), left = build_basis(m, k, Space::Mk);
    CliffPoly U = CliffPoly::vector(m, Var::U);
    for (const auto& p : right.elements) {
      CHECK(domain_check(RadialFunction(p), Space::Mk, m, k - 1, Side::Right).ok);
      for (const auto& q2 : left.elements) CHECK(integrate_sphere(p * U * q2, Var::U).is_zero());
    }
  }
}

TEST_CASE("a_k values") {
  CHECK(a_k(3, 1) == q(1, 3));
  CHECK(a_k(5, 2) == q(3, 7));
  CHECK(a_k(6, 0) == q(1));
}

}
