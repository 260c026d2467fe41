#include <cmath>

#include "doctest.h"
#include "test_util.hpp"

using namespace hsl;
using namespace testutil;

namespace {

CliffPoly u_mono(int m, std::vector<int> a) {
  Monomial mono;
  for (size_t i = 0; i < a.size(); ++i) mono.at(Var::U, static_cast<int>(i)) = static_cast<std::uint8_t>(a[i]);
  return CliffPoly::monomial(m, mono, Multivector(m, 1));
}

double scalar(const Multivector& a) { return a.scalar_part().to_double(); }
double scalar(const CliffPoly& a) { return a.is_zero() ? 0.0 : scalar(constant_value(a)); }

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("sphere integrals") {
  QuadratureRule ex = QuadratureRule::exact(3);
  CHECK(integrate_sphere_u(one(3), ex) == Multivector(3, pi_q(4, 1, 2)));
  CHECK(integrate_sphere_u(u_mono(3, {1, 1, 0}), ex).is_zero());
  // 2 Gamma(5/2) Gamma(1/2)^2 / Gamma(7/2) = 4 pi / 5
  CHECK(integrate_sphere_u(u_mono(3, {4, 0, 0}), ex) == Multivector(3, pi_q(4, 5, 2)));
  QuadratureRule g = QuadratureRule::product_gauss(3, 6);
  CHECK(scalar(integrate_sphere_u(u_mono(3, {4, 0, 0}), g)) == doctest::Approx(4 * M_PI / 5).epsilon(1e-13));
}

TEST_CASE("Gauss-Gegenbauer rule") {
  std::vector<double> t, w;
  gauss_gegenbauer(5, 0.5, t, w);
  // weight sqrt(1-t^2): moments int t^{2j} (1-t^2)^{1/2} dt = pi/2, pi/8, pi/16
  double m0 = 0, m2 = 0, m4 = 0;
  for (size_t i = 0; i < t.size(); ++i) {
    m0 += w[i];
    m2 += w[i] * t[i] * t[i];
    m4 += w[i] * std::pow(t[i], 4);
  }
  CHECK(m0 == doctest::Approx(M_PI / 2).epsilon(1e-13));
  CHECK(m2 == doctest::Approx(M_PI / 8).epsilon(1e-13));
  CHECK(m4 == doctest::Approx(M_PI / 16).epsilon(1e-13));
}

TEST_CASE("property: product rule exactness and refinement") {
  Rng rng(61);
  for (int m = 3; m <= 6; ++m) {
    for (int deg : {4, 8, 12}) {
      QuadratureRule g = QuadratureRule::product_gauss(m, deg);
      CHECK(g.size() == g.weights.size());
      CHECK(g.coords.size() == g.size() * m);
      double area = 0;
      for (double w : g.weights) area += w;
      CHECK(area == doctest::Approx(sphere_area(m).to_double()).epsilon(1e-12));
      for (int trial = 0; trial < 4; ++trial) {
        std::vector<int> a(m, 0);
        int d = rng.uniform(0, deg);
        for (int j = 0; j < d; ++j) ++a[rng.uniform(0, m - 1)];
        CliffPoly f = u_mono(m, a);
        double exact = scalar(integrate_sphere(f, Var::U));
        double approx = scalar(integrate_sphere_u(f, g));
        CHECK(approx == doctest::Approx(exact).epsilon(1e-12).scale(1.0));
      }
      QuadratureRule r = g.refined();
      CHECK(r.degree >= 2 * deg);
      CHECK(r.size() > g.size());
    }
  }
}

TEST_CASE("property: exact and float integration agree") {
  Rng rng(67);
  for (int m : {3, 4, 5}) {
    QuadratureRule g = QuadratureRule::product_gauss(m, 12);
    for (int trial = 0; trial < 5; ++trial) {
      CliffPoly f = rng.poly(m, {Var::U}, 6, 5);
      Multivector a = integrate_sphere_u(f, QuadratureRule::exact(m)), b = integrate_sphere_u(f, g);
      for (Blade bl = 0; bl < (Blade(1) << m); ++bl) {
        double x = a.coeff(bl).to_double(), y = b.coeff(bl).to_double();
        CHECK(std::abs(x - y) <= 1e-10 * std::max(1.0, std::abs(x)));
      }
    }
  }
}

TEST_CASE("ball integrals") {
  QuadratureRule ex5 = QuadratureRule::exact(5), ex3 = QuadratureRule::exact(3);
  Ball unit;
  CHECK(integrate_ball_x(RadialFunction::r_power(5, -3), unit, ex5) == CliffPoly(5, q(1, 2) * omega(5)));
  Ball half;
  half.radius = mpq_class(1, 2);
  CHECK(integrate_ball_x(RadialFunction(one(4)), half, QuadratureRule::exact(4)) == CliffPoly(4, q(1, 64) * omega(4)));
  CliffPoly x1 = var(3, Var::X, 0);
  CHECK(integrate_ball_x(RadialFunction(x1 * x1), unit, ex3) == CliffPoly(3, pi_q(4, 15, 2)));
  // non-integrable singularity
  CHECK_THROWS(integrate_ball_x(RadialFunction::r_power(3, -6), unit, ex3));
}

TEST_CASE("boundary sphere integrals") {
  const int m = 5;
  Ball b;
  b.radius = mpq_class(1, 2);
  CHECK(integrate_boundary_sphere_x(RadialFunction::r_power(m, 2 - m), b, QuadratureRule::exact(m)) ==
        CliffPoly(m, q(1, 2) * omega(m)));
  // Stokes instance: int_{S^2} x x_1 dsigma = (4 pi/3) e_1 = int_{B_1} e_1 dV
  Ball unit;
  QuadratureRule ex = QuadratureRule::exact(3);
  CliffPoly lhs = integrate_boundary_sphere_x(RadialFunction(CliffPoly::vector(3, Var::X) * var(3, Var::X, 0)), unit, ex);
  CHECK(lhs == CliffPoly(Multivector::e(3, 1) * Multivector(3, pi_q(4, 3, 2))));
  CHECK(lhs == integrate_ball_x(RadialFunction(e(3, 1)), unit, ex));
  // the same through the normal option
  CHECK(integrate_boundary_sphere_x(RadialFunction(var(3, Var::X, 0)), unit, ex, Orientation::Outward) == lhs);
  CHECK(integrate_boundary_sphere_x(RadialFunction(var(3, Var::X, 0)), unit, ex, Orientation::Inward) == -lhs);
}

TEST_CASE("unit-sphere average of the Kelvin argument") {
  const int m = 3;
  CliffPoly X = CliffPoly::vector(m, Var::X), U = CliffPoly::vector(m, Var::U);
  CliffPoly xux1 = (X * U * X).blade_part(1);
  CliffPoly avg = omega(m).inverse() * integrate_boundary_sphere_x(RadialFunction(xux1), Ball{}, QuadratureRule::exact(m));
  CHECK(avg == q(1, 3) * var(m, Var::U, 0));
}

TEST_CASE("off-centre domains") {
  const int m = 3;
  Ball b;
  b.offset = {mpq_class(1, 5), 0, 0};
  QuadratureRule g = QuadratureRule::product_gauss(m, 10);
  // |z - offset|^2 integrated over the sphere of radius 1 around offset is omega
  CliffPoly val = integrate_boundary_sphere_x(RadialFunction(var(m, Var::X, 0)), b, g);
  CHECK(scalar(val) == doctest::Approx(4 * M_PI / 5).epsilon(1e-12));
  // polynomial integrand: exact route through translation
  CHECK(integrate_ball_x(RadialFunction(var(m, Var::X, 0)), b, QuadratureRule::exact(m)) ==
        CliffPoly(m, q(1, 5) * pi_q(4, 3, 2)));
  CliffPoly t = translate_x(var(m, Var::X, 0) * var(m, Var::X, 1), {1, 2, 3});
  CHECK(t == (var(m, Var::X, 0) + one(m)) * (var(m, Var::X, 1) + q(2) * one(m)));
}

TEST_CASE("Moebius generator examples") {
  const int m = 3;
  CliffPoly f = var(m, Var::X, 0) * var(m, Var::U, 0);
  RadialFunction t = mobius_transform_function(f, MobiusGenerator::translation({2, 0, mpq_class(1, 3)}), Weight::J2);
  CHECK(t == RadialFunction((var(m, Var::X, 0) + q(2) * one(m)) * var(m, Var::U, 0)));
  CHECK(conformal_weight(MobiusGenerator::translation({2, 0, 0}), Weight::J2) == RadialFunction(one(m)));

  MobiusGenerator rot = MobiusGenerator::rotation(Multivector::e(m, 1) * Multivector::e(m, 2));
  auto xs = mobius_x_images(rot);
  CHECK(xs[0] == RadialFunction(-var(m, Var::X, 0)));
  CHECK(xs[1] == RadialFunction(-var(m, Var::X, 1)));
  CHECK(xs[2] == RadialFunction(var(m, Var::X, 2)));
  auto us = mobius_u_images(rot);
  RadialFunction n2(m);
  for (const auto& c : us) n2 += c * c;
  CHECK(n2 == RadialFunction(CliffPoly::norm_squared(m, Var::U)));
  CHECK_THROWS(MobiusGenerator::rotation(Multivector::e(m, 1)));
  CHECK_THROWS(MobiusGenerator::rotation(Multivector(m, 2)));

  // dilation x -> 4x, J_2 = |d|^{2-m}, J_{-2} = |d|^{-m-2}, d = 1/2
  MobiusGenerator dil = MobiusGenerator::dilation(5, 2);
  auto dx = mobius_x_images(dil);
  CHECK(dx[0] == RadialFunction(q(4) * var(5, Var::X, 0)));
  CHECK(conformal_weight(dil, Weight::J2) == RadialFunction(CliffPoly(5, q(8))));
  CHECK(conformal_weight(dil, Weight::Jminus2) == RadialFunction(CliffPoly(5, q(128))));

  MobiusGenerator inv = MobiusGenerator::inversion(m);
  auto ix = mobius_x_images(inv);
  CHECK(ix[0] == RadialFunction(-2, -var(m, Var::X, 0)));
  CHECK(conformal_weight(inv, Weight::J2) == RadialFunction::r_power(m, 2 - m));
}

TEST_CASE("property: |u'| = |u| for every generator") {
  for (int m : {3, 5}) {
    Multivector a = q(3, 5) * Multivector::e(m, 1) + q(4, 5) * Multivector::e(m, 3);
    Multivector b = q(5, 13) * Multivector::e(m, 2) + q(12, 13) * Multivector::e(m, m);
    for (const auto& g : {MobiusGenerator::rotation(a * b), MobiusGenerator::inversion(m), MobiusGenerator::dilation(m, 3),
                          MobiusGenerator::translation(std::vector<mpq_class>(m, 1))}) {
      auto us = mobius_u_images(g);
      RadialFunction n2(m);
      for (const auto& c : us) n2 += c * c;
      CHECK(n2 == RadialFunction(CliffPoly::norm_squared(m, Var::U)));
    }
    // rotations preserve <x, x>
    auto xs = mobius_x_images(MobiusGenerator::rotation(a * b));
    RadialFunction x2(m);
    for (const auto& c : xs) x2 += c * c;
    CHECK(x2 == RadialFunction(CliffPoly::norm_squared(m, Var::X)));
  }
}

TEST_CASE("property: rotations preserve the sphere pairing") {
  Rng rng(71);
  for (int m : {3, 4}) {
    Multivector a = q(3, 5) * Multivector::e(m, 1) + q(4, 5) * Multivector::e(m, 2);
    Multivector b = q(5, 13) * Multivector::e(m, 2) + q(12, 13) * Multivector::e(m, m);
    auto us = mobius_u_images(MobiusGenerator::rotation(a * b));
    for (int trial = 0; trial < 3; ++trial) {
      CliffPoly f = rng.poly(m, {Var::U}, 3), g = rng.poly(m, {Var::U}, 3);
      CliffPoly fr = substitute(RadialFunction(f), Var::U, us).as_polynomial();
      CliffPoly gr = substitute(RadialFunction(g), Var::U, us).as_polynomial();
      CHECK(sphere_inner_product(fr, gr) == sphere_inner_product(f, g));
    }
  }
}

TEST_CASE("conformal invariance examples") {
  const int m = 3, k = 1;
  Monomial mono;
  mono.at(Var::U, 0) = 1;
  mono.at(Var::X, 1) = 2;
  CliffPoly f = CliffPoly::monomial(m, mono, Multivector(m, 1));
  MobiusGenerator rot = MobiusGenerator::rotation(Multivector::e(m, 1) * Multivector::e(m, 2));
  CHECK(conformal_invariance_residual(m, k, rot, f, ConformalOp::D2).is_zero());
  std::vector<mpq_class> shift = {1, -2, mpq_class(1, 2)};
  CliffPoly g = random_space_function(build_basis(m, k, Space::Hk), 2, 19, 2);
  for (ConformalOp which : {ConformalOp::RkAk, ConformalOp::QkBk, ConformalOp::D2})
    CHECK(conformal_invariance_residual(m, k, MobiusGenerator::translation(shift), g, which).is_zero());
  CliffPoly h5 = random_space_function(build_basis(5, 1, Space::Hk), 2, 23, 2);
  for (ConformalOp which : {ConformalOp::RkAk, ConformalOp::QkBk})
    CHECK(conformal_invariance_residual(5, 1, MobiusGenerator::dilation(5, 2), h5, which, Action::Spinor).is_zero());
  CHECK(conformal_invariance_residual(5, 1, MobiusGenerator::dilation(5, 2), h5, ConformalOp::D2).is_zero());
  CHECK(conformal_invariance_residual(5, 1, MobiusGenerator::inversion(5), h5, ConformalOp::D2).is_zero());
}

TEST_CASE("quadrature table export") {
  QuadratureRule g = QuadratureRule::product_gauss(3, 2);
  std::string t = g.table();
  CHECK(!t.empty());
  CHECK(std::count(t.begin(), t.end(), '\n') >= static_cast<long>(g.size()));
}

}
