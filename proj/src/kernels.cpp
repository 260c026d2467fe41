#include "hsl/kernels.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "hsl/controls.hpp"

namespace hsl {

const char* kernel_name(KernelKind k) {
  switch (k) {
    case KernelKind::Ek: return "Ek";
    case KernelKind::Fk: return "Fk";
    case KernelKind::Hk: return "Hk";
  }
  return "?";
}

ExactScalar a_k(int m, int k) { return ExactScalar::rational(m - 2, m + 2 * k - 2); }

ExactScalar omega(int m) { return sphere_area(m); }

ExactScalar hk_constant(int m, int k) {
  if (m == 4) throw SingularParameter("H_k constant: 4-m = 0");
  if (m < 3) throw DomainError("H_k constant needs m >= 3");
  return ExactScalar::rational(m + 2 * k - 4, 4 * (4 - m)) * gamma_half(m - 2) / ExactScalar::pi_power(m);
}

const ReproducingKernel& zonal_kernel(int m, int k, ReproducingKernel::Kind kind) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::unique_ptr<ReproducingKernel>> cache;
  auto key = std::make_tuple(m, k, static_cast<int>(kind));
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
  }
  Space s = kind == ReproducingKernel::Kind::Z1 ? Space::Mk : Space::Hk;
  auto z = std::make_unique<ReproducingKernel>(build_reproducing_kernel(build_basis(m, k, s)));
  std::lock_guard<std::mutex> lock(mu);
  return *cache.emplace(key, std::move(z)).first->second;
}

namespace {

ExactScalar ek_constant(int m, int k) {
  const auto& o = controls::current();
  return (omega(m) * ExactScalar(o.omega) * a_k(m, k) * ExactScalar(o.a_k)).inverse();
}

RadialFunction xvec(int m) { return RadialFunction(CliffPoly::vector(m, Var::X)); }

RadialFunction printed_e(int m, int k) {
  const auto& z1 = zonal_kernel(m, k, ReproducingKernel::Kind::Z1);
  RadialFunction kz = substitute_kelvin(RadialFunction(z1.kernel), Var::U);
  return ek_constant(m, k) * (xvec(m) * RadialFunction::r_power(m, -m) * kz);
}

RadialFunction printed_f(int m, int k) {
  const auto& z1 = zonal_kernel(m, k - 1, ReproducingKernel::Kind::Z1);
  RadialFunction kz = substitute_kelvin(RadialFunction(z1.kernel), Var::U);
  RadialFunction u(CliffPoly::vector(m, Var::U)), v(CliffPoly::vector(m, Var::V));
  return -ek_constant(m, k) * (u * xvec(m) * RadialFunction::r_power(m, -m) * kz * v);
}

}  // namespace

FundamentalSolution build_kernel(int m, int k, KernelKind kind, KernelForm form) {
  if (m < 3) throw DomainError("kernels need m >= 3");
  if (k < 0) throw DomainError("kernels need k >= 0");
  FundamentalSolution s;
  s.m = m;
  s.k = k;
  s.kind = kind;
  s.form = form;
  switch (kind) {
    case KernelKind::Ek: {
      s.constant = ek_constant(m, k);
      RadialFunction e = printed_e(m, k);
      s.value = form == KernelForm::Printed ? e : e.conj();
      break;
    }
    case KernelKind::Fk: {
      if (k < 1) throw DomainError("F_k needs k >= 1");
      RadialFunction f = printed_f(m, k);
      s.constant = form == KernelForm::Printed ? -ek_constant(m, k) : ek_constant(m, k);
      s.value = form == KernelForm::Printed ? f : -f.conj();
      break;
    }
    case KernelKind::Hk: {
      if (m == 4) throw SingularParameter("H_k: constant singular at m = 4");
      if (m < 5) throw DomainError("m<5 for H_k");
      s.constant = hk_constant(m, k) * ExactScalar(controls::current().hk_constant);
      const auto& z2 = zonal_kernel(m, k, ReproducingKernel::Kind::Z2);
      RadialFunction kz = substitute_kelvin(RadialFunction(z2.kernel), Var::U);
      s.value = s.constant * (RadialFunction::r_power(m, 2 - m) * kz);  // Z2 is scalar: form-independent
      break;
    }
  }
  return s;
}

RadialFunction swapped_form(int m, int k, KernelKind kind) {
  switch (kind) {
    case KernelKind::Ek: {
      const auto& z1 = zonal_kernel(m, k, ReproducingKernel::Kind::Z1);
      RadialFunction kz = substitute_kelvin(RadialFunction(z1.kernel), Var::V);
      return ek_constant(m, k) * (kz * xvec(m) * RadialFunction::r_power(m, -m));
    }
    case KernelKind::Fk: {
      const auto& z1 = zonal_kernel(m, k - 1, ReproducingKernel::Kind::Z1);
      RadialFunction kz = substitute_kelvin(RadialFunction(z1.kernel), Var::V);
      RadialFunction u(CliffPoly::vector(m, Var::U)), v(CliffPoly::vector(m, Var::V));
      return -ek_constant(m, k) * (u * kz * xvec(m) * RadialFunction::r_power(m, -m) * v);
    }
    case KernelKind::Hk: {
      const auto& z2 = zonal_kernel(m, k, ReproducingKernel::Kind::Z2);
      RadialFunction kz = substitute_kelvin(RadialFunction(z2.kernel), Var::V);
      return hk_constant(m, k) * (RadialFunction::r_power(m, 2 - m) * kz);
    }
  }
  throw DomainError("unknown kernel");
}

std::pair<RadialFunction, RadialFunction> verify_fundamental_relations(int m, int k) {
  if (m < 5) throw DomainError("m<5 for H_k");
  if (k < 1) throw DomainError("verify_fundamental_relations needs k >= 1");
  FundamentalSolution h = build_kernel(m, k, KernelKind::Hk);
  FundamentalSolution e = build_kernel(m, k, KernelKind::Ek);
  FundamentalSolution f = build_kernel(m, k, KernelKind::Fk);
  RadialFunction ha = apply(OperatorSpec{OpName::Ak_r, Side::Right, m, k}, h.value);
  RadialFunction hb = apply(OperatorSpec{OpName::Bk_r, Side::Right, m, k}, h.value);
  return {ha - e.value, hb - f.value};
}

RadialFunction annihilation_check(const FundamentalSolution& sol) {
  const Side side = sol.form == KernelForm::Canonical ? Side::Right : Side::Left;
  OpName op = OpName::D2;
  if (sol.kind == KernelKind::Ek) op = OpName::Rk;
  if (sol.kind == KernelKind::Fk) op = OpName::Qk;
  if (sol.kind == KernelKind::Ek && sol.k == 0) return dirac(sol.value, Var::X, side);
  return apply(OperatorSpec{op, side, sol.m, sol.k}, sol.value);
}

}  // namespace hsl
