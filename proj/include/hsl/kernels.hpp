#pragma once

#include <utility>

#include "hsl/spaces.hpp"

namespace hsl {

enum class KernelKind { Ek, Fk, Hk };
const char* kernel_name(KernelKind k);

// Printed: the kernels exactly as displayed (left fundamental solutions of R_k, Q_k).
// Canonical: the right-acting kernels H_k A_{k,r}, H_k B_{k,r} used in the integral formulas;
// E = conj(E_printed), F = -conj(F_printed).
enum class KernelForm { Canonical, Printed };

struct FundamentalSolution {
  int m = 5;
  int k = 1;
  KernelKind kind = KernelKind::Hk;
  KernelForm form = KernelForm::Canonical;
  RadialFunction value;
  ExactScalar constant;
};

ExactScalar a_k(int m, int k);          // (m-2)/(m+2k-2)
ExactScalar omega(int m);               // area of S^{m-1}
ExactScalar hk_constant(int m, int k);  // (m+2k-4) Gamma(m/2-1) / (4 (4-m) pi^{m/2})

// cached reproducing kernels (left spaces)
const ReproducingKernel& zonal_kernel(int m, int k, ReproducingKernel::Kind kind);

FundamentalSolution build_kernel(int m, int k, KernelKind kind, KernelForm form = KernelForm::Canonical);

// second displayed form: Z(u, x v x/|x|^2) x/|x|^m (E) and u Z_{k-1}(u, x v x/|x|^2) x/|x|^m v (F),
// printed normalisation
RadialFunction swapped_form(int m, int k, KernelKind kind);

// (H_k A_{k,r} - E_k, H_k B_{k,r} - F_k)
std::pair<RadialFunction, RadialFunction> verify_fundamental_relations(int m, int k);

// right-operator residual (canonical form) or left-operator residual (printed form):
// E_k by R_k, F_k by Q_k, H_k by D2
RadialFunction annihilation_check(const FundamentalSolution& sol);

}  // namespace hsl
