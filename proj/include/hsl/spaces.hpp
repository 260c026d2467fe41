#pragma once

#include <vector>

#include "hsl/calculus.hpp"
#include "hsl/linalg.hpp"

namespace hsl {

// integral over S^{m-1} of w^alpha (alpha = exponents of `var` in mono)
ExactScalar sphere_moment(int m, const Monomial& mono, Var var);
// integrate every term over S^{m-1} in `var`; the other variables stay passive
CliffPoly integrate_sphere(const CliffPoly& f, Var var = Var::U);
// (f, g)_w = int f(w) g(w) dS(w), left factor un-conjugated
CliffPoly sphere_inner_product(const CliffPoly& f, const CliffPoly& g, Var var = Var::U);
// constant value of a pairing with no passive variables
Multivector constant_value(const CliffPoly& f);

CliffPoly rename_var(const CliffPoly& f, Var from, Var to);

struct SpaceBasis {
  int m = 3;
  int k = 0;
  Space kind = Space::Hk;
  Side side = Side::Left;
  // Hk: scalar harmonic polynomials (real basis after Clifford spanning);
  // Mk, uMk1: free right-module (left-module for the right side) basis over Cl_m
  std::vector<CliffPoly> elements;

  bool scalar() const { return kind == Space::Hk; }
  // real dimension of the Clifford-valued space
  size_t real_dimension() const;
  // real spanning family: elements times every blade (on the module side)
  std::vector<CliffPoly> real_elements() const;
};

// binomial-type counts
long harmonic_dimension(int m, int k);   // scalar harmonics of degree k
long monogenic_rank(int m, int k);       // C(m+k-2, k)

SpaceBasis build_basis(int m, int k, Space kind, Side side = Side::Left);

struct ReproducingKernel {
  enum class Kind { Z1, Z2 };
  int m = 3;
  int k = 0;
  Kind kind = Kind::Z2;
  CliffPoly kernel;     // polynomial in (u, v), bidegree (k, k)
  size_t nullity = 0;   // total dimension of the ansatz solution spaces
};

ReproducingKernel build_reproducing_kernel(const SpaceBasis& basis);
// max over basis elements of the reproducing defect (exactly zero when it holds)
bool verify_reproducing(const ReproducingKernel& z, const SpaceBasis& basis);

// real-orthogonal projection onto the span, inner product Sc int conj(f) g dS
CliffPoly project(const CliffPoly& f, const SpaceBasis& basis);

}  // namespace hsl
