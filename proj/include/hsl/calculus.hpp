#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hsl/polynomials.hpp"

namespace hsl {

enum class OpName {
  Dx, Du, Delta_x, Euler_u, u_dot_Dx, Du_dot_Dx,
  Pk_plus, Pk_minus, p0, p1,
  Rk, Tk, Tk_star, Qk, D2,
  Ak, Bk, Ak_r, Bk_r,
};

enum class Side { Left, Right };

struct OperatorSpec {
  OpName name;
  Side side = Side::Left;
  int m = 3;
  int k = 1;

  // validates the parameter range; throws SingularParameter / DomainError
  void validate() const;
  std::string str() const;
  // token such as "Rk", "Tk*", "Pk+", "D2", "Rk_r"
  static OperatorSpec parse(std::string_view token, int m, int k);
};

RadialFunction apply(const OperatorSpec& op, const RadialFunction& f);
CliffPoly apply(const OperatorSpec& op, const CliffPoly& f);

// "Tk* . Rk . Pk+": rightmost operator is applied first
std::vector<OperatorSpec> parse_pipeline(std::string_view text, int m, int k);
RadialFunction apply_pipeline(const std::vector<OperatorSpec>& ops, const RadialFunction& f);

// Building blocks, each acting on the u (or x) variable of a RadialFunction.
RadialFunction dirac(const RadialFunction& f, Var v, Side side = Side::Left);
RadialFunction laplace(const RadialFunction& f, Var v);
RadialFunction euler(const RadialFunction& f, Var v);
RadialFunction u_dot_dx(const RadialFunction& f);
RadialFunction du_dot_dx(const RadialFunction& f);
// (sum_i e_i w_i) f  or  f (sum_i e_i w_i)
RadialFunction vector_mul(const RadialFunction& f, Var v, Side side = Side::Left);
RadialFunction norm_sq_mul(const RadialFunction& f, Var v);
// left/right multiplication by the generator e_{i+1}
CliffPoly generator_mul(const CliffPoly& f, int i, Side side);

enum class Space { Hk, Mk, uMk1 };
const char* space_name(Space s);

struct DomainResult {
  bool ok;
  RadialFunction residual;
};

// Hk: Delta_u f; Mk: D_u f (or f D_u for the right space); uMk1: P_k^+ f + Delta_u f
DomainResult domain_check(const RadialFunction& f, Space space, int m, int k, Side side = Side::Left);

struct DecompositionResidual {
  RadialFunction eq_first;   // D2 f - (-R^2P+ + 2T*RP+/c - 2TQP-/c - (m+2k)Q^2P-/c) f
  RadialFunction eq_second;  // D2 f - (-R^2P+ + 2RTP-/c - 2QT*P+/c - (m+2k)Q^2P-/c) f
  RadialFunction lemma;      // D2 f - (four-term p_1/p_0 expansion) f
  RadialFunction ra_qb;      // D2 f - (R_kA_k + Q_kB_k) f
};
DecompositionResidual verify_decomposition(int m, int k, const RadialFunction& f);

// (T_kQ_k f + R_kT_k f, T_k^*R_k f + Q_kT_k^* f)
std::pair<RadialFunction, RadialFunction> verify_commutation(int m, int k, const RadialFunction& f);

}  // namespace hsl
