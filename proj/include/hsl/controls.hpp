#pragma once

#include <gmpxx.h>

namespace hsl::controls {

// Multiplicative perturbations of the operator and kernel constants, used only by negative-control runs.
// All factors are 1 in normal operation.
struct Overrides {
  mpq_class a_k = 1;
  mpq_class omega = 1;
  mpq_class hk_constant = 1;
  // the (m+2k-4) denominators, one per place they occur
  mpq_class den_d2 = 1;
  mpq_class den_ak = 1;
  mpq_class den_bk = 1;
  mpq_class den_decomposition = 1;
  mpq_class den_boundary = 1;

  bool active() const;
};

const Overrides& current();

// Installs an override for the lifetime of the object (thread-local).
class Scoped {
 public:
  explicit Scoped(const Overrides& o);
  ~Scoped();
  Scoped(const Scoped&) = delete;
  Scoped& operator=(const Scoped&) = delete;

 private:
  Overrides saved_;
};

}  // namespace hsl::controls
