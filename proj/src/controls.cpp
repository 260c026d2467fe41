#include "hsl/controls.hpp"

namespace hsl::controls {

namespace {
thread_local Overrides g_current;
}

bool Overrides::active() const {
  return a_k != 1 || omega != 1 || hk_constant != 1 || den_d2 != 1 || den_ak != 1 || den_bk != 1 ||
         den_decomposition != 1 || den_boundary != 1;
}

const Overrides& current() { return g_current; }

Scoped::Scoped(const Overrides& o) : saved_(g_current) { g_current = o; }
Scoped::~Scoped() { g_current = saved_; }

}  // namespace hsl::controls
