// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: acceptance [criterion numbers...]  (default: all)
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "hsl/harness.hpp"

using namespace hsl;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
  bool pass = true;
  std::string note;
};

// runs `ids` over `pairs`; every report must pass
Verdict run_suite(const std::vector<std::string>& ids, const std::vector<std::pair<int, int>>& pairs, RunConfig cfg) {
  cfg.pairs = pairs;
  Verdict v;
  std::ostringstream os;
  int n = 0;
  for (const auto& r : run_all(cfg, ids)) {
    ++n;
    if (r.status != Status::Pass) {
      v.pass = false;
      os << " [" << r.check << " (" << r.m << "," << r.k << ") " << status_name(r.status) << ": " << r.reason << "]";
    }
  }
  v.note = std::to_string(n) + " reports" + os.str();
  return v;
}

RunConfig base(int xdeg) {
  RunConfig cfg;
  cfg.xdeg = xdeg;
  cfg.mode = Mode::Exact;
  return cfg;
}

Verdict criterion1() {
  auto t0 = Clock::now();
  Verdict v = run_suite({"decomposition"}, {{3, 1}, {3, 2}, {5, 1}, {6, 1}}, base(3));
  double s = seconds_since(t0);
  if (s > 300) v.pass = false;
  v.note += "; " + std::to_string(s) + " s (limit 300 s)";
  return v;
}

Verdict criterion2() { return run_suite({"commutation"}, {{3, 1}, {3, 2}, {5, 1}, {6, 1}}, base(3)); }

Verdict criterion3() { return run_suite({"fundamental"}, {{5, 1}, {6, 1}, {6, 2}}, base(3)); }

Verdict criterion4() { return run_suite({"stokes-rk", "stokes-tk", "stokes-qk"}, {{3, 1}, {5, 1}}, base(3)); }

Verdict criterion5() {
  return run_suite({"spaces", "lemma72"}, {{3, 0}, {3, 1}, {3, 2}, {5, 0}, {5, 1}, {5, 2}}, base(3));
}

Verdict criterion6() { return run_suite({"conformal"}, {{5, 1}}, base(2)); }

Verdict criterion7() {
  auto t0 = Clock::now();
  RunConfig cfg = base(2);
  cfg.pairs = {{5, 1}};
  CheckReport r = run_borel_pompeiu(cfg, 5, 1, true);
  double s = seconds_since(t0);
  Verdict v;
  v.pass = r.status == Status::Pass && r.detail.find("volume term nonzero") != std::string::npos && s <= 600;
  v.note = std::string(status_name(r.status)) + ", " + r.detail + "; " + std::to_string(s) + " s (limit 600 s)";
  return v;
}

Verdict criterion8() {
  const int m = 5, k = 1;
  SpaceBasis hk = build_basis(m, k, Space::Hk);
  Monomial mono;
  mono.at(Var::U, 0) = 1;
  mono.at(Var::X, 0) = 2;
  CliffPoly f = random_space_function(hk, 2, 8, 3) + CliffPoly::monomial(m, mono, Multivector(m, 1));
  BorelPompeiuResult bp = borel_pompeiu_defect(m, k, f, false, 20);
  double ratio = bp.refined_defect > 0 ? bp.defect / bp.refined_defect : INFINITY;
  RunConfig cfg = base(2);
  cfg.mode = Mode::Float;
  cfg.tol = 1e-8;
  CheckReport g = run_green(cfg, m, k, false);
  Verdict v;
  v.pass = bp.defect <= 1e-6 && ratio >= 10 && bp.volume_nonzero && g.status == Status::Pass && g.residual <= 1e-8;
  char buf[256];
  std::snprintf(buf, sizeof buf, "off-centre defect %.3e, refined %.3e (ratio %.1f); green defect %.3e", bp.defect,
                bp.refined_defect, ratio, g.residual);
  v.note = buf;
  return v;
}

Verdict criterion9() {
  using Setter = std::function<void(controls::Overrides&)>;
  const mpq_class f(101, 100);
  const std::vector<std::pair<std::string, Setter>> perturbations = {
      {"a_k", [&](controls::Overrides& o) { o.a_k = f; }},
      {"omega", [&](controls::Overrides& o) { o.omega = f; }},
      {"H_k constant", [&](controls::Overrides& o) { o.hk_constant = f; }},
      {"D2 denominator", [&](controls::Overrides& o) { o.den_d2 = f; }},
      {"A_k denominator", [&](controls::Overrides& o) { o.den_ak = f; }},
      {"B_k denominator", [&](controls::Overrides& o) { o.den_bk = f; }},
      {"decomposition denominator", [&](controls::Overrides& o) { o.den_decomposition = f; }},
      {"boundary denominator", [&](controls::Overrides& o) { o.den_boundary = f; }},
  };
  const std::vector<std::string> ids = {"kernels", "decomposition", "fundamental", "lemma72", "borel-pompeiu"};
  Verdict v;
  std::ostringstream os;
  for (const auto& [name, set] : perturbations) {
    RunConfig cfg = base(2);
    set(cfg.overrides);
    std::string caught;
    // the ||u||^2 <D_u,D_x>^2 term of D2 vanishes on u-degree 1, so k = 2 is needed for its denominator
    for (int k : {1, 2}) {
      for (const auto& id : ids) {
        if (run_check(id, 5, k, cfg).status == Status::Fail) {
          caught = id + " (5," + std::to_string(k) + ")";
          break;
        }
      }
      if (!caught.empty()) break;
    }
    if (caught.empty()) v.pass = false;
    os << name << " -> " << (caught.empty() ? "undetected" : caught) << "; ";
  }
  v.note = os.str();
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"exact operator decomposition of D2", criterion1},
      {"exact vector identities and anticommutations", criterion2},
      {"exact fundamental solution relations and annihilations", criterion3},
      {"exact Stokes theorems on the unit ball", criterion4},
      {"exact reproducing kernels, orthogonality and sphere averages", criterion5},
      {"conformal invariance under Moebius generators", criterion6},
      {"exact Borel-Pompeiu formula on a centred ball", criterion7},
      {"off-centre Borel-Pompeiu and Green formulas in float mode", criterion8},
      {"negative-control sensitivity to every constant", criterion9},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
  bool all = true;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!wanted.empty() && !wanted.count(id)) continue;
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.note = std::string("error: ") + e.what();
    }
    all = all && v.pass;
    std::printf("criterion %d: %s - %s (%s)\n", id, v.pass ? "PASS" : "FAIL", criteria[i].first, v.note.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
