#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hsl/controls.hpp"
#include "hsl/geometry.hpp"
#include "hsl/kernels.hpp"

namespace hsl {

enum class Mode { Exact, Float };
const char* mode_name(Mode m);
Mode parse_mode(const std::string& s);

enum class Status { Pass, Fail, Skip };
const char* status_name(Status s);

struct CheckReport {
  std::string check;
  int m = 0;
  int k = 0;
  Mode mode = Mode::Exact;
  Status status = Status::Skip;
  double residual = 0;  // exact: max |coefficient| of the residual (0 iff identically zero)
  double elapsed_ms = 0;
  std::uint64_t seed = 0;
  std::string reason;        // skip / failure explanation
  std::string detail;        // free-form extra information (counts, refinement)
};

struct RunConfig {
  std::vector<std::pair<int, int>> pairs = {{3, 1}, {3, 2}, {5, 1}, {6, 1}};
  int xdeg = 3;
  Mode mode = Mode::Exact;
  double tol = 1e-6;
  int quad_degree = 20;
  std::uint64_t seed = 1;
  std::string out_jsonl;  // empty: no file
  std::string out_md;
  controls::Overrides overrides;  // negative-control hook

  void validate() const;
};

const std::vector<std::string>& check_ids();

// pole and ball for the off-centre float path: B_1(0) with the pole at y
std::vector<mpq_class> offcentre_pole(int m);

CheckReport run_check(const std::string& id, int m, int k, const RunConfig& cfg);
std::vector<CheckReport> run_all(const RunConfig& cfg, const std::vector<std::string>& ids = {});

struct BorelPompeiuResult {
  double defect = 0;           // exact: max |coeff|, 0 iff identity holds
  bool exact_zero = false;
  double refined_defect = -1;  // float path: same quantity on the refined rule
  bool volume_nonzero = false;
};
// f polynomial, H_k-valued; centred: B_R(y) with y = 0; otherwise B_1(0), pole offcentre_pole(m)
BorelPompeiuResult borel_pompeiu_defect(int m, int k, const CliffPoly& f, bool centred, int quad_degree,
                                        const mpq_class& radius = 1);
CheckReport run_borel_pompeiu(const RunConfig& cfg, int m, int k, bool centred);
CheckReport run_green(const RunConfig& cfg, int m, int k, bool centred);

struct ReproductionResult {
  bool plus_exact = false;   // int (E, dsigma P+f)_u == P+f(y, v) at r = 1 and r = 1/2
  bool minus_exact = false;  // int (F, dsigma P-f)_u == P-f(y, v)
  double decay_ratio = 0;    // x-dependent f: defect(1/2) / defect(1/4)
};
ReproductionResult run_eq_one_reproduction(int m, int k, const CliffPoly& h);
CheckReport run_reproduction(const RunConfig& cfg, int m, int k);

// random element of {f : D2 f = 0} among H_k-valued polynomials of x-degree <= xdeg
CliffPoly build_d2_harmonic(int m, int k, int xdeg, std::uint64_t seed, size_t* kernel_dim = nullptr);

// random sparse test function with values in the space (small rational coefficients)
CliffPoly random_space_function(const SpaceBasis& basis, int xdeg, std::uint64_t seed, int nterms = 3);

std::string report_json_line(const CheckReport& r);
std::string summary_markdown(const std::vector<CheckReport>& reports);
// writes the configured outputs; returns false on I/O failure
bool write_reports(const RunConfig& cfg, const std::vector<CheckReport>& reports);
bool all_passed(const std::vector<CheckReport>& reports);

}  // namespace hsl
