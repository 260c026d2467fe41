#include "doctest.h"
#include "json.hpp"
#include "test_util.hpp"

using namespace hsl;
using namespace testutil;

namespace {

RunConfig single(int m, int k) {
  RunConfig cfg;
  cfg.pairs = {{m, k}};
  cfg.xdeg = 2;
  return cfg;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("D2-harmonic test functions") {
  const int m = 5, k = 1;
  SpaceBasis hk = build_basis(m, k, Space::Hk);
  size_t dim0 = 0, dim1 = 0, dim2 = 0;
  CliffPoly f0 = build_d2_harmonic(m, k, 0, 1, &dim0);
  CliffPoly f1 = build_d2_harmonic(m, k, 1, 2, &dim1);
  CliffPoly f2 = build_d2_harmonic(m, k, 2, 3, &dim2);
  CHECK(dim0 == hk.elements.size());
  CHECK(dim1 == hk.elements.size() * (1 + m));
  CHECK(dim2 > dim1);
  CHECK(dim2 < hk.elements.size() * (1 + m + m * (m + 1) / 2));
  OperatorSpec d2{OpName::D2, Side::Left, m, k};
  for (const auto& f : {f0, f1, f2}) {
    CHECK(!f.is_zero());
    CHECK(apply(d2, f).is_zero());
  }
  CHECK(f2.max_degree(Var::X) <= 2);
}

TEST_CASE("empty pair list gives an empty passing report") {
  RunConfig cfg;
  cfg.pairs.clear();
  auto reports = run_all(cfg);
  CHECK(reports.empty());
  CHECK(all_passed(reports));
}

TEST_CASE("configuration validation") {
  RunConfig cfg = single(2, 1);
  CHECK_THROWS(run_all(cfg));
  cfg = single(3, 1);
  cfg.tol = 0;
  CHECK_THROWS(run_all(cfg));
  CHECK_THROWS_AS(run_all(single(3, 1), {"no-such-check"}), ParseError);
}

TEST_CASE("skips carry the reason") {
  CheckReport r = run_check("fundamental", 3, 1, single(3, 1));
  CHECK(r.status == Status::Skip);
  CHECK(r.reason == "m<5 for H_k");
  CheckReport d = run_check("decomposition", 3, 1, [] {
    RunConfig c = single(3, 1);
    c.xdeg = 1;
    return c;
  }());
  CHECK(d.status == Status::Skip);
}

TEST_CASE("clean checks pass and a corrupted constant fails") {
  RunConfig cfg = single(5, 1);
  CHECK(run_check("fundamental", 5, 1, cfg).status == Status::Pass);
  cfg.overrides.hk_constant = mpq_class(101, 100);
  CheckReport r = run_check("fundamental", 5, 1, cfg);
  CHECK(r.status == Status::Fail);
  CHECK(r.residual > 0);
  CHECK(!all_passed({r}));
  // the override does not leak past the check
  CHECK(run_check("fundamental", 5, 1, single(5, 1)).status == Status::Pass);
}

TEST_CASE("report formats") {
  RunConfig cfg = single(3, 1);
  auto reports = run_all(cfg, {"clifford", "fundamental"});
  REQUIRE(reports.size() == 2);
  for (const auto& r : reports) {
    auto j = nlohmann::json::parse(report_json_line(r));
    for (const char* key : {"check", "m", "k", "mode", "status", "residual", "elapsed_ms", "seed"}) CHECK(j.contains(key));
    CHECK(j["m"] == 3);
    CHECK(j["k"] == 1);
  }
  auto j0 = nlohmann::json::parse(report_json_line(reports[0]));
  CHECK(j0["status"] == "pass");
  CHECK(!j0.contains("reason"));
  auto j1 = nlohmann::json::parse(report_json_line(reports[1]));
  CHECK(j1["status"] == "skip");
  CHECK(j1["reason"] == "m<5 for H_k");
  std::string md = summary_markdown(reports);
  CHECK(md.find("clifford") != std::string::npos);
  CHECK(md.find("skip") != std::string::npos);
}

TEST_CASE("property: runs are reproducible") {
  RunConfig cfg = single(3, 2);
  cfg.seed = 99;
  auto a = run_all(cfg, {"clifford", "stokes-rk", "conformal"});
  auto b = run_all(cfg, {"clifford", "stokes-rk", "conformal"});
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].status == b[i].status);
    CHECK(a[i].residual == b[i].residual);
    CHECK(a[i].reason == b[i].reason);
    CHECK(a[i].detail == b[i].detail);
  }
  cfg.mode = Mode::Float;
  auto fa = run_all(cfg, {"stokes-rk", "lemma72"});
  auto fb = run_all(cfg, {"stokes-rk", "lemma72"});
  for (size_t i = 0; i < fa.size(); ++i) {
    CHECK(fa[i].mode == Mode::Float);
    CHECK(fa[i].residual == fb[i].residual);
    CHECK(fa[i].status == Status::Pass);
  }
}

TEST_CASE("random space functions stay in their space") {
  for (Space s : {Space::Hk, Space::Mk, Space::uMk1}) {
    SpaceBasis b = build_basis(5, 2, s);
    CliffPoly f = random_space_function(b, 3, 7);
    CHECK(!f.is_zero());
    CHECK(f.max_degree(Var::X) <= 3);
    CHECK(domain_check(RadialFunction(f), s, 5, 2).ok);
  }
  SpaceBasis r = build_basis(5, 1, Space::Mk, Side::Right);
  CHECK(domain_check(RadialFunction(random_space_function(r, 2, 8)), Space::Mk, 5, 1, Side::Right).ok);
}

TEST_CASE("off-centre pole lies inside the unit ball") {
  for (int m : {3, 5, 6}) {
    auto y = offcentre_pole(m);
    CHECK(y.size() == static_cast<size_t>(m));
    mpq_class n = 0;
    for (const auto& c : y) n += c * c;
    CHECK(n < 1);
    CHECK(n > 0);
  }
}

}
