#include <cstdio>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hsl/harness.hpp"

using namespace hsl;

namespace {

std::vector<std::pair<int, int>> parse_pairs(const std::string& s) {
  // "3,1;5,1"
  std::vector<std::pair<int, int>> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    int m = 0, k = 0;
    if (std::sscanf(item.c_str(), "%d,%d", &m, &k) != 2) throw ParseError("bad pair: " + item);
    out.emplace_back(m, k);
  }
  return out;
}

void perturb(controls::Overrides& o, const std::string& name) {
  const mpq_class f(101, 100);
  if (name == "a_k") o.a_k = f;
  else if (name == "omega") o.omega = f;
  else if (name == "hk_constant") o.hk_constant = f;
  else if (name == "den_d2") o.den_d2 = f;
  else if (name == "den_ak") o.den_ak = f;
  else if (name == "den_bk") o.den_bk = f;
  else if (name == "den_decomposition") o.den_decomposition = f;
  else if (name == "den_boundary") o.den_boundary = f;
  else throw ParseError("unknown constant: " + name);
}

std::string md_path(const std::string& out) {
  auto dot = out.rfind(".jsonl");
  if (dot != std::string::npos && dot + 6 == out.size()) return out.substr(0, dot) + ".md";
  return out + ".md";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hsl: exact verification toolkit for the higher spin Laplace operator"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "run verification checks");
  std::string check = "all";
  int m = 0, k = -1;
  std::string pairs, mode = "exact", out, perturb_name;
  RunConfig cfg;
  verify->add_option("check", check, "check id or 'all'")->required();
  verify->add_option("--m", m, "dimension (with --k: a single (m,k) pair)");
  verify->add_option("--k", k, "spin degree");
  verify->add_option("--pairs", pairs, "explicit list \"m,k;m,k\"");
  verify->add_option("--xdeg", cfg.xdeg, "x-degree bound for test polynomials")->capture_default_str();
  verify->add_option("--mode", mode, "exact|float")->check(CLI::IsMember({"exact", "float"}))->capture_default_str();
  verify->add_option("--tol", cfg.tol, "float tolerance")->capture_default_str();
  verify->add_option("--quad-degree", cfg.quad_degree, "product rule exactness degree")->capture_default_str();
  verify->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  verify->add_option("--out", out, "JSON-lines report path (markdown summary alongside)");
  verify->add_option("--perturb", perturb_name, "negative control: scale one constant by 101/100");

  // apply
  auto* apply_cmd = app.add_subcommand("apply", "apply an operator pipeline to a polynomial");
  std::string pipeline, fun;
  int am = 3, ak = 1;
  apply_cmd->add_option("pipeline", pipeline, "e.g. \"Tk* . Rk . Pk+\" (rightmost first)")->required();
  apply_cmd->add_option("--f", fun, "function in polynomial text form")->required();
  apply_cmd->add_option("--m", am)->capture_default_str();
  apply_cmd->add_option("--k", ak)->capture_default_str();

  // basis
  auto* basis_cmd = app.add_subcommand("basis", "dump a basis, its Gram matrix, or a kernel");
  int bm = 3, bk = 1;
  std::string space = "Hk", what = "basis";
  basis_cmd->add_option("--m", bm)->capture_default_str();
  basis_cmd->add_option("--k", bk)->capture_default_str();
  basis_cmd->add_option("--space", space, "Hk|Mk|uMk1")->check(CLI::IsMember({"Hk", "Mk", "uMk1"}));
  basis_cmd->add_option("--what", what, "basis|gram|Z1|Z2|Ek|Fk|Hk")
      ->check(CLI::IsMember({"basis", "gram", "Z1", "Z2", "Ek", "Fk", "Hk"}));

  // quadrature table
  auto* quad_cmd = app.add_subcommand("quad-table", "export product rule nodes and weights");
  int qm = 3, qd = 4;
  quad_cmd->add_option("--m", qm)->capture_default_str();
  quad_cmd->add_option("--quad-degree", qd)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) {
      cfg.mode = parse_mode(mode);
      if (verify->count("--pairs")) cfg.pairs = parse_pairs(pairs);
      else if (m > 0 || k >= 0) {
        if (m <= 0 || k < 0) throw ParseError("--m and --k must be given together");
        cfg.pairs = {{m, k}};
      }
      if (!perturb_name.empty()) perturb(cfg.overrides, perturb_name);
      if (!out.empty()) {
        cfg.out_jsonl = out;
        cfg.out_md = md_path(out);
      }
      std::vector<std::string> ids;
      if (check != "all") ids.push_back(check);
      auto reports = run_all(cfg, ids);
      for (const auto& r : reports) std::cout << report_json_line(r) << "\n";
      if (!write_reports(cfg, reports)) {
        std::cerr << "error: could not write reports\n";
        return 1;
      }
      return all_passed(reports) ? 0 : 1;
    }
    if (*apply_cmd) {
      RadialFunction f = parse_radial(fun, am);
      std::cout << to_text(apply_pipeline(parse_pipeline(pipeline, am, ak), f)) << "\n";
      return 0;
    }
    if (*basis_cmd) {
      Space s = space == "Hk" ? Space::Hk : space == "Mk" ? Space::Mk : Space::uMk1;
      if (what == "basis" || what == "gram") {
        SpaceBasis b = build_basis(bm, bk, s);
        std::cout << "# " << space << " m=" << bm << " k=" << bk << " elements=" << b.elements.size()
                  << " real_dimension=" << b.real_dimension() << "\n";
        if (what == "basis") {
          for (const auto& e : b.elements) std::cout << to_text(e) << "\n";
        } else {
          for (const auto& a : b.elements) {
            for (const auto& c : b.elements)
              std::cout << constant_value(sphere_inner_product(a.conj(), c)).scalar_part().str() << "\t";
            std::cout << "\n";
          }
        }
      } else if (what == "Z1" || what == "Z2") {
        auto z = zonal_kernel(bm, bk, what == "Z1" ? ReproducingKernel::Kind::Z1 : ReproducingKernel::Kind::Z2);
        std::cout << to_text(z.kernel) << "\n";
      } else {
        KernelKind kk = what == "Ek" ? KernelKind::Ek : what == "Fk" ? KernelKind::Fk : KernelKind::Hk;
        std::cout << to_text(build_kernel(bm, bk, kk).value) << "\n";
      }
      return 0;
    }
    if (*quad_cmd) {
      std::cout << QuadratureRule::product_gauss(qm, qd).table();
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
