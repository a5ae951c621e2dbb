// spinscale CLI: classify a single map, scan a parameter grid to CSV,
// bisect a property boundary along a ray, export Choi matrices, and hunt
// for maps whose square is CP while the pair map fails positivity.
//
// Exit codes: 0 ok, 1 usage error, 2 numerical failure, 3 search exhausted.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spinscale/matrix_io.hpp"
#include "spinscale/spinscale.hpp"

namespace {

using namespace spinscale;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitExhausted = 3;

ScalingTriple parse_lambda(const std::string& text) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    char* end = nullptr;
    const double v = std::strtod(part.c_str(), &end);
    if (end != part.c_str() + part.size() || part.empty())
      throw std::invalid_argument("lambda: expected three comma-separated reals");
    vals.push_back(v);
  }
  if (vals.size() != 3) throw std::invalid_argument("lambda: expected three comma-separated reals");
  return {vals[0], vals[1], vals[2]};
}

double default_tol() {
  if (const char* env = std::getenv("SPINSCALE_TOL"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env + std::string(env).size() && v > 0.0) return v;
    throw std::invalid_argument("SPINSCALE_TOL: expected a positive real");
  }
  return kDefaultTol;
}

nlohmann::json report_to_json(SpinLabel j, const ScalingTriple& l, const ClassificationReport& r) {
  nlohmann::json out{
      {"j", j.to_string()},
      {"two_j", j.two_j()},
      {"lambda", {l.lambda1, l.lambda2, l.lambda3}},
      {"tol", r.tol},
      {"pos", r.positive_exact},
      {"pos_sufficient", r.positive_sufficient},
      {"pos_necessary", r.positive_necessary},
      {"cp", r.cp},
      {"ppt", r.ppt_both_signs},
      {"phi2_cp", r.phi2_cp},
      {"phi2_ppt", r.phi2_ppt},
      {"min_choi_eig", r.min_choi_eig},
      {"min_ptchoi_eig", r.min_ptchoi_eig},
      {"min_phi2_choi_eig", r.min_phi2_choi_eig},
  };
  if (!r.closed_form_values.empty()) {
    nlohmann::json cf;
    for (const auto& [name, value] : r.closed_form_values) cf[name] = value;
    out["closed_form"] = std::move(cf);
  }
  return out;
}

void print_report(std::ostream& os, SpinLabel j, const ScalingTriple& l,
                  const ClassificationReport& r) {
  auto yesno = [](bool b) { return b ? "yes" : "no "; };
  os << "j = " << j.to_string() << " (d = " << j.dim() << "), lambda = (" << format_double(l.lambda1)
     << ", " << format_double(l.lambda2) << ", " << format_double(l.lambda3)
     << "), tol = " << format_double(r.tol) << "\n";
  os << "  positive                 " << yesno(r.positive_exact) << "\n";
  os << "  positive (sufficient)    " << yesno(r.positive_sufficient) << "\n";
  os << "  positive (necessary)     " << yesno(r.positive_necessary) << "\n";
  os << "  completely positive      " << yesno(r.cp) << "   min Choi eig      = "
     << format_double(r.min_choi_eig) << "\n";
  os << "  PPT (needed for EB)      " << yesno(r.ppt_both_signs) << "   min PT-Choi eig   = "
     << format_double(r.min_ptchoi_eig) << "\n";
  os << "  Phi^2 CP (needed 2-TSP)  " << yesno(r.phi2_cp) << "   min Phi^2 Choi eig = "
     << format_double(r.min_phi2_choi_eig) << "\n";
  os << "  Phi^2 PPT (needed 2-LEA) " << yesno(r.phi2_ppt) << "\n";
  if (j.two_j() == 1)
    os << "  note: at j = 1/2 the PPT bound decides entanglement breaking exactly\n";
  for (const auto& [name, value] : r.closed_form_values)
    os << "  " << name << " = " << format_double(value) << "\n";
}

int cmd_classify(SpinLabel j, const ScalingTriple& lambda, double tol, bool as_json) {
  const ClassificationReport r = classify(MapSpec{j, lambda}, tol);
  if (as_json)
    std::cout << report_to_json(j, lambda, r).dump(2) << "\n";
  else
    print_report(std::cout, j, lambda, r);
  return kExitOk;
}

int cmd_scan(const ScanConfig& cfg) {
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!cfg.output_path.empty() && cfg.output_path != "-") {
    file.open(cfg.output_path, std::ios::binary);
    if (!file) {
      std::cerr << "scan: cannot open output file '" << cfg.output_path << "'\n";
      return kExitUsage;
    }
    out = &file;
  }
  run_scan(cfg, *out, &std::cerr);
  return kExitOk;
}

int cmd_boundary(SpinLabel j, std::vector<double> dir, const std::string& property, double tol) {
  const double norm = std::sqrt(dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]);
  if (!(norm > 0.0)) throw std::invalid_argument("boundary: direction must be nonzero");
  for (double& c : dir) c /= norm;

  const std::optional<Property> prop = parse_property(property);
  if (!prop) throw std::invalid_argument("boundary: unknown property '" + property + "'");

  auto holds = [&](double r) {
    const MapSpec m{j, ScalingTriple(r * dir[0], r * dir[1], r * dir[2])};
    switch (*prop) {
      case Property::pos: return positivity_exact(m, tol);
      case Property::cp: return is_cp(m, tol).psd;
      case Property::ppt: return ppt_necessary_eb(m, tol).psd;
      case Property::phi2cp: return phi2_cp(m, tol).psd;
      case Property::phi2ppt: return phi2_ppt(m, tol);
    }
    return false;
  };

  if (!holds(0.0)) {
    std::cerr << "boundary: property does not hold at the origin\n";
    return kExitNumerical;
  }
  double hi = 2.0;
  int expand = 0;
  while (holds(hi) && expand++ < 16) hi *= 2.0;
  if (expand >= 16) {
    std::cerr << "boundary: property still holds at radius " << hi << "\n";
    return kExitNumerical;
  }
  double lo = 0.0;
  for (int it = 0; it < 40; ++it) {
    const double mid = 0.5 * (lo + hi);
    (holds(mid) ? lo : hi) = mid;
  }
  std::cout << format_double(0.5 * (lo + hi)) << "\n";
  return kExitOk;
}

int cmd_choi(SpinLabel j, const ScalingTriple& lambda, bool partial_transpose,
             const std::string& output_path) {
  const MapSpec map{j, lambda};
  const ComplexMatrix m = partial_transpose ? choi_partial_transpose(map) : choi_closed_form(map);
  const std::string text = matrix_to_json(m).dump();
  if (output_path.empty() || output_path == "-") {
    std::cout << text << "\n";
  } else {
    std::ofstream file(output_path, std::ios::binary);
    if (!file) {
      std::cerr << "choi: cannot open output file '" << output_path << "'\n";
      return kExitUsage;
    }
    file << text << "\n";
  }
  return kExitOk;
}

int cmd_hunt(SpinLabel j, int steps, std::uint64_t seed, double tol) {
  const std::optional<HuntResult> hit = counterexample_hunt(j, steps, seed, tol);
  if (!hit) {
    std::cerr << "hunt: no counterexample found on a " << steps << "^3 grid (j = " << j.to_string()
              << ")\n";
    return kExitExhausted;
  }
  nlohmann::json out{
      {"lambda", {hit->lambdas.lambda1, hit->lambdas.lambda2, hit->lambdas.lambda3}},
      {"phi2_cp_certificate", hit->phi2_certificate},
      {"witness_eigenvalue", hit->witness_value},
  };
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spin polarization-scaling maps: classification and parameter scans"};
  app.require_subcommand(1);

  std::string j_text;
  std::string lambda_text;
  std::string properties_text = "pos,cp,ppt,phi2cp,phi2ppt";
  std::string direction_text;
  std::string property;
  std::string output_path;
  bool as_json = false;
  bool partial_transpose = false;
  double tol_flag = -1.0;  // <= 0 means "not set"
  ScanConfig scan_cfg{SpinLabel(1)};
  int hunt_steps = 21;
  std::uint64_t hunt_seed = 1;

  CLI::App* classify_cmd = app.add_subcommand("classify", "classify a single map");
  classify_cmd->add_option("--j", j_text, "spin (n/2, integer, or half-integer decimal)")->required();
  classify_cmd->add_option("--lambda", lambda_text, "scaling triple a,b,c")->required();
  classify_cmd->add_flag("--json", as_json, "emit a JSON report");
  classify_cmd->add_option("--tol", tol_flag, "PSD tolerance");

  CLI::App* scan_cmd = app.add_subcommand("scan", "classify every point of a lambda grid");
  scan_cmd->add_option("--j", j_text, "spin")->required();
  scan_cmd->add_option("--min", scan_cfg.range_min, "grid minimum (default -1)");
  scan_cmd->add_option("--max", scan_cfg.range_max, "grid maximum (default 1)");
  scan_cmd->add_option("--steps", scan_cfg.steps, "points per axis (default 41)");
  scan_cmd->add_option("--properties", properties_text, "comma list: pos,cp,ppt,phi2cp,phi2ppt");
  scan_cmd->add_option("--output", output_path, "CSV output path ('-' for stdout)")->required();
  scan_cmd->add_option("--seed", scan_cfg.seed, "seed recorded in the config");
  scan_cmd->add_option("--workers", scan_cfg.workers, "worker threads (default 1)");
  scan_cmd->add_option("--tol", tol_flag, "PSD tolerance");

  CLI::App* boundary_cmd = app.add_subcommand("boundary", "bisect a property boundary along a ray");
  boundary_cmd->add_option("--j", j_text, "spin")->required();
  boundary_cmd->add_option("--direction", direction_text, "ray direction x,y,z")->required();
  boundary_cmd->add_option("--property", property, "pos|cp|ppt|phi2cp|phi2ppt")->required();
  boundary_cmd->add_option("--tol", tol_flag, "PSD tolerance");

  CLI::App* choi_cmd = app.add_subcommand("choi", "export the Choi matrix as JSON");
  choi_cmd->add_option("--j", j_text, "spin")->required();
  choi_cmd->add_option("--lambda", lambda_text, "scaling triple a,b,c")->required();
  choi_cmd->add_flag("--partial-transpose", partial_transpose, "export the partial transpose");
  choi_cmd->add_option("--output", output_path, "output path (default stdout)");

  CLI::App* hunt_cmd = app.add_subcommand("hunt", "search for a 2-tensor-stability counterexample");
  hunt_cmd->add_option("--j", j_text, "spin")->required();
  hunt_cmd->add_option("--steps", hunt_steps, "grid points per axis (default 21)");
  hunt_cmd->add_option("--seed", hunt_seed, "jitter seed (default 1)");
  hunt_cmd->add_option("--tol", tol_flag, "PSD tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message
    return kExitUsage;
  }

  try {
    const double tol = tol_flag > 0.0 ? tol_flag : default_tol();
    const SpinLabel j = SpinLabel::parse(j_text);

    if (classify_cmd->parsed()) return cmd_classify(j, parse_lambda(lambda_text), tol, as_json);
    if (scan_cmd->parsed()) {
      scan_cfg.j = j;
      scan_cfg.tol = tol;
      scan_cfg.output_path = output_path;
      scan_cfg.properties.clear();
      std::stringstream ss(properties_text);
      std::string part;
      while (std::getline(ss, part, ',')) {
        const std::optional<Property> p = parse_property(part);
        if (!p) throw std::invalid_argument("scan: unknown property '" + part + "'");
        scan_cfg.properties.push_back(*p);
      }
      scan_cfg.validate();
      return cmd_scan(scan_cfg);
    }
    if (boundary_cmd->parsed()) {
      const ScalingTriple dir = parse_lambda(direction_text);
      return cmd_boundary(j, {dir.lambda1, dir.lambda2, dir.lambda3}, property, tol);
    }
    if (choi_cmd->parsed()) return cmd_choi(j, parse_lambda(lambda_text), partial_transpose, output_path);
    if (hunt_cmd->parsed()) return cmd_hunt(j, hunt_steps, hunt_seed, tol);
    return kExitUsage;
  } catch (const no_convergence_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const not_hermitian_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const scan_numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::logic_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
