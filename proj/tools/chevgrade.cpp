// chevgrade: enumerate cominiscule pairs, export algebras and gradings,
// run verification suites, evaluate Schwarzians and curvature identities.
//
// Exit codes: 0 all requested checks passed, 1 a check failed, 2 usage or I/O error.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chevgrade/chevgrade.hpp"

namespace {

using namespace chevgrade;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
  } else {
    write_text_file(out, text);
  }
}

SimpleType parse_type(const std::string& family, int rank) {
  SimpleType t{SimpleType::parse_family(family), rank};
  t.validate();
  return t;
}

/// "re" or "re:im" per coordinate, comma separated.
std::vector<analytic::Complex> parse_point(const std::string& text) {
  std::vector<analytic::Complex> z;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    try {
      std::size_t used = 0;
      const double re = std::stod(item.substr(0, colon), &used);
      double im = 0;
      if (colon != std::string::npos) im = std::stod(item.substr(colon + 1));
      z.emplace_back(re, im);
    } catch (const std::logic_error&) {
      throw ArgumentError("bad coordinate '" + item + "' (expected re or re:im)");
    }
  }
  if (z.empty()) throw ArgumentError("empty evaluation point");
  return z;
}

Json complex_json(analytic::Complex c) { return Json::array({c.real(), c.imag()}); }

int cmd_enumerate(int max_rank) {
  for (const auto& p : enumerate_cominiscule(max_rank)) {
    const RootSystem rs = build_root_system(p.type);
    const std::size_t dim = static_cast<std::size_t>(p.type.rank) + rs.roots().size();
    std::cout << p.type.family_name() << ' ' << p.type.rank << " node=" << p.node + 1 << " dims=(" << p.dim_minus
              << ',' << dim - 2 * p.dim_minus << ',' << p.dim_minus << ")\n";
  }
  return kOk;
}

int cmd_grading(const std::string& family, int rank, int node, const std::string& out) {
  const SimpleType t = parse_type(family, rank);
  if (node < 1 || node > rank) throw ArgumentError("node must lie in 1.." + std::to_string(rank));
  const Grading g = build_grading(t, static_cast<std::size_t>(node - 1));
  emit(dump_json(grading_to_json(g)), out);
  return kOk;
}

int cmd_export(const std::string& family, int rank, const std::string& from, const std::string& what,
               const std::string& out) {
  if (!from.empty()) {
    // Imported tables are re-checked; a table that breaks an axiom is a
    // verification failure, not a usage error.
    const ChevalleyAlgebra alg = structure_constants_from_json(read_json_file(from));
    const ChevalleyReport rep = verify_chevalley_axioms(alg);
    for (const auto& c : rep.checks) {
      if (!c.pass) std::cerr << "FAIL " << c.name << ": " << c.witness << '\n';
    }
    emit(dump_json(structure_constants_to_json(alg)), out);
    return rep.pass() ? kOk : kFailed;
  }
  if (family.empty() || rank == 0) throw ArgumentError("export needs --type and --rank, or --from");
  const RootSystem rs = build_root_system(parse_type(family, rank));
  if (what == "roots") {
    emit(dump_json(root_system_to_json(rs)), out);
  } else {
    emit(dump_json(structure_constants_to_json(build_chevalley(rs))), out);
  }
  return kOk;
}

int cmd_verify(const std::string& suites, int max_rank, unsigned threads, std::uint64_t seed, const std::string& out) {
  VerifyOptions opt;
  opt.suites = parse_suites(suites);
  opt.max_rank = max_rank;
  opt.threads = threads;
  opt.seed = seed;
  const RunReport report = run_verification(opt);
  for (const auto& r : report.records) {
    if (!r.result.pass) {
      std::cerr << "FAIL " << suite_name(r.suite) << ' ' << r.pair.dump() << ' ' << r.result.body.dump() << '\n';
    }
  }
  emit(dump_json(report.to_json()), out);
  return report.pass() ? kOk : kFailed;
}

int cmd_schwarzian(const std::string& map_path, const std::string& at, const std::string& out) {
  using namespace analytic;
  const RationalMap f = rational_map_from_json(read_json_file(map_path));
  const auto z = parse_point(at);
  Json j{{"dimension", f.dimension}, {"leaf_dimension", f.leaf()}};
  bool ok = true;
  const SchwarzianValue s = f.leaf_dimension ? schwarzian_foliated(f, z)
                            : f.dimension == 1 ? SchwarzianValue{1, {schwarzian_1d(f, z.at(0))}}
                                               : schwarzian_nd(f, z);
  if (s.p == 1) {
    j["value"] = complex_json(s.scalar());
  } else {
    Json v = Json::array();
    for (std::size_t k = 0; k < s.p; ++k) {
      Json row = Json::array();
      for (std::size_t i = 0; i < s.p; ++i) {
        Json col = Json::array();
        for (std::size_t l = 0; l < s.p; ++l) col.push_back(complex_json(s(k, i, l)));
        row.push_back(col);
      }
      v.push_back(row);
    }
    j["value"] = v;
    j["symmetry_defect"] = s.symmetry_defect();
    j["trace_defect"] = s.trace_defect();
    const double residual = atiyah_identity_residual(f, z);
    j["atiyah_residual"] = residual;
    ok = s.symmetry_defect() < 1e-12 && s.trace_defect() < 1e-9 && residual < 1e-8;
  }
  j["max_abs"] = s.max_abs();
  j["pass"] = ok;
  emit(dump_json(j), out);
  return ok ? kOk : kFailed;
}

int cmd_prop3(int n, int samples, std::uint64_t seed, double lambda, const std::string& out) {
  using namespace analytic;
  if (samples < 1) throw ArgumentError("--samples must be positive");
  double worst = 0, min_integrand = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    const auto e = eta_identity_residual(make_einstein_curvature(n, lambda, seed + static_cast<std::uint64_t>(s)));
    worst = std::max(worst, e.residual / std::max(1.0, std::abs(e.integrand)));
    min_integrand = std::min(min_integrand, e.integrand);
  }
  const bool ok = worst < 1e-10 && min_integrand >= -1e-10;
  emit(dump_json({{"n", n},
                  {"samples", samples},
                  {"seed", seed},
                  {"lambda", lambda},
                  {"max_relative_residual", worst},
                  {"min_integrand", min_integrand},
                  {"pass", ok}}),
       out);
  return ok ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Chevalley bases, cominiscule gradings and their invariant tensors"};
  app.require_subcommand(1);

  int max_rank = 5;
  auto* enumerate = app.add_subcommand("enumerate", "list cominiscule (type, node) pairs");
  enumerate->add_option("--max-rank", max_rank, "largest rank to include")->check(CLI::PositiveNumber);

  std::string family, out, from, what = "constants";
  int rank = 0, node = 0;
  auto* grading = app.add_subcommand("grading", "print the grading of a marked node as JSON");
  grading->add_option("--type", family, "A, B, C, D or E")->required();
  grading->add_option("--rank", rank)->required();
  grading->add_option("--node", node, "1-based marked node")->required();
  grading->add_option("--out", out, "output file (default: stdout)");

  auto* exp = app.add_subcommand("export", "write structure constants or roots as JSON");
  exp->add_option("--type", family);
  exp->add_option("--rank", rank);
  exp->add_option("--from", from, "re-export a structure-constant file");
  exp->add_option("--what", what, "constants or roots")->check(CLI::IsMember({"constants", "roots"}));
  exp->add_option("--out", out);

  std::string suites = "all";
  unsigned threads = 0;
  std::uint64_t seed = 1;
  auto* verify = app.add_subcommand("verify", "run verification suites and write a JSON report");
  verify->add_option("--suite", suites, "suite name, comma list, or all");
  verify->add_option("--max-rank", max_rank, "rank bound for A-D (E6, E7 always included)")
      ->check(CLI::PositiveNumber);
  verify->add_option("--threads", threads, "worker threads (default: hardware)");
  verify->add_option("--seed", seed);
  verify->add_option("--out", out);

  std::string map_path, at;
  auto* schw = app.add_subcommand("schwarzian", "evaluate the Schwarzian of a rational map");
  schw->add_option("--map", map_path, "rational map JSON")->required();
  schw->add_option("--at", at, "point: re[:im],re[:im],...")->required();
  schw->add_option("--out", out);

  int n = 2, samples = 100;
  double lambda = 1.0;
  auto* prop3 = app.add_subcommand("prop3", "check the curvature identity on random Einstein tensors");
  prop3->add_option("--n", n)->check(CLI::Range(2, 64));
  prop3->add_option("--samples", samples);
  prop3->add_option("--seed", seed);
  prop3->add_option("--lambda", lambda);
  prop3->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (*enumerate) return cmd_enumerate(max_rank);
    if (*grading) return cmd_grading(family, rank, node, out);
    if (*exp) return cmd_export(family, rank, from, what, out);
    if (*verify) return cmd_verify(suites, max_rank, threads, seed, out);
    if (*schw) return cmd_schwarzian(map_path, at, out);
    if (*prop3) return cmd_prop3(n, samples, seed, lambda, out);
  } catch (const ConstructionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const EvaluationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "check failed: " << e.what() << '\n';
    return kFailed;
  }
  return kUsage;
}
