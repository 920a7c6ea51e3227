// Command-line surface: analyze / verify / sweep / classical /
// certify-zero-error / contraction. Exit codes: 0 = all checks pass,
// 2 = mathematical finding (a bound or dichotomy violated), 1 = operational
// error (with machine-readable JSON on stderr).

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qwielandt/io.hpp"
#include "qwielandt/parallel.hpp"
#include "qwielandt/zoo.hpp"

using namespace qwl;

namespace {

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::bad_input, "cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error(Errc::bad_input, "JSON parse error in " + path + ": " + e.what());
  }
  return j;
}

struct GlobalOptions {
  std::string tol_file;
  int threads = 1;
  bool emit_basis = false;
  uint64_t seed = 42;

  ToleranceConfig tolerances() const {
    ToleranceConfig tol;
    if (!tol_file.empty()) {
      tol = tolerances_from_json(read_json_file(tol_file), tol);
    }
    return tol;
  }
};

int run_analyze(const std::string& path, const GlobalOptions& g) {
  const ToleranceConfig tol = g.tolerances();
  const SuperOperator s = channel_from_json(read_json_file(path));
  Json out;
  out["d"] = s.dim();
  out["predicates"] = to_json(predicates(s, tol, 10000, g.seed));
  out["spectral"] = to_json(analyze_spectrum(s, tol));
  out["mult_domain"] = to_json(mult_domain(s, tol), g.emit_basis);

  const Hypotheses hyp = cheap_hypotheses(s, tol);
  if (hyp.trace_preserving && !hyp.schwarz_falsified) {
    try {
      out["chain"] = to_json(mult_chain(s, tol), g.emit_basis);
    } catch (const Error& e) {
      out["chain"] = Json{{"skipped", e.what()}};
    }
  } else {
    out["chain"] = Json{{"skipped", "requires TP map with Schwarz not falsified"}};
  }

  try {
    MultistartOptions opt;
    opt.seed = g.seed;
    out["index"] = to_json(omega_index(s, 0, tol, opt));
  } catch (const Error& e) {
    out["index"] = Json{{"skipped", e.what()}};
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_verify(const std::string& path, const std::string& bounds,
               const std::string& tensor_with, const GlobalOptions& g) {
  const ToleranceConfig tol = g.tolerances();
  MultistartOptions opt;
  opt.seed = g.seed;

  if (bounds == "tensor") {
    if (tensor_with.empty()) {
      throw Error(Errc::bad_params,
                  "verify --bounds tensor requires --tensor-with <channel.json>");
    }
    const SuperOperator s1 = channel_from_json(read_json_file(path));
    const SuperOperator s2 = channel_from_json(read_json_file(tensor_with));
    const TensorSplitResult ts = tensor_split_check(s1, s2, tol);
    Json out;
    out["tensor"] = Json{{"split_ok", ts.split_ok},
                         {"split_distance", ts.split_distance},
                         {"kappa_rule_ok", ts.kappa_rule_ok},
                         {"kappa_tensor", ts.kappa_tensor},
                         {"kappa_1", ts.kappa_1},
                         {"kappa_2", ts.kappa_2}};
    // The omega max-rule is empirical; a discrepancy is reported, not failed.
    try {
      const auto i1 = omega_index(s1, 0, tol, opt);
      const auto i2 = omega_index(s2, 0, tol, opt);
      const auto it = omega_index(tensor(s1, s2), 0, tol, opt);
      Json omega;
      omega["omega_1"] = i1.omega_upper ? Json(*i1.omega_upper) : Json();
      omega["omega_2"] = i2.omega_upper ? Json(*i2.omega_upper) : Json();
      omega["omega_tensor"] = it.omega_upper ? Json(*it.omega_upper) : Json();
      omega["max_rule_holds"] =
          i1.omega_upper && i2.omega_upper && it.omega_upper &&
          *it.omega_upper == std::max(*i1.omega_upper, *i2.omega_upper);
      out["omega_rule"] = std::move(omega);
    } catch (const Error& e) {
      out["omega_rule"] = Json{{"skipped", e.what()}};
    }
    std::cout << out.dump(2) << "\n";
    return (ts.split_ok && ts.kappa_rule_ok) ? 0 : 2;
  }

  const SuperOperator s = channel_from_json(read_json_file(path));
  const IndexReport rep = verify_bounds(s, tol, opt);
  Json out = to_json(rep);
  std::cout << out.dump(2) << "\n";

  auto selected = [&](const std::string& name) {
    if (bounds == "all") return true;
    if (bounds == "main") return name == "main" || name == "corollary";
    if (bounds == "ppt-eb") return name == "ppt_eb";
    if (bounds == "adjoint") return name == "adjoint";
    return false;
  };
  bool violated = false;
  for (const auto& row : rep.bounds) {
    if (row.applicable && selected(row.name) && !row.satisfied) violated = true;
  }
  return violated ? 2 : 0;
}

int run_classical(const std::string& matrix_path) {
  const MatR w = classical_matrix_from_json(read_json_file(matrix_path));
  const ClassicalWielandtResult r = classical_wielandt(w);
  const int d = static_cast<int>(w.rows());
  const long bound = static_cast<long>(d) * d - 2 * d + 2;
  const bool ok = !r.primitive || (r.p && *r.p <= bound);
  Json out;
  out["d"] = d;
  out["primitive"] = r.primitive;
  out["p"] = r.p ? Json(*r.p) : Json();
  out["bound"] = Json{{"claimed", bound}, {"satisfied", ok}};
  std::cout << out.dump(2) << "\n";
  return ok ? 0 : 2;
}

struct SweepConfig {
  std::string family = "mixed_unitary";
  int d = 2;
  int count = 10;
  uint64_t seed = 42;
  std::string out_path;
  int n_kraus = 2;
  bool unital = false;
  bool timings = false;
};

int run_sweep(const SweepConfig& cfg, const GlobalOptions& g) {
  const ToleranceConfig tol = g.tolerances();
  zoo::EnsembleSpec spec;
  spec.family = zoo::family_from_string(cfg.family);
  spec.d = cfg.d;
  spec.count = cfg.count;
  spec.seed = cfg.seed;
  spec.n_kraus = cfg.n_kraus;
  spec.unital = cfg.unital;
  const std::vector<SuperOperator> maps = zoo::sample(spec);

  auto analyze_one = [&](int i) -> SweepRow {
    const auto t0 = std::chrono::steady_clock::now();
    SweepRow row;
    row.instance_id = i;
    row.family = cfg.family;
    row.d = cfg.d;
    row.seed = cfg.seed;
    const SuperOperator& s = maps[i];
    MultistartOptions opt;
    opt.seed = splitmix64(cfg.seed ^ static_cast<uint64_t>(i));
    try {
      const SpectralReport spectral = analyze_spectrum(s, tol);
      row.primitive = verdict_name(spectral.primitive.verdict);
      if (spectral.primitive.verdict != Verdict::Falsified) {
        const IndexReport rep = omega_index(s, 0, tol, opt);
        row.omega_lower = rep.omega_lower;
        row.omega_upper = rep.omega_upper;
        row.kappa = rep.kappa;
        row.i_index = rep.i_index;
        auto flag = [&](const char* name) -> std::optional<bool> {
          const BoundRow* b = rep.bound(name);
          if (b == nullptr || !b->applicable) return std::nullopt;
          return b->satisfied;
        };
        row.bound_classical = flag("classical");
        row.bound_quantum = flag("quantum");
        row.bound_main = flag("main");
        row.bound_corollary = flag("corollary");
        row.bound_ppt_eb = flag("ppt_eb");
      }
      const Hypotheses hyp = cheap_hypotheses(s, tol);
      if (hyp.trace_preserving) {
        ContractionOptions copt;
        copt.starts = 16;
        copt.max_iters = 150;
        copt.probe_starts = 8;
        copt.probe_iters = 80;
        copt.bisect_steps = 12;
        copt.seed = splitmix64(cfg.seed ^ (0xABCDULL + i));
        row.c_lower = contraction_coefficient(s, tol, copt).c_lower;
      }
    } catch (const Error&) {
      // row keeps whatever was filled; missing values stay empty
    }
    if (cfg.timings) {
      row.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
    }
    return row;
  };

  const std::vector<SweepRow> rows =
      parallel_map<SweepRow>(cfg.count, g.threads, analyze_one);

  std::string csv = sweep_csv_header();
  csv += '\n';
  for (const auto& row : rows) {
    csv += sweep_csv_row(row);
    csv += '\n';
  }
  if (!cfg.out_path.empty()) {
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) throw Error(Errc::bad_input, "cannot write " + cfg.out_path);
    out << csv;
  } else {
    std::cout << csv;
  }

  // Summary: max/median of the omega upper bracket, violation count.
  std::vector<int> omegas;
  int violations = 0;
  int primitive_count = 0;
  for (const auto& row : rows) {
    if (row.omega_upper) omegas.push_back(*row.omega_upper);
    if (row.primitive == "Certified") ++primitive_count;
    for (const auto& flag : {row.bound_classical, row.bound_quantum,
                             row.bound_main, row.bound_corollary,
                             row.bound_ppt_eb}) {
      if (flag && !*flag) ++violations;
    }
  }
  std::sort(omegas.begin(), omegas.end());
  Json summary;
  summary["family"] = cfg.family;
  summary["d"] = cfg.d;
  summary["count"] = cfg.count;
  summary["seed"] = cfg.seed;
  summary["primitive_count"] = primitive_count;
  summary["omega_upper_max"] = omegas.empty() ? Json() : Json(omegas.back());
  summary["omega_upper_median"] =
      omegas.empty() ? Json() : Json(omegas[omegas.size() / 2]);
  summary["violations"] = violations;
  std::cout << summary.dump(2) << "\n";
  return violations == 0 ? 0 : 2;
}

int run_zero_error(const std::string& path, const GlobalOptions& g) {
  const ToleranceConfig tol = g.tolerances();
  const SuperOperator s = channel_from_json(read_json_file(path));
  MultistartOptions opt;
  opt.seed = g.seed;
  try {
    const ZeroErrorCertificate cert = zero_error_dichotomy(s, tol, opt);
    std::cout << to_json(cert).dump(2) << "\n";
    return 0;
  } catch (const Error& e) {
    if (e.code() == Errc::inconclusive_span) {
      std::cerr << error_to_json(e).dump() << "\n";
      return 2;  // a reportable finding, not an operational error
    }
    throw;
  }
}

int run_contraction(const std::string& path, const GlobalOptions& g) {
  const ToleranceConfig tol = g.tolerances();
  const SuperOperator s = channel_from_json(read_json_file(path));
  ContractionOptions opt;
  opt.seed = g.seed;
  const ContractionReport rep = contraction_coefficient(s, tol, opt);
  std::cout << to_json(rep).dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for primitivity indices, multiplicative "
               "domains and contraction certificates of positive maps"};
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--tol-file", g.tol_file,
                 "JSON file overriding tolerance defaults");
  app.add_option("--threads", g.threads, "worker threads for sweeps");
  app.add_flag("--emit-basis", g.emit_basis,
               "include basis matrices in subspace reports");
  app.add_option("--seed", g.seed, "seed for sampled predicates and searches");

  std::string channel_path;
  auto* analyze = app.add_subcommand("analyze", "full spectral/domain/index report");
  analyze->add_option("channel", channel_path, "channel JSON file")->required();

  std::string verify_path, tensor_with;
  std::string bounds = "all";
  auto* verify = app.add_subcommand("verify", "check the index bounds");
  verify->add_option("channel", verify_path, "channel JSON file")->required();
  verify->add_option("--bounds", bounds, "all|main|ppt-eb|tensor|adjoint")
      ->check(CLI::IsMember({"all", "main", "ppt-eb", "tensor", "adjoint"}));
  verify->add_option("--tensor-with", tensor_with,
                     "second channel for --bounds tensor");

  SweepConfig sweep_cfg;
  auto* sweep = app.add_subcommand("sweep", "seeded ensemble sweep to CSV");
  sweep->add_option("--family", sweep_cfg.family,
                    "haar_kraus|mixed_unitary|doubly_stochastic_embed|"
                    "eb_holevo|ppt_rejection");
  sweep->add_option("--d", sweep_cfg.d, "system dimension");
  sweep->add_option("--count", sweep_cfg.count, "number of instances");
  sweep->add_option("--seed", sweep_cfg.seed, "ensemble seed");
  sweep->add_option("--out", sweep_cfg.out_path, "CSV output path");
  sweep->add_option("--n-kraus", sweep_cfg.n_kraus, "Kraus operators per map");
  sweep->add_flag("--unital", sweep_cfg.unital, "unital variant (eb_holevo)");
  sweep->add_flag("--timings", sweep_cfg.timings,
                  "fill runtime_ms (makes output non-reproducible)");

  std::string matrix_path;
  auto* classical = app.add_subcommand(
      "classical", "classical index of a nonnegative matrix");
  classical->add_option("--matrix", matrix_path, "matrix JSON file")->required();

  std::string ze_path;
  auto* ze = app.add_subcommand("certify-zero-error",
                                "zero-error dichotomy certificate");
  ze->add_option("channel", ze_path, "channel JSON file")->required();

  std::string contraction_path;
  auto* contraction =
      app.add_subcommand("contraction", "trace-norm contraction report");
  contraction->add_option("channel", contraction_path, "channel JSON file")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) return run_analyze(channel_path, g);
    if (*verify) return run_verify(verify_path, bounds, tensor_with, g);
    if (*sweep) return run_sweep(sweep_cfg, g);
    if (*classical) return run_classical(matrix_path);
    if (*ze) return run_zero_error(ze_path, g);
    if (*contraction) return run_contraction(contraction_path, g);
  } catch (const Error& e) {
    std::cerr << error_to_json(e).dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", Json{{"code", "internal"}, {"message", e.what()}}}}
                     .dump()
              << "\n";
    return 1;
  }
  return 1;
}
