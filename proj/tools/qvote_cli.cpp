// Copyright 2026, The qvote developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.
//
// Command-line front end: analytic tables for protocol design, Monte Carlo
// sweeps, and register-size recommendations from calibration data.
//
// Exit codes: 0 success, 2 usage/validation, 3 resource limits,
// 4 numerical failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qvote/calibration.hpp"
#include "qvote/experiment.hpp"
#include "qvote/regimes.hpp"
#include "qvote/rng.hpp"
#include "qvote/sweep_io.hpp"
#include "qvote/version.hpp"
#include "qvote/voting.hpp"

namespace {

using qvote::analytics::CnotError;
using qvote::analytics::FanoutKind;
using qvote::analytics::ReadoutError;
using qvote::analytics::VoteCount;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;
constexpr int kExitNumerical = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Value lists come either comma-separated ("0.01,0.05") or as inclusive
// ranges "start:stop:step".
std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> values;
  if (spec.find(':') != std::string::npos) {
    double start = 0.0, stop = 0.0, step = 0.0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3 || step <= 0.0) {
      throw UsageError("bad range '" + spec + "', expected start:stop:step with step > 0");
    }
    for (double v = start; v <= stop + step * 0.5; v += step) values.push_back(v);
    return values;
  }
  std::stringstream stream(spec);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      values.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw UsageError("bad number '" + item + "' in '" + spec + "'");
    }
  }
  if (values.empty()) throw UsageError("empty value list '" + spec + "'");
  return values;
}

std::vector<int> parse_int_list(const std::string& spec) {
  std::vector<int> values;
  std::stringstream stream(spec);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      values.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw UsageError("bad integer '" + item + "' in '" + spec + "'");
    }
  }
  if (values.empty()) throw UsageError("empty value list '" + spec + "'");
  return values;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << content;
}

void emit_table(const qvote::mc::SweepTable& table, const std::string& out_path,
                const std::string& format) {
  const std::string content =
      format == "csv" ? qvote::mc::to_csv(table) : qvote::mc::to_json(table);
  if (out_path.empty()) {
    std::cout << content;
  } else {
    write_file(out_path, content);
    std::cout << "wrote " << table.rows.size() << " rows to " << out_path << "\n";
  }
}

qvote::mc::SweepMetadata analytic_metadata(const std::string& kind, const std::string& spec) {
  qvote::mc::SweepMetadata meta;
  meta.kind = kind;
  meta.config_hash = qvote::mc::fnv1a64_hex(kind + "|" + spec);
  meta.master_seed = 0;
  meta.code_version = qvote::kVersion;
  meta.rng_algorithm = "none (closed form)";
  meta.runs = 0;
  meta.repetitions = 0;
  return meta;
}

// --- analytic subcommands ---------------------------------------------

struct AnalyticOptions {
  std::string out;
  std::string format = "json";
  std::string r_spec;
  std::string eps_spec;
  std::string gamma_spec;
  std::string n_spec;
  std::string n_grid;
  std::string gamma_grid;
  std::string r_grid;
  std::string method = "exact";
  int n_max = 101;
  int cap = 10001;
};

int run_misid(const AnalyticOptions& opt) {
  const std::vector<double> rates = parse_grid(opt.r_spec);
  const std::vector<int> counts = parse_int_list(opt.n_spec);
  qvote::mc::SweepTable table;
  table.metadata = analytic_metadata("analytic:misid", opt.r_spec + "|" + opt.n_spec + "|" + opt.method);
  for (double r : rates) {
    for (int n : counts) {
      qvote::mc::SweepRow row;
      row.params["r"] = r;
      row.params["n"] = static_cast<std::int64_t>(n);
      row.params["method"] = opt.method;
      if (opt.method == "exact") {
        row.value = qvote::analytics::misid_prob(VoteCount(n), ReadoutError(r));
      } else if (opt.method == "poly") {
        row.value = qvote::analytics::misid_prob_poly(VoteCount(n), ReadoutError(r));
      } else if (opt.method == "stirling") {
        row.value = qvote::analytics::misid_prob_stirling(VoteCount(n), ReadoutError(r));
      } else {
        throw UsageError("unknown method '" + opt.method + "' (exact, poly, stirling)");
      }
      table.rows.push_back(row);
    }
  }
  emit_table(table, opt.out, opt.format);
  return kExitOk;
}

int run_required_n(const AnalyticOptions& opt) {
  const std::vector<double> eps_values = parse_grid(opt.eps_spec);
  const std::vector<double> rates = parse_grid(opt.r_spec);
  if (opt.method != "exact" && opt.method != "approx" && opt.method != "both") {
    throw UsageError("unknown method '" + opt.method + "' (exact, approx, both)");
  }
  qvote::mc::SweepTable table;
  table.metadata = analytic_metadata("analytic:required-n",
                                     opt.eps_spec + "|" + opt.r_spec + "|" + opt.method);
  for (double eps : eps_values) {
    for (double r : rates) {
      const auto add_row = [&](const char* method, int n) {
        qvote::mc::SweepRow row;
        row.params["eps"] = eps;
        row.params["r"] = r;
        row.params["method"] = std::string(method);
        row.value = static_cast<double>(n);
        table.rows.push_back(row);
      };
      if (opt.method != "approx") {
        add_row("exact", qvote::analytics::required_n_exact(eps, ReadoutError(r), opt.cap).value);
      }
      if (opt.method != "exact") {
        add_row("approx", qvote::analytics::required_n_approx(eps, ReadoutError(r)).value);
      }
    }
  }
  emit_table(table, opt.out, opt.format);
  return kExitOk;
}

int run_eps_est(const AnalyticOptions& opt) {
  const std::vector<double> rates = parse_grid(opt.r_spec);
  const std::vector<double> gammas = parse_grid(opt.gamma_spec);
  const std::vector<double> n_axis = parse_grid(opt.n_grid);
  qvote::mc::SweepTable table;
  table.metadata = analytic_metadata("analytic:eps-est",
                                     opt.r_spec + "|" + opt.gamma_spec + "|" + opt.n_grid);
  for (double r : rates) {
    for (double gamma : gammas) {
      for (double n : n_axis) {
        const auto eff = qvote::analytics::effective_error_continuous(ReadoutError(r),
                                                                      CnotError(gamma), n);
        qvote::mc::SweepRow row;
        row.params["r"] = r;
        row.params["gamma"] = gamma;
        row.params["n"] = n;
        row.params["r_tilde"] = eff.rate;
        row.value = qvote::analytics::misid_prob_est(n, eff);
        table.rows.push_back(row);
      }
    }
  }
  emit_table(table, opt.out, opt.format);
  return kExitOk;
}

int run_regimes(const AnalyticOptions& opt) {
  const std::vector<double> rates = parse_grid(opt.r_spec);
  qvote::mc::SweepTable table;
  table.metadata =
      analytic_metadata("analytic:regimes", opt.r_spec + "|" + opt.gamma_grid);
  if (opt.gamma_grid.empty()) {
    // Boundary curves: the two critical gammas per initial error rate.
    for (double r : rates) {
      const double g_initial = qvote::analytics::critical_gamma_initial(ReadoutError(r)).rate;
      const double g_any =
          qvote::analytics::critical_gamma_any(ReadoutError(r), VoteCount(1001)).rate;
      for (const auto& [name, value] :
           {std::pair<const char*, double>{"initial", g_initial}, {"any", g_any}}) {
        qvote::mc::SweepRow row;
        row.params["r"] = r;
        row.params["boundary"] = std::string(name);
        row.value = value;
        table.rows.push_back(row);
      }
    }
  } else {
    // Classification curve over an explicit gamma grid; value is the regime
    // code 3 / 2 / 1 (immediate / delayed / no improvement).
    for (double r : rates) {
      for (double gamma : parse_grid(opt.gamma_grid)) {
        qvote::mc::SweepRow row;
        row.params["r"] = r;
        row.params["gamma"] = gamma;
        const auto label = qvote::analytics::classify_regime(ReadoutError(r), CnotError(gamma),
                                                             VoteCount(1001));
        row.params["regime"] = std::string(qvote::analytics::to_string(label));
        row.value = qvote::analytics::regime_code(label);
        table.rows.push_back(row);
      }
    }
  }
  emit_table(table, opt.out, opt.format);
  return kExitOk;
}

int run_best_n(const AnalyticOptions& opt, bool first_improving) {
  const std::vector<double> rates = parse_grid(opt.r_grid);
  const std::vector<double> gammas = parse_grid(opt.gamma_grid);
  qvote::mc::SweepTable table;
  table.metadata = analytic_metadata(first_improving ? "analytic:first-n" : "analytic:best-n",
                                     opt.r_grid + "|" + opt.gamma_grid + "|" +
                                         std::to_string(opt.n_max));
  for (double r : rates) {
    for (double gamma : gammas) {
      qvote::mc::SweepRow row;
      row.params["r"] = r;
      row.params["gamma"] = gamma;
      if (first_improving) {
        const auto n = qvote::analytics::first_improving_n(ReadoutError(r), CnotError(gamma),
                                                           VoteCount(opt.n_max));
        row.value = n.has_value() ? static_cast<double>(n->value) : 0.0;  // 0 = none
      } else {
        row.value = static_cast<double>(
            qvote::analytics::best_n(ReadoutError(r), CnotError(gamma), VoteCount(opt.n_max))
                .value);
      }
      table.rows.push_back(row);
    }
  }
  emit_table(table, opt.out, opt.format);
  return kExitOk;
}

// --- simulate / recommend ----------------------------------------------

struct SimulateOptions {
  std::string config_path;
  std::string out;
  std::string format = "json";
  std::string predict;
  std::string report_path;
  std::optional<std::uint64_t> seed;
  int threads = 1;
};

int run_simulate(const SimulateOptions& opt) {
  qvote::mc::ExperimentConfig config = qvote::mc::config_from_json(read_file(opt.config_path));
  if (opt.seed.has_value()) config.master_seed = *opt.seed;

  const qvote::mc::SweepTable table = qvote::mc::run_experiment(config, opt.threads);
  emit_table(table, opt.out, opt.format);

  if (!opt.predict.empty()) {
    const auto predictor = qvote::mc::predictor_from_string(opt.predict);
    const auto report = qvote::mc::compare_to_prediction(table, predictor);
    std::cout << qvote::mc::report_to_text(report);
    if (!opt.report_path.empty()) {
      write_file(opt.report_path, qvote::mc::report_to_json(report));
    }
  }
  return kExitOk;
}

struct RecommendOptions {
  std::string calib_path;
  std::string out;
  std::string format = "json";
  double eps = 0.01;
  std::string topology = "log";
  int cap = 10001;
};

int run_recommend(const RecommendOptions& opt) {
  const auto calibration = qvote::calib::CalibrationFile::from_json(read_file(opt.calib_path));
  const FanoutKind fanout =
      (opt.topology == "linear") ? FanoutKind::linear : FanoutKind::log_depth;
  const auto recommendation = qvote::calib::recommend(calibration, opt.eps, fanout, opt.cap);
  std::cout << qvote::calib::recommendation_to_text(recommendation);
  const std::string json_text = qvote::calib::recommendation_to_json(recommendation);
  if (!opt.out.empty()) {
    write_file(opt.out, opt.format == "text"
                            ? qvote::calib::recommendation_to_text(recommendation)
                            : json_text);
    std::cout << "wrote " << opt.out << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"voting-based measurement-error mitigation: analytics and simulation"};
  app.set_version_flag("--version", qvote::kVersion);
  app.require_subcommand(1);

  AnalyticOptions aopt;
  SimulateOptions sopt;
  RecommendOptions ropt;

  CLI::App* analytic = app.add_subcommand("analytic", "closed-form protocol tables");
  analytic->require_subcommand(1);
  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", aopt.out, "output path (stdout when omitted)");
    cmd->add_option("--format", aopt.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  CLI::App* misid = analytic->add_subcommand("misid", "misidentification probability vs (r, N)");
  misid->add_option("--r", aopt.r_spec, "readout error rates (list or start:stop:step)")
      ->required();
  misid->add_option("--n", aopt.n_spec, "vote counts, comma separated")->required();
  misid->add_option("--method", aopt.method, "exact, poly or stirling");
  add_common(misid);

  CLI::App* required_n =
      analytic->add_subcommand("required-n", "register size needed for a target eps");
  required_n->add_option("--eps", aopt.eps_spec, "target misidentification rates")->required();
  required_n->add_option("--r", aopt.r_spec, "readout error rates")->required();
  required_n->add_option("--method", aopt.method, "exact, approx or both");
  required_n->add_option("--cap", aopt.cap, "give up past this register size");
  add_common(required_n);

  CLI::App* eps_est =
      analytic->add_subcommand("eps-est", "upper-bound estimate along a continuous N axis");
  eps_est->add_option("--r", aopt.r_spec, "base error rates")->required();
  eps_est->add_option("--gamma", aopt.gamma_spec, "CNOT error rates")->required();
  eps_est->add_option("--n-grid", aopt.n_grid, "N axis (start:stop:step)")->required();
  add_common(eps_est);

  CLI::App* regimes = analytic->add_subcommand(
      "regimes", "critical gammas, or regime classification over a gamma grid");
  regimes->add_option("--r", aopt.r_spec, "base error rates")->required();
  regimes->add_option("--gamma-grid", aopt.gamma_grid, "classify along this gamma grid");
  add_common(regimes);

  CLI::App* best = analytic->add_subcommand("best-n", "register size with the smallest eps");
  best->add_option("--r-grid", aopt.r_grid, "base error rates")->required();
  best->add_option("--gamma-grid", aopt.gamma_grid, "CNOT error rates")->required();
  best->add_option("--n-max", aopt.n_max, "largest odd N considered");
  add_common(best);

  CLI::App* first = analytic->add_subcommand("first-n", "smallest register that improves on N=1");
  first->add_option("--r-grid", aopt.r_grid, "base error rates")->required();
  first->add_option("--gamma-grid", aopt.gamma_grid, "CNOT error rates")->required();
  first->add_option("--n-max", aopt.n_max, "largest odd N considered");
  add_common(first);

  CLI::App* simulate = app.add_subcommand("simulate", "run a Monte Carlo sweep from a config file");
  simulate->add_option("config", sopt.config_path, "experiment config (JSON)")->required();
  simulate->add_option("--out", sopt.out, "output path (stdout when omitted)");
  simulate->add_option("--format", sopt.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  simulate->add_option("--seed", sopt.seed, "override the config's master seed");
  simulate->add_option("--threads", sopt.threads, "worker threads (results do not depend on this)")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--predict", sopt.predict,
                       "score rows against a predictor: voting, voting_effective, voting_upper_bound");
  simulate->add_option("--report", sopt.report_path, "write the prediction report as JSON here");

  CLI::App* recommend =
      app.add_subcommand("recommend", "size verification registers from a calibration file");
  recommend->add_option("calibration", ropt.calib_path, "calibration file (JSON, schema calib/1)")
      ->required();
  recommend->add_option("--eps", ropt.eps, "target misidentification probability")->required();
  recommend->add_option("--topology", ropt.topology, "linear or log")
      ->check(CLI::IsMember({"linear", "log"}));
  recommend->add_option("--cap", ropt.cap, "largest register size considered");
  recommend->add_option("--out", ropt.out, "write the recommendation here");
  recommend->add_option("--format", ropt.format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (misid->parsed()) return run_misid(aopt);
    if (required_n->parsed()) return run_required_n(aopt);
    if (eps_est->parsed()) return run_eps_est(aopt);
    if (regimes->parsed()) return run_regimes(aopt);
    if (best->parsed()) return run_best_n(aopt, false);
    if (first->parsed()) return run_best_n(aopt, true);
    if (simulate->parsed()) return run_simulate(sopt);
    if (recommend->parsed()) return run_recommend(ropt);
    std::cerr << "error: no subcommand\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const qvote::mc::ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const qvote::mc::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const qvote::calib::SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
