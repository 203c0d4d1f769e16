// Copyright 2026, The qvote developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qvote/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "qvote/regimes.hpp"
#include "qvote/rng.hpp"
#include "qvote/sweep_io.hpp"
#include "qvote/version.hpp"
#include "qvote/voting.hpp"

namespace qvote::mc {

namespace {

using analytics::CnotError;
using analytics::ReadoutError;
using analytics::VoteCount;

// Internal typed form of one grid point; rows expose it as a ParamMap.
struct GridPoint {
  double p = 0.0;
  double r = 0.0;
  double gamma = 0.0;
  double alpha = 0.0;
  double q = 0.0;
  int register_size = 0;
  int vote_count = 1;
  owqc::VerificationTopology::Kind topology = owqc::VerificationTopology::Kind::linear;
};

void require_rates(const std::vector<double>& values, const char* what) {
  if (values.empty()) throw ConfigError(std::string(what) + ": list must not be empty");
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw ConfigError(std::string(what) + ": rate " + std::to_string(v) + " outside [0, 1]");
    }
  }
}

bool is_simulated(ExperimentKind kind) {
  return kind == ExperimentKind::projection_mitigation || kind == ExperimentKind::owqc_end_to_end;
}

// Per-vote flip probability when independent projection and readout flips
// combine: either one flips, not both.
double combined_rate(double p, double r) { return p + r - 2.0 * p * r; }

const char* topology_name(owqc::VerificationTopology::Kind kind) {
  return kind == owqc::VerificationTopology::Kind::linear ? "linear" : "log_depth";
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

std::vector<GridPoint> build_grid(const ExperimentConfig& config) {
  std::vector<GridPoint> grid;

  // With a calibration file the noise comes per qubit from the file; the
  // grid collapses to the file's median rates so rows stay self-describing.
  std::vector<double> p_values = config.p_values;
  std::vector<double> r_values = config.r_values;
  std::vector<double> gamma_values = config.gamma_values;
  if (config.calibration.has_value() && is_simulated(config.kind)) {
    std::vector<double> ps, rs, gs;
    for (const auto& qubit : config.calibration->qubits) {
      ps.push_back(qubit.projection_error);
      rs.push_back(qubit.readout_error);
    }
    for (const auto& pair : config.calibration->cnot_pairs) gs.push_back(pair.gamma);
    p_values = {median(ps)};
    r_values = {median(rs)};
    gamma_values = {median(gs)};
  }

  switch (config.kind) {
    case ExperimentKind::readout_voting:
      for (double r : r_values) {
        for (int n : config.vote_counts) {
          GridPoint point;
          point.r = r;
          point.vote_count = n;
          grid.push_back(point);
        }
      }
      break;
    case ExperimentKind::projection_mitigation:
    case ExperimentKind::owqc_end_to_end:
      for (auto topology : config.topologies) {
        for (int nv : config.register_sizes) {
          for (double p : p_values) {
            for (double r : r_values) {
              for (double gamma : gamma_values) {
                for (double alpha : config.alphas) {
                  GridPoint point;
                  point.topology = topology;
                  point.register_size = nv;
                  point.p = p;
                  point.r = r;
                  point.gamma = gamma;
                  point.alpha = alpha;
                  grid.push_back(point);
                }
              }
            }
          }
        }
      }
      break;
    case ExperimentKind::analytic_sweep:
      for (double r : r_values) {
        for (double gamma : gamma_values) {
          for (int n : config.vote_counts) {
            GridPoint point;
            point.r = r;
            point.gamma = gamma;
            point.vote_count = n;
            point.topology = owqc::VerificationTopology::Kind::log_depth;
            grid.push_back(point);
          }
        }
      }
      break;
    case ExperimentKind::bernoulli_toy:
      for (double q : config.q_values) {
        GridPoint point;
        point.q = q;
        grid.push_back(point);
      }
      break;
  }
  return grid;
}

ParamMap params_for(ExperimentKind kind, const GridPoint& point) {
  ParamMap params;
  switch (kind) {
    case ExperimentKind::readout_voting:
      params["r"] = point.r;
      params["n"] = static_cast<std::int64_t>(point.vote_count);
      break;
    case ExperimentKind::projection_mitigation:
    case ExperimentKind::owqc_end_to_end:
      params["topology"] = std::string(topology_name(point.topology));
      params["register_size"] = static_cast<std::int64_t>(point.register_size);
      params["p"] = point.p;
      params["r"] = point.r;
      params["gamma"] = point.gamma;
      params["alpha"] = point.alpha;
      break;
    case ExperimentKind::analytic_sweep:
      params["r"] = point.r;
      params["gamma"] = point.gamma;
      params["n"] = static_cast<std::int64_t>(point.vote_count);
      break;
    case ExperimentKind::bernoulli_toy:
      params["q"] = point.q;
      break;
  }
  return params;
}

owqc::ErrorModel error_model_for(const ExperimentConfig& config, const GridPoint& point) {
  owqc::ErrorModel model;
  model.base.projection = sim::FlipRates::symmetric(point.p);
  model.base.readout = sim::FlipRates::symmetric(point.r);
  model.cnot_gamma = point.gamma;
  if (config.calibration.has_value()) {
    std::vector<calib::QubitCalibration> ordered = config.calibration->qubits;
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& a, const auto& b) { return a.id < b.id; });
    for (const auto& qubit : ordered) {
      model.per_qubit.push_back(owqc::QubitNoise{
          sim::FlipRates::symmetric(qubit.projection_error),
          sim::FlipRates::symmetric(qubit.readout_error)});
    }
  }
  return model;
}

bool run_shot(const ExperimentConfig& config, const GridPoint& point,
              const owqc::ErrorModel& model, RngStream& rng) {
  switch (config.kind) {
    case ExperimentKind::readout_voting: {
      // The flip channel is symmetric in the stored bit, so reading a fixed
      // 0 loses no generality.
      const auto reads = sim::readout_only(0, point.r, point.vote_count, rng);
      int ones = 0;
      for (int bit : reads) ones += bit;
      return ones > point.vote_count - ones;
    }
    case ExperimentKind::projection_mitigation: {
      owqc::GraphStateTC graph = owqc::prepare_graph_state(point.alpha);
      const owqc::VerificationTopology topology{point.topology, point.register_size};
      sim::StateVector state =
          owqc::attach_verification(graph, topology, model.cnot_gamma, rng, config.mode);
      std::vector<int> register_qubits;
      for (int j = 0; j < point.register_size; ++j) register_qubits.push_back(2 + j);
      const owqc::VoteOutcome outcome = owqc::mitigated_measure(
          state, 0, register_qubits, point.alpha, model, rng, config.mode);
      return outcome.vote.verdict != outcome.true_branch;
    }
    case ExperimentKind::owqc_end_to_end: {
      const owqc::VerificationTopology topology{point.topology, point.register_size};
      const owqc::ShotResult shot =
          owqc::run_owqc_shot(point.alpha, model, topology, rng, config.mode);
      if (config.metric == OwqcMetric::misidentification) return shot.misidentified;
      return shot.output_bit != 0;
    }
    case ExperimentKind::bernoulli_toy:
      return rng.bernoulli(point.q);
    case ExperimentKind::analytic_sweep:
      break;
  }
  throw ConfigError("run_shot: kind is not sampled");
}

double run_repetition(const ExperimentConfig& config, const GridPoint& point,
                      const owqc::ErrorModel& model, RngStream& rng) {
  long hits = 0;
  for (int i = 0; i < config.runs; ++i) {
    hits += run_shot(config, point, model, rng) ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(config.runs);
}

}  // namespace

bool has_param(const ParamMap& params, const std::string& key) { return params.contains(key); }

double param_as_double(const ParamMap& params, const std::string& key) {
  const auto it = params.find(key);
  if (it == params.end()) throw ConfigError("row parameter '" + key + "' missing");
  if (const auto* d = std::get_if<double>(&it->second)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&it->second)) return static_cast<double>(*i);
  throw ConfigError("row parameter '" + key + "' is not numeric");
}

std::int64_t param_as_int(const ParamMap& params, const std::string& key) {
  const auto it = params.find(key);
  if (it == params.end()) throw ConfigError("row parameter '" + key + "' missing");
  if (const auto* i = std::get_if<std::int64_t>(&it->second)) return *i;
  throw ConfigError("row parameter '" + key + "' is not an integer");
}

const std::string& param_as_string(const ParamMap& params, const std::string& key) {
  const auto it = params.find(key);
  if (it == params.end()) throw ConfigError("row parameter '" + key + "' missing");
  if (const auto* s = std::get_if<std::string>(&it->second)) return *s;
  throw ConfigError("row parameter '" + key + "' is not a string");
}

void ExperimentConfig::validate() const {
  if (runs < 1 || repetitions < 1) {
    throw ConfigError("runs and repetitions must both be at least 1");
  }
  require_rates(p_values, "p_values");
  require_rates(r_values, "r_values");
  require_rates(gamma_values, "gamma_values");
  require_rates(q_values, "q_values");
  if (alphas.empty()) throw ConfigError("alphas: list must not be empty");
  if (topologies.empty()) throw ConfigError("topologies: list must not be empty");
  if (register_sizes.empty()) throw ConfigError("register_sizes: list must not be empty");
  if (vote_counts.empty()) throw ConfigError("vote_counts: list must not be empty");

  for (int nv : register_sizes) {
    if (nv < 0) throw ConfigError("register_sizes: #V must be >= 0");
    if (is_simulated(kind) && nv % 2 != 0) {
      throw ConfigError("register_sizes: #V must be even so the vote count #V + 1 is odd");
    }
  }
  for (int n : vote_counts) {
    if (n < 1) throw ConfigError("vote_counts: N must be >= 1");
    if (kind == ExperimentKind::readout_voting && n % 2 == 0) {
      throw ConfigError("vote_counts: N must be odd for a majority verdict");
    }
  }
  if (is_simulated(kind)) {
    const int max_nv = *std::max_element(register_sizes.begin(), register_sizes.end());
    if (2 + max_nv > sim::StateVector::kMaxQubits) {
      throw ResourceLimitError("register size " + std::to_string(max_nv) + " needs " +
                               std::to_string(2 + max_nv) + " qubits; the simulator caps at " +
                               std::to_string(sim::StateVector::kMaxQubits));
    }
    if (calibration.has_value()) {
      const int needed = 2 + max_nv;
      if (static_cast<int>(calibration->qubits.size()) < needed) {
        throw ConfigError("calibration lists " + std::to_string(calibration->qubits.size()) +
                          " qubits but the sweep needs " + std::to_string(needed));
      }
    }
  }
}

SweepTable run_experiment(const ExperimentConfig& config, int n_threads) {
  config.validate();
  const std::vector<GridPoint> grid = build_grid(config);

  SweepTable table;
  table.metadata.kind = to_string(config.kind);
  table.metadata.config_hash = config_hash_hex(config);
  table.metadata.master_seed = config.master_seed;
  table.metadata.code_version = kVersion;
  table.metadata.rng_algorithm = kRngAlgorithmId;
  table.metadata.runs = config.runs;
  table.metadata.repetitions = config.repetitions;

  if (config.kind == ExperimentKind::analytic_sweep) {
    for (const GridPoint& point : grid) {
      SweepRow row;
      row.params = params_for(config.kind, point);
      row.value = analytics::misid_with_cnot(ReadoutError(point.r), CnotError(point.gamma),
                                             VoteCount(point.vote_count));
      table.rows.push_back(row);
    }
    return table;
  }

  const std::size_t reps = static_cast<std::size_t>(config.repetitions);
  const std::size_t total = grid.size() * reps;
  std::vector<double> rep_means(total, 0.0);

  // Each (grid point, repetition) task owns stream grid_index * repetitions
  // + repetition_index and writes one fixed slot, so any worker schedule
  // produces the same table.
  std::atomic<std::size_t> cursor{0};
  const auto worker = [&]() {
    for (std::size_t k = cursor.fetch_add(1); k < total; k = cursor.fetch_add(1)) {
      const GridPoint& point = grid[k / reps];
      const owqc::ErrorModel model = error_model_for(config, point);
      RngStream rng(config.master_seed, static_cast<std::uint64_t>(k));
      rep_means[k] = run_repetition(config, point, model, rng);
    }
  };

  const std::size_t usable_threads = static_cast<std::size_t>(std::max(1, n_threads));
  if (usable_threads == 1 || total <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    const std::size_t spawned = std::min(usable_threads, total);
    pool.reserve(spawned);
    for (std::size_t t = 0; t < spawned; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (std::size_t g = 0; g < grid.size(); ++g) {
    double mean = 0.0;
    for (std::size_t j = 0; j < reps; ++j) mean += rep_means[g * reps + j];
    mean /= static_cast<double>(reps);

    double sem = 0.0;
    if (reps > 1) {
      double ss = 0.0;
      for (std::size_t j = 0; j < reps; ++j) {
        const double d = rep_means[g * reps + j] - mean;
        ss += d * d;
      }
      sem = std::sqrt(ss / static_cast<double>(reps - 1) / static_cast<double>(reps));
    }

    SweepRow row;
    row.params = params_for(config.kind, grid[g]);
    row.value = mean;
    row.sem = sem;
    row.samples = static_cast<std::uint64_t>(config.runs) * config.repetitions;
    table.rows.push_back(row);
  }
  return table;
}

const char* to_string(Predictor predictor) {
  switch (predictor) {
    case Predictor::voting:
      return "voting";
    case Predictor::voting_effective:
      return "voting_effective";
    case Predictor::voting_upper_bound:
      return "voting_upper_bound";
  }
  return "?";
}

Predictor predictor_from_string(const std::string& name) {
  if (name == "voting") return Predictor::voting;
  if (name == "voting_effective") return Predictor::voting_effective;
  if (name == "voting_upper_bound") return Predictor::voting_upper_bound;
  throw ConfigError("unknown predictor '" + name + "'");
}

PredictionReport compare_to_prediction(const SweepTable& table, Predictor predictor) {
  PredictionReport report;
  report.predictor = predictor;

  const bool register_kind = table.metadata.kind == "projection_mitigation" ||
                             table.metadata.kind == "owqc_end_to_end";
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const SweepRow& row = table.rows[i];
    const int n = register_kind ? static_cast<int>(param_as_int(row.params, "register_size")) + 1
                                : static_cast<int>(param_as_int(row.params, "n"));
    const double p = has_param(row.params, "p") ? param_as_double(row.params, "p") : 0.0;
    const double r = has_param(row.params, "r") ? param_as_double(row.params, "r") : 0.0;
    const double gamma =
        has_param(row.params, "gamma") ? param_as_double(row.params, "gamma") : 0.0;
    const bool linear = has_param(row.params, "topology") &&
                        param_as_string(row.params, "topology") == "linear";
    const double vote_rate = combined_rate(p, r);

    double predicted = 0.0;
    switch (predictor) {
      case Predictor::voting:
        predicted = analytics::misid_prob(VoteCount(n), ReadoutError(vote_rate));
        break;
      case Predictor::voting_effective: {
        const double eff =
            (linear && n > 1)
                ? combined_rate(vote_rate, gamma)
                : analytics::effective_error(ReadoutError(vote_rate), CnotError(gamma),
                                             VoteCount(n))
                      .rate;
        predicted = analytics::misid_prob(VoteCount(n), ReadoutError(eff));
        break;
      }
      case Predictor::voting_upper_bound: {
        const auto eff =
            analytics::effective_error(ReadoutError(vote_rate), CnotError(gamma), VoteCount(n));
        predicted = analytics::misid_prob_est(static_cast<double>(n), eff);
        break;
      }
    }

    PredictionRow scored;
    scored.row_index = i;
    scored.observed = row.value;
    scored.predicted = predicted;
    // Rare-event floor: with few or zero hits the empirical SEM collapses,
    // so fall back to the binomial SEM the prediction itself implies.
    double floor = 0.0;
    if (row.samples > 0) {
      floor = std::sqrt(std::max(0.0, predicted * (1.0 - predicted)) /
                        static_cast<double>(row.samples));
    }
    scored.sem_used = std::max(row.sem, floor);
    const double diff = scored.observed - scored.predicted;
    if (scored.sem_used > 0.0) {
      scored.z = diff / scored.sem_used;
    } else {
      scored.z = diff == 0.0 ? 0.0 : std::copysign(INFINITY, diff);
    }
    scored.pass = std::fabs(scored.z) <= 3.0;
    report.pass_count += scored.pass ? 1 : 0;
    report.rows.push_back(scored);
  }
  report.pass_fraction =
      report.rows.empty() ? 1.0
                          : static_cast<double>(report.pass_count) /
                                static_cast<double>(report.rows.size());
  return report;
}

}  // namespace qvote::mc
