// Copyright 2026, The qvote developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qvote/sweep_io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include <json.hpp>

namespace qvote::mc {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* topology_name(owqc::VerificationTopology::Kind kind) {
  return kind == owqc::VerificationTopology::Kind::linear ? "linear" : "log_depth";
}

owqc::VerificationTopology::Kind topology_from_name(const std::string& name) {
  if (name == "linear") return owqc::VerificationTopology::Kind::linear;
  if (name == "log_depth") return owqc::VerificationTopology::Kind::log_depth;
  throw ConfigError("unknown topology '" + name + "'");
}

void reject_unknown_keys(const json& object, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (const auto& item : object.items()) {
    if (!allowed.contains(item.key())) {
      throw ConfigError("unknown field '" + item.key() + "' in " + where);
    }
  }
}

std::string param_value_text(const ParamValue& value) {
  if (const auto* i = std::get_if<std::int64_t>(&value)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&value)) return fmt_double(*d);
  return std::get<std::string>(value);
}

json param_value_json(const ParamValue& value) {
  if (const auto* i = std::get_if<std::int64_t>(&value)) return json(*i);
  if (const auto* d = std::get_if<double>(&value)) return json(*d);
  return json(std::get<std::string>(value));
}

ParamValue param_value_from_json(const json& value, const std::string& key) {
  if (value.is_number_integer() || value.is_number_unsigned()) {
    return ParamValue(value.get<std::int64_t>());
  }
  if (value.is_number_float()) return ParamValue(value.get<double>());
  if (value.is_string()) return ParamValue(value.get<std::string>());
  throw ConfigError("row parameter '" + key + "' must be a number or string");
}

}  // namespace

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::readout_voting:
      return "readout_voting";
    case ExperimentKind::projection_mitigation:
      return "projection_mitigation";
    case ExperimentKind::owqc_end_to_end:
      return "owqc_end_to_end";
    case ExperimentKind::analytic_sweep:
      return "analytic_sweep";
    case ExperimentKind::bernoulli_toy:
      return "bernoulli_toy";
  }
  return "?";
}

ExperimentKind kind_from_string(const std::string& name) {
  if (name == "readout_voting") return ExperimentKind::readout_voting;
  if (name == "projection_mitigation") return ExperimentKind::projection_mitigation;
  if (name == "owqc_end_to_end") return ExperimentKind::owqc_end_to_end;
  if (name == "analytic_sweep") return ExperimentKind::analytic_sweep;
  if (name == "bernoulli_toy") return ExperimentKind::bernoulli_toy;
  throw ConfigError("unknown experiment kind '" + name + "'");
}

std::string to_csv(const SweepTable& table) {
  std::ostringstream out;
  // Every row of a table shares one parameter set; the header comes from
  // the first row, in key (alphabetical) order.
  if (!table.rows.empty()) {
    for (const auto& [key, value] : table.rows.front().params) out << key << ',';
  }
  out << "value,sem,samples\n";
  for (const SweepRow& row : table.rows) {
    for (const auto& [key, value] : row.params) out << param_value_text(value) << ',';
    out << fmt_double(row.value) << ',' << fmt_double(row.sem) << ',' << row.samples << '\n';
  }
  return out.str();
}

std::string to_json(const SweepTable& table) {
  json doc;
  json meta;
  meta["schema"] = "sweep/1";
  meta["kind"] = table.metadata.kind;
  meta["config_hash"] = table.metadata.config_hash;
  meta["master_seed"] = table.metadata.master_seed;
  meta["code_version"] = table.metadata.code_version;
  meta["rng_algorithm"] = table.metadata.rng_algorithm;
  meta["runs"] = table.metadata.runs;
  meta["repetitions"] = table.metadata.repetitions;
  doc["metadata"] = meta;

  json rows = json::array();
  for (const SweepRow& row : table.rows) {
    json params;
    for (const auto& [key, value] : row.params) params[key] = param_value_json(value);
    json entry;
    entry["params"] = params;
    entry["value"] = row.value;
    entry["sem"] = row.sem;
    entry["n"] = row.samples;
    rows.push_back(entry);
  }
  doc["rows"] = rows;
  return doc.dump(2) + "\n";
}

SweepTable table_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("sweep table is not valid JSON: ") + e.what());
  }
  try {
    reject_unknown_keys(doc, {"metadata", "rows"}, "sweep document");
    SweepTable table;
    const json& meta = doc.at("metadata");
    reject_unknown_keys(meta,
                        {"schema", "kind", "config_hash", "master_seed", "code_version",
                         "rng_algorithm", "runs", "repetitions"},
                        "metadata");
    if (meta.at("schema").get<std::string>() != "sweep/1") {
      throw ConfigError("unsupported sweep schema '" + meta.at("schema").get<std::string>() + "'");
    }
    table.metadata.kind = meta.at("kind").get<std::string>();
    table.metadata.config_hash = meta.at("config_hash").get<std::string>();
    table.metadata.master_seed = meta.at("master_seed").get<std::uint64_t>();
    table.metadata.code_version = meta.at("code_version").get<std::string>();
    table.metadata.rng_algorithm = meta.at("rng_algorithm").get<std::string>();
    table.metadata.runs = meta.at("runs").get<int>();
    table.metadata.repetitions = meta.at("repetitions").get<int>();

    for (const json& entry : doc.at("rows")) {
      reject_unknown_keys(entry, {"params", "value", "sem", "n"}, "rows[]");
      SweepRow row;
      for (const auto& item : entry.at("params").items()) {
        row.params[item.key()] = param_value_from_json(item.value(), item.key());
      }
      row.value = entry.at("value").get<double>();
      row.sem = entry.at("sem").get<double>();
      row.samples = entry.at("n").get<std::uint64_t>();
      table.rows.push_back(row);
    }
    return table;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed sweep table: ") + e.what());
  }
}

std::string config_to_json(const ExperimentConfig& config) {
  json grid;
  grid["p"] = config.p_values;
  grid["r"] = config.r_values;
  grid["gamma"] = config.gamma_values;
  grid["register_sizes"] = config.register_sizes;
  grid["vote_counts"] = config.vote_counts;
  json topologies = json::array();
  for (auto kind : config.topologies) topologies.push_back(topology_name(kind));
  grid["topologies"] = topologies;
  grid["alpha"] = config.alphas;
  grid["q"] = config.q_values;

  json doc;
  doc["schema"] = "experiment/1";
  doc["kind"] = to_string(config.kind);
  doc["grid"] = grid;
  doc["runs"] = config.runs;
  doc["repetitions"] = config.repetitions;
  doc["master_seed"] = config.master_seed;
  doc["metric"] =
      config.metric == OwqcMetric::misidentification ? "misidentification" : "wrong_output";
  doc["mode"] = config.mode == owqc::MeasureMode::rotated ? "rotated" : "computational";
  if (config.calibration.has_value()) {
    doc["calibration"] = json::parse(config.calibration->to_json());
  }
  return doc.dump(2) + "\n";
}

ExperimentConfig config_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  try {
    reject_unknown_keys(doc,
                        {"schema", "kind", "grid", "runs", "repetitions", "master_seed", "metric",
                         "mode", "calibration"},
                        "config");
    if (doc.at("schema").get<std::string>() != "experiment/1") {
      throw ConfigError("unsupported config schema '" + doc.at("schema").get<std::string>() + "'");
    }
    ExperimentConfig config;
    config.kind = kind_from_string(doc.at("kind").get<std::string>());
    if (doc.contains("grid")) {
      const json& grid = doc.at("grid");
      reject_unknown_keys(
          grid, {"p", "r", "gamma", "register_sizes", "vote_counts", "topologies", "alpha", "q"},
          "grid");
      if (grid.contains("p")) config.p_values = grid.at("p").get<std::vector<double>>();
      if (grid.contains("r")) config.r_values = grid.at("r").get<std::vector<double>>();
      if (grid.contains("gamma")) config.gamma_values = grid.at("gamma").get<std::vector<double>>();
      if (grid.contains("register_sizes")) {
        config.register_sizes = grid.at("register_sizes").get<std::vector<int>>();
      }
      if (grid.contains("vote_counts")) {
        config.vote_counts = grid.at("vote_counts").get<std::vector<int>>();
      }
      if (grid.contains("topologies")) {
        config.topologies.clear();
        for (const json& name : grid.at("topologies")) {
          config.topologies.push_back(topology_from_name(name.get<std::string>()));
        }
      }
      if (grid.contains("alpha")) config.alphas = grid.at("alpha").get<std::vector<double>>();
      if (grid.contains("q")) config.q_values = grid.at("q").get<std::vector<double>>();
    }
    if (doc.contains("runs")) config.runs = doc.at("runs").get<int>();
    if (doc.contains("repetitions")) config.repetitions = doc.at("repetitions").get<int>();
    if (doc.contains("master_seed")) {
      config.master_seed = doc.at("master_seed").get<std::uint64_t>();
    }
    if (doc.contains("metric")) {
      const std::string metric = doc.at("metric").get<std::string>();
      if (metric == "misidentification") {
        config.metric = OwqcMetric::misidentification;
      } else if (metric == "wrong_output") {
        config.metric = OwqcMetric::wrong_output;
      } else {
        throw ConfigError("unknown metric '" + metric + "'");
      }
    }
    if (doc.contains("mode")) {
      const std::string mode = doc.at("mode").get<std::string>();
      if (mode == "rotated") {
        config.mode = owqc::MeasureMode::rotated;
      } else if (mode == "computational") {
        config.mode = owqc::MeasureMode::computational;
      } else {
        throw ConfigError("unknown mode '" + mode + "'");
      }
    }
    if (doc.contains("calibration")) {
      config.calibration = calib::CalibrationFile::from_json(doc.at("calibration").dump());
    }
    return config;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
}

std::string fnv1a64_hex(const std::string& text) {
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x00000100000001B3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, hash);
  return buf;
}

std::string config_hash_hex(const ExperimentConfig& config) {
  return fnv1a64_hex(config_to_json(config));
}

std::string report_to_json(const PredictionReport& report) {
  json doc;
  doc["schema"] = "prediction-report/1";
  doc["predictor"] = to_string(report.predictor);
  doc["pass_count"] = report.pass_count;
  doc["row_count"] = report.rows.size();
  doc["pass_fraction"] = report.pass_fraction;
  json rows = json::array();
  for (const PredictionRow& row : report.rows) {
    json entry;
    entry["row"] = row.row_index;
    entry["observed"] = row.observed;
    entry["predicted"] = row.predicted;
    entry["sem_used"] = row.sem_used;
    entry["z"] = std::isfinite(row.z) ? json(row.z) : json(row.z > 0 ? "inf" : "-inf");
    entry["pass"] = row.pass;
    rows.push_back(entry);
  }
  doc["rows"] = rows;
  return doc.dump(2) + "\n";
}

std::string report_to_text(const PredictionReport& report) {
  std::ostringstream out;
  out << "predictor: " << to_string(report.predictor) << "\n";
  for (const PredictionRow& row : report.rows) {
    out << "  row " << row.row_index << ": observed " << fmt_double(row.observed)
        << "  predicted " << fmt_double(row.predicted) << "  z " << fmt_double(row.z) << "  "
        << (row.pass ? "pass" : "FAIL") << "\n";
  }
  out << report.pass_count << "/" << report.rows.size() << " rows within 3 sigma ("
      << fmt_double(100.0 * report.pass_fraction) << "%)\n";
  return out.str();
}

}  // namespace qvote::mc
