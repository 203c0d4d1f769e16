// Copyright 2026, The qvote developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qvote/calibration.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qvote/voting.hpp"

namespace qvote::calib {

namespace {

using nlohmann::json;

using analytics::CnotError;
using analytics::FanoutKind;
using analytics::ReadoutError;
using analytics::RegimeLabel;
using analytics::VoteCount;

void require_rate(double v, const std::string& where) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw SchemaError(where + ": rate " + std::to_string(v) + " outside [0, 1]");
  }
}

void reject_unknown(const json& object, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (const auto& item : object.items()) {
    if (!allowed.contains(item.key())) {
      throw SchemaError("unknown field '" + item.key() + "' in " + where);
    }
  }
}

double fanout_rate(FanoutKind fanout, double base, double gamma, int n) {
  if (n == 1) return base;
  if (fanout == FanoutKind::linear) return base + gamma - 2.0 * base * gamma;
  return analytics::effective_error(ReadoutError(base), CnotError(gamma), VoteCount(n)).rate;
}

}  // namespace

CalibrationFile CalibrationFile::from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("calibration is not valid JSON: ") + e.what());
  }
  try {
    reject_unknown(doc, {"schema", "qubits", "cnot_pairs"}, "calibration");
    if (!doc.contains("schema") || doc.at("schema").get<std::string>() != "calib/1") {
      throw SchemaError("calibration must declare \"schema\": \"calib/1\"");
    }
    CalibrationFile calib;
    std::set<int> seen_ids;
    for (const json& entry : doc.at("qubits")) {
      reject_unknown(entry, {"id", "readout_error", "projection_error"}, "qubits[]");
      QubitCalibration qubit;
      qubit.id = entry.at("id").get<int>();
      qubit.readout_error = entry.at("readout_error").get<double>();
      if (entry.contains("projection_error")) {
        qubit.projection_error = entry.at("projection_error").get<double>();
      }
      require_rate(qubit.readout_error, "qubits[].readout_error");
      require_rate(qubit.projection_error, "qubits[].projection_error");
      if (!seen_ids.insert(qubit.id).second) {
        throw SchemaError("duplicate qubit id " + std::to_string(qubit.id));
      }
      calib.qubits.push_back(qubit);
    }
    if (calib.qubits.empty()) {
      throw SchemaError("calibration lists no qubits");
    }
    if (doc.contains("cnot_pairs")) {
      for (const json& entry : doc.at("cnot_pairs")) {
        reject_unknown(entry, {"control_id", "target_id", "gamma"}, "cnot_pairs[]");
        CnotCalibration pair;
        pair.control_id = entry.at("control_id").get<int>();
        pair.target_id = entry.at("target_id").get<int>();
        pair.gamma = entry.at("gamma").get<double>();
        require_rate(pair.gamma, "cnot_pairs[].gamma");
        if (!seen_ids.contains(pair.control_id) || !seen_ids.contains(pair.target_id)) {
          throw SchemaError("cnot pair (" + std::to_string(pair.control_id) + ", " +
                            std::to_string(pair.target_id) + ") names an unlisted qubit");
        }
        calib.cnot_pairs.push_back(pair);
      }
    }
    return calib;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed calibration: ") + e.what());
  }
}

std::string CalibrationFile::to_json() const {
  json doc;
  doc["schema"] = "calib/1";
  json qubit_list = json::array();
  for (const QubitCalibration& qubit : qubits) {
    json entry;
    entry["id"] = qubit.id;
    entry["readout_error"] = qubit.readout_error;
    entry["projection_error"] = qubit.projection_error;
    qubit_list.push_back(entry);
  }
  doc["qubits"] = qubit_list;
  json pair_list = json::array();
  for (const CnotCalibration& pair : cnot_pairs) {
    json entry;
    entry["control_id"] = pair.control_id;
    entry["target_id"] = pair.target_id;
    entry["gamma"] = pair.gamma;
    pair_list.push_back(entry);
  }
  doc["cnot_pairs"] = pair_list;
  return doc.dump(2);
}

double CalibrationFile::median_gamma_for(int qubit_id) const {
  std::vector<double> gammas;
  for (const CnotCalibration& pair : cnot_pairs) {
    if (pair.control_id == qubit_id || pair.target_id == qubit_id) {
      gammas.push_back(pair.gamma);
    }
  }
  if (gammas.empty()) return 0.0;
  std::sort(gammas.begin(), gammas.end());
  const std::size_t mid = gammas.size() / 2;
  return gammas.size() % 2 == 1 ? gammas[mid] : 0.5 * (gammas[mid - 1] + gammas[mid]);
}

Recommendation recommend(const CalibrationFile& calibration, double eps, FanoutKind fanout,
                         int n_cap) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::domain_error("recommend: eps must lie in (0, 1)");
  }
  Recommendation rec;
  rec.target_eps = eps;
  rec.fanout = fanout;

  for (const QubitCalibration& qubit : calibration.qubits) {
    QubitRecommendation out;
    out.qubit_id = qubit.id;
    const double base =
        qubit.readout_error + qubit.projection_error - 2.0 * qubit.readout_error * qubit.projection_error;
    out.worst_case_rate = base;
    out.median_gamma = calibration.median_gamma_for(qubit.id);

    if (base == 0.0) {
      out.recommended_n = 1;
      out.predicted_eps = 0.0;
      out.meets_target = true;
      out.regime = RegimeLabel::immediate_improvement;
      rec.qubits.push_back(out);
      continue;
    }
    if (base >= 0.5) {
      // The vote assumption (better than a coin flip) is gone.
      out.recommended_n = 1;
      out.predicted_eps = base;
      out.meets_target = false;
      out.regime = RegimeLabel::no_improvement;
      rec.qubits.push_back(out);
      continue;
    }

    out.regime = analytics::classify_regime(ReadoutError(base), CnotError(out.median_gamma),
                                            VoteCount(1001), fanout);

    // The register size feeds back into the per-vote rate, so iterate the
    // monotone map N -> required N at the effective rate until it settles.
    int n = 1;
    bool reachable = eps >= base;
    if (!reachable) {
      try {
        n = analytics::required_n_exact(eps, ReadoutError(base), n_cap).value;
        reachable = true;
        for (int iter = 0; iter < 50; ++iter) {
          const double rate = fanout_rate(fanout, base, out.median_gamma, n);
          if (rate >= 0.5) {
            reachable = false;
            break;
          }
          const int next = analytics::required_n_exact(eps, ReadoutError(rate), n_cap).value;
          if (next == n) break;
          n = next;
        }
      } catch (const analytics::CapExceeded&) {
        reachable = false;
      }
    }

    if (reachable) {
      out.recommended_n = n;
      const double rate = fanout_rate(fanout, base, out.median_gamma, n);
      out.predicted_eps = analytics::misid_prob(VoteCount(n), ReadoutError(rate));
      out.meets_target = out.predicted_eps <= eps;
    } else {
      // Target out of reach: report the best the register can do instead.
      int best = 1;
      double best_eps = base;
      for (int candidate = 3; candidate <= 101; candidate += 2) {
        const double rate = fanout_rate(fanout, base, out.median_gamma, candidate);
        const double value = analytics::misid_prob(VoteCount(candidate), ReadoutError(rate));
        if (value < best_eps) {
          best_eps = value;
          best = candidate;
        }
      }
      out.recommended_n = best;
      out.predicted_eps = best_eps;
      out.meets_target = false;
    }
    rec.qubits.push_back(out);
  }
  return rec;
}

std::string recommendation_to_json(const Recommendation& rec) {
  json doc;
  doc["schema"] = "recommendation/1";
  doc["target_eps"] = rec.target_eps;
  doc["topology"] = rec.fanout == FanoutKind::linear ? "linear" : "log_depth";
  json rows = json::array();
  for (const QubitRecommendation& qubit : rec.qubits) {
    json entry;
    entry["qubit_id"] = qubit.qubit_id;
    entry["worst_case_rate"] = qubit.worst_case_rate;
    entry["median_gamma"] = qubit.median_gamma;
    entry["recommended_n"] = qubit.recommended_n;
    entry["predicted_eps"] = qubit.predicted_eps;
    entry["meets_target"] = qubit.meets_target;
    entry["regime"] = analytics::to_string(qubit.regime);
    rows.push_back(entry);
  }
  doc["qubits"] = rows;
  return doc.dump(2) + "\n";
}

std::string recommendation_to_text(const Recommendation& rec) {
  std::ostringstream out;
  char line[160];
  out << "target eps " << rec.target_eps << ", "
      << (rec.fanout == FanoutKind::linear ? "linear" : "log-depth") << " fan-out\n";
  out << "qubit  rate      gamma     N     predicted eps  regime  target\n";
  for (const QubitRecommendation& qubit : rec.qubits) {
    std::snprintf(line, sizeof(line), "%-6d %-9.3g %-9.3g %-5d %-14.4g %-7s %s\n", qubit.qubit_id,
                  qubit.worst_case_rate, qubit.median_gamma, qubit.recommended_n,
                  qubit.predicted_eps, analytics::to_string(qubit.regime),
                  qubit.meets_target ? "met" : "not met");
    out << line;
  }
  return out.str();
}

}  // namespace qvote::calib
