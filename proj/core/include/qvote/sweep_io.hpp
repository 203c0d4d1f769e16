// Copyright 2026, The qvote developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <string>

#include "qvote/experiment.hpp"

namespace qvote::mc {

/// CSV with a header row, UTF-8, '.' decimal separator. Probabilities are
/// printed with 17 significant digits so the binary doubles round-trip.
/// Columns are the row parameters in alphabetical order followed by
/// value, sem, samples.
std::string to_csv(const SweepTable& table);

/// JSON document {"schema": "sweep/1", "metadata": {...}, "rows":
/// [{"params": {...}, "value": v, "sem": s, "n": count}, ...]}. Keys are
/// emitted in sorted order and doubles in shortest-round-trip form, so equal
/// tables serialize to identical bytes.
std::string to_json(const SweepTable& table);

/// Inverse of to_json; the result compares equal to the table that produced
/// the document.
SweepTable table_from_json(const std::string& text);

/// Experiment configuration as JSON (schema "experiment/1"); strict parse,
/// unknown keys rejected.
std::string config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const std::string& text);

/// FNV-1a 64 of a string, as a 16-digit hex string.
std::string fnv1a64_hex(const std::string& text);

/// FNV-1a 64 over the canonical JSON form, as a 16-digit hex string.
std::string config_hash_hex(const ExperimentConfig& config);

std::string report_to_json(const PredictionReport& report);
std::string report_to_text(const PredictionReport& report);

const char* to_string(ExperimentKind kind);
ExperimentKind kind_from_string(const std::string& name);

}  // namespace qvote::mc
