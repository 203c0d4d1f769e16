// Copyright 2026, The qvote developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qvote/calibration.hpp"

#include <doctest.h>

#include "qvote/regimes.hpp"
#include "qvote/voting.hpp"

using namespace qvote::calib;
using qvote::analytics::CnotError;
using qvote::analytics::FanoutKind;
using qvote::analytics::ReadoutError;
using qvote::analytics::RegimeLabel;

namespace {

constexpr const char* kGoodCalib = R"({
  "schema": "calib/1",
  "qubits": [
    {"id": 0, "readout_error": 0.1},
    {"id": 1, "readout_error": 0.01, "projection_error": 0.02},
    {"id": 2, "readout_error": 0.02}
  ],
  "cnot_pairs": [
    {"control_id": 0, "target_id": 1, "gamma": 0.004},
    {"control_id": 1, "target_id": 2, "gamma": 0.01},
    {"control_id": 0, "target_id": 2, "gamma": 0.002}
  ]
})";

}  // namespace

TEST_CASE("calibration parses and round trips") {
  const CalibrationFile calib = CalibrationFile::from_json(kGoodCalib);
  REQUIRE(calib.qubits.size() == 3);
  CHECK(calib.qubits[1].projection_error == 0.02);
  CHECK(calib.qubits[0].projection_error == 0.0);  // defaulted
  REQUIRE(calib.cnot_pairs.size() == 3);
  const CalibrationFile again = CalibrationFile::from_json(calib.to_json());
  CHECK(again.qubits.size() == 3);
  CHECK(again.cnot_pairs[2].gamma == 0.002);
}

TEST_CASE("calibration schema is strict") {
  CHECK_THROWS_AS(CalibrationFile::from_json("not json"), SchemaError);
  CHECK_THROWS_AS(CalibrationFile::from_json(R"({"qubits": []})"), SchemaError);
  CHECK_THROWS_AS(CalibrationFile::from_json(R"({"schema": "calib/2", "qubits": []})"),
                  SchemaError);
  CHECK_THROWS_AS(CalibrationFile::from_json(R"({"schema": "calib/1", "qubits": []})"),
                  SchemaError);
  // unknown field
  CHECK_THROWS_AS(CalibrationFile::from_json(
                      R"({"schema": "calib/1", "qubits": [{"id": 0, "readout_error": 0.1, "t1": 80}]})"),
                  SchemaError);
  // duplicate id
  CHECK_THROWS_AS(CalibrationFile::from_json(
                      R"({"schema": "calib/1", "qubits": [{"id": 0, "readout_error": 0.1},
                                                          {"id": 0, "readout_error": 0.2}]})"),
                  SchemaError);
  // rate out of range
  CHECK_THROWS_AS(CalibrationFile::from_json(
                      R"({"schema": "calib/1", "qubits": [{"id": 0, "readout_error": 1.4}]})"),
                  SchemaError);
  // pair references a missing qubit
  CHECK_THROWS_AS(CalibrationFile::from_json(
                      R"({"schema": "calib/1", "qubits": [{"id": 0, "readout_error": 0.1}],
                          "cnot_pairs": [{"control_id": 0, "target_id": 3, "gamma": 0.01}]})"),
                  SchemaError);
}

TEST_CASE("median gamma per qubit") {
  const CalibrationFile calib = CalibrationFile::from_json(kGoodCalib);
  CHECK(calib.median_gamma_for(0) == doctest::Approx(0.003));  // {0.004, 0.002}
  CHECK(calib.median_gamma_for(1) == doctest::Approx(0.007));  // {0.004, 0.010}
  CHECK(calib.median_gamma_for(2) == doctest::Approx(0.006));  // {0.010, 0.002}
  CalibrationFile no_pairs;
  no_pairs.qubits.push_back({5, 0.1, 0.0});
  CHECK(no_pairs.median_gamma_for(5) == 0.0);
}

TEST_CASE("recommendation reproduces the small-register example") {
  CalibrationFile calib;
  calib.qubits.push_back({0, 0.1, 0.0});
  const Recommendation rec = recommend(calib, 0.05, FanoutKind::log_depth);
  REQUIRE(rec.qubits.size() == 1);
  CHECK(rec.qubits[0].worst_case_rate == doctest::Approx(0.1));
  CHECK(rec.qubits[0].recommended_n == 3);
  CHECK(rec.qubits[0].predicted_eps == doctest::Approx(0.028).epsilon(1e-12));
  CHECK(rec.qubits[0].meets_target);
  CHECK(rec.qubits[0].regime == RegimeLabel::immediate_improvement);
}

TEST_CASE("deep targets couple the register size to the effective error") {
  CalibrationFile calib;
  calib.qubits.push_back({0, 0.01, 0.0});
  calib.qubits.push_back({1, 0.01, 0.0});
  calib.cnot_pairs.push_back({0, 1, 0.01});
  const Recommendation rec = recommend(calib, 1e-20, FanoutKind::log_depth);
  REQUIRE(rec.qubits.size() == 2);
  const QubitRecommendation& qubit = rec.qubits[0];
  // Fixed point of N -> required N at the accumulated rate: lands in the
  // low sixties with an effective per-vote error near 6-7%.
  CHECK(qubit.recommended_n >= 57);
  CHECK(qubit.recommended_n <= 71);
  CHECK(qubit.meets_target);
  CHECK(qubit.predicted_eps <= 1e-20);
  const double eff = qvote::analytics::effective_error(ReadoutError(0.01), CnotError(0.01),
                                                       qvote::analytics::VoteCount(qubit.recommended_n))
                         .rate;
  CHECK(eff > 0.055);
  CHECK(eff < 0.08);
  // The sizing must be self-consistent: the recommended N reaches the
  // target at its own effective rate, the next smaller register does not.
  CHECK(qvote::analytics::misid_prob(qvote::analytics::VoteCount(qubit.recommended_n),
                                     ReadoutError(eff)) <= 1e-20);
}

TEST_CASE("hopeless gamma lands in regime I with a single vote") {
  CalibrationFile calib;
  calib.qubits.push_back({0, 0.05, 0.0});
  calib.qubits.push_back({1, 0.05, 0.0});
  calib.cnot_pairs.push_back({0, 1, 0.3});  // far above any critical gamma
  const Recommendation rec = recommend(calib, 0.01, FanoutKind::log_depth);
  CHECK(rec.qubits[0].regime == RegimeLabel::no_improvement);
  CHECK(rec.qubits[0].recommended_n == 1);
  CHECK(rec.qubits[0].predicted_eps == doctest::Approx(0.05));
  CHECK_FALSE(rec.qubits[0].meets_target);
}

TEST_CASE("linear fan-out sizing uses the depth-one rate") {
  CalibrationFile calib;
  calib.qubits.push_back({0, 0.05, 0.0});
  calib.qubits.push_back({1, 0.05, 0.0});
  calib.cnot_pairs.push_back({0, 1, 0.02});
  const Recommendation rec = recommend(calib, 1e-6, FanoutKind::linear);
  const QubitRecommendation& qubit = rec.qubits[0];
  const double rate = 0.05 + 0.02 - 2 * 0.05 * 0.02;
  CHECK(qubit.recommended_n ==
        qvote::analytics::required_n_exact(1e-6, ReadoutError(rate)).value);
  CHECK(qubit.meets_target);
}

TEST_CASE("trivial targets and broken qubits") {
  CalibrationFile calib;
  calib.qubits.push_back({0, 0.0, 0.0});   // perfect
  calib.qubits.push_back({1, 0.75, 0.0});  // worse than a coin flip
  const Recommendation rec = recommend(calib, 0.01, FanoutKind::log_depth);
  CHECK(rec.qubits[0].recommended_n == 1);
  CHECK(rec.qubits[0].predicted_eps == 0.0);
  CHECK(rec.qubits[0].meets_target);
  CHECK(rec.qubits[1].recommended_n == 1);
  CHECK(rec.qubits[1].regime == RegimeLabel::no_improvement);
  CHECK_FALSE(rec.qubits[1].meets_target);
  CHECK_THROWS_AS(recommend(calib, 0.0, FanoutKind::log_depth), std::domain_error);
}

TEST_CASE("recommendation serializes to JSON and text") {
  const CalibrationFile calib = CalibrationFile::from_json(kGoodCalib);
  const Recommendation rec = recommend(calib, 1e-4, FanoutKind::log_depth);
  const std::string json_text = recommendation_to_json(rec);
  CHECK(json_text.find("recommendation/1") != std::string::npos);
  CHECK(json_text.find("\"regime\"") != std::string::npos);
  const std::string text = recommendation_to_text(rec);
  CHECK(text.find("qubit") != std::string::npos);
}
