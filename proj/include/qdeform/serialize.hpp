#pragma once

// JSON views of the report types. Key names are part of the external
// interface; nlohmann::json keeps object keys sorted, so serialized
// output is byte-stable for identical inputs.

#include <json.hpp>

#include "qdeform/qcompat.hpp"
#include "qdeform/qint.hpp"
#include "qdeform/qmetric.hpp"
#include "qdeform/verify.hpp"

namespace qdeform {

inline void to_json(nlohmann::json& j, const QSReport& r) {
  j = nlohmann::json{{"convention", r.convention},
                     {"max_ratio", r.max_ratio},
                     {"witness", r.witness},
                     {"samples", r.samples},
                     {"seed", r.seed}};
}

inline void to_json(nlohmann::json& j, const BoxCountReport& r) {
  j = nlohmann::json{{"epsilon", r.epsilon},
                     {"scales", r.scales},
                     {"counts", r.counts},
                     {"dimension", r.dimension},
                     {"residual", r.residual}};
}

inline void to_json(nlohmann::json& j, const EtaRow& r) {
  j = nlohmann::json{{"t", r.t}, {"eta", r.eta_hat}};
}

inline void to_json(nlohmann::json& j, const EquivalenceReport& r) {
  j = nlohmann::json{{"q_grid", r.q_grid},
                     {"samples_per_q", r.samples_per_q},
                     {"seed", r.seed},
                     {"max_rel_deviation", r.max_rel_deviation},
                     {"witness",
                      {{"q", r.worst_q}, {"x", r.worst_x}, {"y", r.worst_y}}}};
}

inline void to_json(nlohmann::json& j, const ErratumRow& r) {
  j = nlohmann::json{{"n", r.n},
                     {"printed", r.printed},
                     {"actual", r.actual},
                     {"diverges", r.diverges}};
}

inline void to_json(nlohmann::json& j, const ErratumReport& r) {
  j = nlohmann::json{
      {"q", to_string(r.q)},
      {"n_max", r.n_max},
      {"corrected_recursion_matches", r.corrected_recursion_matches},
      {"discriminant_matches", r.discriminant_matches},
      {"roots", {to_string(r.root_large), to_string(r.root_small)}},
      {"constants", {to_string(r.c1), to_string(r.c2)}},
      {"closed_form_matches", r.closed_form_matches},
      {"printed_recursion_first_divergence",
       r.printed_recursion_first_divergence},
      {"printed_rows", r.printed_rows},
      {"printed_first_divergence", r.printed_first_divergence},
      {"passed", r.passed()}};
}

inline void to_json(nlohmann::json& j, const CheckResult& r) {
  j = nlohmann::json{{"name", r.name},
                     {"passed", r.passed},
                     {"max_deviation", r.max_deviation},
                     {"witness", r.witness}};
}

inline void to_json(nlohmann::json& j, const SuiteReport& r) {
  nlohmann::json config{{"q", r.q_config}};
  config["seed"] = r.seed ? nlohmann::json(*r.seed) : nlohmann::json();
  config["samples"] = r.samples ? nlohmann::json(*r.samples) : nlohmann::json();
  config["tol"] = r.tol ? nlohmann::json(*r.tol) : nlohmann::json();
  j = nlohmann::json{{"suite", r.suite},
                     {"passed", r.passed},
                     {"config", config},
                     {"checks", r.checks}};
}

}  // namespace qdeform
