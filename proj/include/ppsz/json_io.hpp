#pragma once

// JSON records for CLI output. Objects use nlohmann::json's default
// (sorted) key order, so serialization is deterministic.

#include <json.hpp>

#include <string>

#include "ppsz/cnf.hpp"
#include "ppsz/dppsz.hpp"
#include "ppsz/frozen_tree.hpp"
#include "ppsz/general_solver.hpp"
#include "ppsz/modify.hpp"

namespace ppsz {

using Json = nlohmann::json;

/// DIMACS literals sorted by variable.
inline Json to_json(const Assignment& a) {
  Json out = Json::array();
  for (Literal l : a.sorted_literals()) out.push_back(l.to_dimacs());
  return out;
}

inline Json to_json(const Clause& c) {
  Json out = Json::array();
  for (Literal l : c) out.push_back(l.to_dimacs());
  return out;
}

inline Json to_json(const GuessProfile& p) {
  Json steps = Json::array();
  for (const auto& s : p.steps)
    steps.push_back({{"var", s.var.index}, {"literal", s.literal.to_dimacs()}, {"provenance", to_string(s.provenance)}});
  return {{"G", p.guesses()}, {"steps", steps}};
}

inline Json to_json(const TrialRecord& t) {
  Json j;
  j["sigma_index"] = t.sigma_index;
  j["beta"] = t.beta.str();
  j["result"] = t.result.ok() ? to_json(*t.result.assignment) : Json(nullptr);
  j["status"] = to_string(t.result.status);
  j["bits_used"] = t.result.bits_used;
  j["guess_profile"] = to_json(t.result.profile);
  return j;
}

inline Json to_json(const DppszResult& r) {
  Json j;
  j["status"] = to_string(r.status);
  j["solution"] = r.solution ? to_json(*r.solution) : Json(nullptr);
  j["round"] = r.round;
  j["modify_calls"] = r.modify_calls;
  j["calls_per_round"] = r.calls_per_round;
  j["sigma_size"] = r.sigma_size;
  j["max_round"] = r.max_round;
  return j;
}

inline Json to_json(const InstanceStats& s) {
  return {{"i", s.i},
          {"combinations_tried", s.combinations_tried},
          {"skipped", s.skipped},
          {"modify_calls", s.modify_calls},
          {"cutoff", s.cutoff},
          {"cutoff_exponent", s.cutoff_exponent},
          {"tau", s.tau},
          {"kwise", s.kwise},
          {"sigma_size", s.sigma_size},
          {"finished", s.finished}};
}

inline Json tree_to_json(const FrozenTree& t, std::size_t v = 0) {
  Json j;
  j["label"] = is_kappa(t[v].label) ? Json("kappa") : Json(t[v].label.index);
  j["clause"] = t[v].clause ? to_json(*t[v].clause) : Json(nullptr);
  j["depth"] = t[v].depth;
  Json ch = Json::array();
  for (std::size_t c : t[v].children) ch.push_back(tree_to_json(t, c));
  j["children"] = ch;
  return j;
}

inline Json to_json(const TreeReport& r) {
  Json props = Json::object();
  for (std::size_t i = 0; i < r.property.size(); ++i) props[std::to_string(i + 1)] = r.property[i];
  return {{"properties", props},
          {"all_pass", r.all_pass()},
          {"failures", r.failures},
          {"vertices", r.vertices},
          {"distinct_labels", r.distinct_labels},
          {"cuts_checked", r.cuts_checked},
          {"expected_depth", r.expected_depth}};
}

}  // namespace ppsz
