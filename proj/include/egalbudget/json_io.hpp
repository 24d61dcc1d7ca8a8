// JSON (de)serialization for instances and distributions.
//
// Instance: {"m": <int>, "agents": [[<project-index>...], ...]}
// Distribution: array of m numbers.
// Numbers are emitted with 12 significant digits.
#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "egalbudget/core.hpp"

namespace egb {

inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

inline nlohmann::json number_json(double v) {
  // Round-trip through the 12-significant-digit text form so that dumped
  // output matches the documented precision.
  return nlohmann::json::parse(format_number(v));
}

inline Instance parse_instance(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("instance JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("m") || !j.contains("agents"))
    throw InputError("instance JSON must be an object with keys \"m\" and \"agents\"");
  if (!j["m"].is_number_integer())
    throw InputError("instance JSON: \"m\" must be an integer");
  if (!j["agents"].is_array())
    throw InputError("instance JSON: \"agents\" must be an array of index arrays");
  std::vector<std::vector<int>> approvals;
  for (const auto& row : j["agents"]) {
    if (!row.is_array())
      throw InputError("instance JSON: each agent entry must be an array of project indices");
    std::vector<int> a;
    for (const auto& v : row) {
      if (!v.is_number_integer())
        throw InputError("instance JSON: project indices must be integers");
      a.push_back(v.get<int>());
    }
    approvals.push_back(std::move(a));
  }
  return Instance(j["m"].get<int>(), std::move(approvals));
}

inline std::string serialize_instance(const Instance& inst) {
  nlohmann::json agents = nlohmann::json::array();
  for (int i = 0; i < inst.num_agents(); ++i)
    agents.push_back(inst.approval_set(i));
  nlohmann::json j{{"m", inst.num_projects()}, {"agents", agents}};
  return j.dump();
}

inline Distribution parse_distribution(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("distribution JSON: ") + e.what());
  }
  if (!j.is_array()) throw InputError("distribution JSON must be an array of numbers");
  std::vector<double> x;
  for (const auto& v : j) {
    if (!v.is_number()) throw InputError("distribution JSON entries must be numbers");
    x.push_back(v.get<double>());
  }
  return Distribution(std::move(x));
}

inline nlohmann::json distribution_json(const Distribution& x) {
  nlohmann::json arr = nlohmann::json::array();
  for (int j = 0; j < x.size(); ++j) arr.push_back(number_json(x[j]));
  return arr;
}

inline std::string serialize_distribution(const Distribution& x) {
  return distribution_json(x).dump();
}

}  // namespace egb
