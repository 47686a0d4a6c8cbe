#pragma once

#include <json.hpp>

#include <sstream>
#include <stdexcept>
#include <string>

#include "ordlab/graph.hpp"
#include "ordlab/samplers.hpp"
#include "ordlab/stats.hpp"
#include "ordlab/template.hpp"
#include "ordlab/verdict.hpp"

namespace ordlab {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Graphs.

inline Json graph_to_json(const Graph& g) {
  Json j;
  j["n"] = g.order();
  j["edges"] = Json::array();
  for (auto [u, v] : g.edges()) j["edges"].push_back({u, v});
  return j;
}

inline Graph graph_from_json(const Json& j) {
  Graph g(j.at("n").get<int>());
  for (const auto& e : j.at("edges"))
    g.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
  return g;
}

// ---------------------------------------------------------------------------
// Templates: {"vertices":[{"id":0,"full":true},...],"edges":[[0,1],...]}

inline Json template_to_json(const Template& t) {
  Json j;
  j["vertices"] = Json::array();
  for (int v = 0; v < t.order(); ++v)
    j["vertices"].push_back({{"id", v}, {"full", t.marks[v] == Mark::full}});
  j["edges"] = Json::array();
  for (auto [u, v] : t.base.edges()) j["edges"].push_back({u, v});
  return j;
}

inline Template template_from_json(const Json& j) {
  const auto& vertices = j.at("vertices");
  const int n = static_cast<int>(vertices.size());
  Graph g(n);
  std::vector<Mark> marks(n, Mark::empty);
  for (const auto& v : vertices) {
    const int id = v.at("id").get<int>();
    if (id < 0 || id >= n)
      throw std::invalid_argument("template json: vertex ids must be dense 0..n-1");
    marks[id] = v.at("full").get<bool>() ? Mark::full : Mark::empty;
  }
  for (const auto& e : j.at("edges"))
    g.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
  return make_template(std::move(g), std::move(marks));
}

// ---------------------------------------------------------------------------
// Sampler specifications.

inline Json sampler_spec_to_json(const SamplerSpec& spec) {
  Json j;
  j["kind"] = sampler_kind_name(spec.kind);
  j["alpha"] = spec.alpha ? Json(*spec.alpha) : Json("auto");
  j["epsilon"] = spec.epsilon ? Json(*spec.epsilon) : Json("auto");
  j["seed"] = spec.seed;
  if (spec.copy_pattern) j["copy_pattern"] = graph_to_json(*spec.copy_pattern);
  if (spec.kind == SamplerKind::double_broom) {
    j["broom"] = {{"path_len", spec.broom_path_len},
                  {"left_leaves", spec.broom_left_leaves},
                  {"right_leaves", spec.broom_right_leaves}};
  }
  if (spec.kind == SamplerKind::flower) j["petals"] = spec.flower_petals;
  return j;
}

inline SamplerSpec sampler_spec_from_json(const Json& j) {
  SamplerSpec spec;
  spec.kind = sampler_kind_from_name(j.at("kind").get<std::string>());
  if (j.contains("alpha") && !j["alpha"].is_string())
    spec.alpha = j["alpha"].get<double>();
  if (j.contains("epsilon") && !j["epsilon"].is_string())
    spec.epsilon = j["epsilon"].get<double>();
  if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("copy_pattern"))
    spec.copy_pattern = graph_from_json(j["copy_pattern"]);
  if (j.contains("broom")) {
    spec.broom_path_len = j["broom"].at("path_len").get<int>();
    spec.broom_left_leaves = j["broom"].at("left_leaves").get<int>();
    spec.broom_right_leaves = j["broom"].at("right_leaves").get<int>();
  }
  if (j.contains("petals")) spec.flower_petals = j["petals"].get<int>();
  return spec;
}

// ---------------------------------------------------------------------------
// Reports and verdicts.

inline Json test_report_to_json(const TestReport& r) {
  return Json{{"name", r.name},
              {"method", r.method},
              {"statistic", r.statistic},
              {"dof", r.dof},
              {"p_value", r.p_value},
              {"significance", r.significance},
              {"reject", r.reject},
              {"sample_size_a", r.sample_size_a},
              {"sample_size_b", r.sample_size_b},
              {"seed", r.seed}};
}

inline Json family_report_to_json(const FamilyReport& f) {
  Json j;
  j["family_significance"] = f.family_significance;
  j["family_reject"] = f.family_reject;
  j["min_p"] = f.min_p;
  j["tie_events"] = f.tie_events;
  j["test_count"] = f.tests.size();
  j["tests"] = Json::array();
  for (const auto& t : f.tests) j["tests"].push_back(test_report_to_json(t));
  return j;
}

inline std::string test_reports_to_csv(const std::vector<TestReport>& reports) {
  std::ostringstream out;
  out << "name,method,statistic,dof,p_value,significance,reject\n";
  for (const auto& r : reports) {
    std::string name = r.name;
    for (auto& c : name)
      if (c == ',') c = ';';
    out << name << "," << r.method << "," << r.statistic << "," << r.dof << ","
        << r.p_value << "," << r.significance << "," << (r.reject ? 1 : 0)
        << "\n";
  }
  return out.str();
}

inline Json verdict_to_json(const Verdict& v) {
  Json j;
  j["label"] = label_name(v.label);
  j["certificate"] = v.certificate;
  if (!v.direction.empty()) j["direction"] = v.direction;
  if (!v.witness_sampler.empty()) j["witness_sampler"] = v.witness_sampler;
  if (!v.witness_graph.empty()) j["witness_graph"] = v.witness_graph;
  if (!v.notes.empty()) j["notes"] = v.notes;
  return j;
}

inline Json distribution_to_json(const OrderingDistribution& d) {
  return Json{{"tuple", d.tuple},
              {"probabilities", d.probabilities},
              {"sample_count", d.sample_count},
              {"tie_events", d.tie_events}};
}

inline std::string distributions_to_csv(
    const std::vector<OrderingDistribution>& dists) {
  std::ostringstream out;
  out << "tuple,pattern_index,permutation,probability\n";
  for (const auto& d : dists) {
    std::ostringstream tuple;
    for (std::size_t i = 0; i < d.tuple.size(); ++i)
      tuple << (i ? " " : "") << d.tuple[i];
    for (std::size_t p = 0; p < d.probabilities.size(); ++p) {
      const auto perm =
          permutation_from_lex_index(static_cast<int>(d.tuple.size()),
                                     static_cast<int>(p));
      std::ostringstream perm_str;
      for (std::size_t i = 0; i < perm.size(); ++i)
        perm_str << (i ? " " : "") << perm[i];
      out << tuple.str() << "," << p << "," << perm_str.str() << ","
          << d.probabilities[p] << "\n";
    }
  }
  return out.str();
}

}  // namespace ordlab
