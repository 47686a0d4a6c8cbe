// ordlab: construct, sample and statistically verify consistent random vertex
// orderings on graphs, templates and hereditary graph classes.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "ordlab/bernoulli.hpp"
#include "ordlab/classifier.hpp"
#include "ordlab/experiments.hpp"
#include "ordlab/graph_io.hpp"
#include "ordlab/io.hpp"
#include "ordlab/samplers.hpp"
#include "ordlab/stats.hpp"
#include "ordlab/template.hpp"
#include "ordlab/version.hpp"

namespace {

using namespace ordlab;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
    out << text;
  }
}

std::optional<double> parse_auto(const std::string& value, const char* flag) {
  if (value.empty() || value == "auto") return std::nullopt;
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string(flag) + " must be a number or 'auto'");
  }
}

struct CommonFlags {
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  std::string alpha = "auto";
  std::string epsilon = "auto";
  int kmax = 3;
  double significance = 1e-3;
  int threads = 1;
  std::string format = "json";
  std::string out_path;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_stats_flags = true) {
  cmd->add_option("--seed", f.seed, "root random seed (all randomness derives from it)");
  cmd->add_option("--samples", f.samples, "number of Monte Carlo draws");
  cmd->add_option("--alpha", f.alpha, "mod-1 target in [0,1), or 'auto'");
  cmd->add_option("--epsilon", f.epsilon, "spectral epsilon in (0, 1/max_degree), or 'auto'");
  if (with_stats_flags) {
    cmd->add_option("--kmax", f.kmax, "largest tuple size tested");
    cmd->add_option("--significance", f.significance, "family significance level");
  }
  cmd->add_option("--threads", f.threads, "worker threads (results do not depend on this)");
  cmd->add_option("--format", f.format, "output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", f.out_path, "write output to this path instead of stdout");
}

struct GraphInput {
  std::string edge_list_path;
  std::string graph6;
  int broom_path_len = 0, broom_left = 0, broom_right = 0;
  int petals = 0;
};

void add_graph_input(CLI::App* cmd, GraphInput& g) {
  cmd->add_option("--graph", g.edge_list_path, "edge-list file: 'n' then 'u v' per line");
  cmd->add_option("--graph6", g.graph6, "graph6 string (n <= 62)");
  cmd->add_option("--broom-path", g.broom_path_len, "double broom: central path length");
  cmd->add_option("--broom-left", g.broom_left, "double broom: leaves at the left end");
  cmd->add_option("--broom-right", g.broom_right, "double broom: leaves at the right end");
  cmd->add_option("--petals", g.petals, "flower: number of petals");
}

std::optional<Graph> load_graph(const GraphInput& g) {
  if (!g.edge_list_path.empty()) {
    std::vector<std::string> warnings;
    const Graph parsed = parse_edge_list(read_file(g.edge_list_path), &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    return parsed;
  }
  if (!g.graph6.empty()) return parse_graph6(g.graph6);
  return std::nullopt;
}

SamplerSpec build_spec(const std::string& kind, const CommonFlags& f,
                       const GraphInput& g, const std::string& copy_pattern_path,
                       const std::string& spec_path) {
  if (!spec_path.empty()) {
    SamplerSpec spec = sampler_spec_from_json(Json::parse(read_file(spec_path)));
    spec.seed = f.seed;
    return spec;
  }
  SamplerSpec spec;
  spec.kind = sampler_kind_from_name(kind);
  spec.alpha = parse_auto(f.alpha, "--alpha");
  spec.epsilon = parse_auto(f.epsilon, "--epsilon");
  spec.seed = f.seed;
  if (!copy_pattern_path.empty())
    spec.copy_pattern = parse_edge_list(read_file(copy_pattern_path));
  if (g.broom_path_len > 0) {
    spec.broom_path_len = g.broom_path_len;
    spec.broom_left_leaves = g.broom_left;
    spec.broom_right_leaves = g.broom_right;
  }
  if (g.petals > 0) spec.flower_petals = g.petals;
  return spec;
}

int cmd_sample(const CommonFlags& f, const GraphInput& gin,
               const std::string& kind, const std::string& copy_pattern_path,
               const std::string& spec_path) {
  const SamplerSpec spec = build_spec(kind, f, gin, copy_pattern_path, spec_path);
  const auto graph = load_graph(gin);
  const auto sampler = prepare_sampler(spec, graph ? &*graph : nullptr);
  const std::uint64_t n = f.samples ? f.samples : 10;
  std::ostringstream lines;
  Rng rng(derive_seed(f.seed, "sample"));
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto s = sampler.draw(rng);
    lines << Json(s.ordering.sequence()).dump() << "\n";
  }
  emit(lines.str(), f.out_path);
  return 0;
}

int cmd_verify(const CommonFlags& f, const GraphInput& gin,
               const std::string& kind, const std::string& mode,
               const std::string& copy_pattern_path,
               const std::string& distributions_csv) {
  const SamplerSpec spec = build_spec(kind, f, gin, copy_pattern_path, "");
  const auto graph = load_graph(gin);
  const auto sampler = prepare_sampler(spec, graph ? &*graph : nullptr);
  const std::uint64_t n = f.samples ? f.samples : 100000;

  FamilyReport family;
  if (mode == "consistency") {
    family = check_consistency(sampler, f.kmax, n, f.significance,
                               derive_seed(f.seed, "verify"), f.threads);
  } else if (mode == "uniformity") {
    family = check_uniformity(sampler, f.kmax, n, f.significance,
                              derive_seed(f.seed, "verify"), f.threads);
  } else {
    throw std::invalid_argument("--mode must be consistency or uniformity");
  }

  if (!distributions_csv.empty()) {
    const auto tuples = battery_subsets(
        sampler.graph.order(), f.kmax, derive_seed(f.seed, "verify"));
    std::vector<OrderingDistribution> dists;
    const auto counts = count_patterns(sampler, tuples, n,
                                       derive_seed(f.seed, "verify-dists"),
                                       f.threads, "verify-dists");
    for (std::size_t t = 0; t < tuples.size(); ++t) {
      OrderingDistribution d;
      d.tuple = tuples[t];
      d.sample_count = n;
      for (auto c : counts[t]) d.probabilities.push_back(double(c) / double(n));
      dists.push_back(std::move(d));
    }
    std::ofstream csv(distributions_csv);
    if (!csv) throw std::invalid_argument("cannot open " + distributions_csv);
    csv << distributions_to_csv(dists);
  }

  if (f.format == "csv") {
    emit(test_reports_to_csv(family.tests), f.out_path);
  } else {
    emit(family_report_to_json(family).dump(2), f.out_path);
  }
  return family.family_reject ? 1 : 0;
}

int cmd_classify(const CommonFlags& f, const std::string& forbidden_path,
                 const std::string& oracle_name, const std::string& template_path) {
  Verdict verdict;
  if (!forbidden_path.empty()) {
    verdict = classify_forbidden_family(parse_edge_list_blocks(read_file(forbidden_path)));
  } else if (!oracle_name.empty()) {
    verdict = classify_oracle(builtin_oracle(oracle_name));
  } else if (!template_path.empty()) {
    verdict = classify_template(template_from_json(Json::parse(read_file(template_path))));
  } else {
    throw std::invalid_argument(
        "classify needs one of --forbidden, --oracle or --template");
  }
  emit(verdict_to_json(verdict).dump(2), f.out_path);
  return 0;
}

int cmd_oracle(const CommonFlags& f, const std::string& which, int n, int k,
               int j, const std::string& alpha_str, double x,
               const std::string& order) {
  Json out;
  if (which == "bernoulli") {
    out["value"] = bernoulli_poly(n, x);
    out["formula_terms"] = {{"degree", n}, {"x", x}};
  } else if (which == "zeros") {
    out["value"] = bernoulli_zeros(n);
    out["formula_terms"] = {{"degree", n}};
  } else if (which == "addx") {
    const double alpha = parse_auto(alpha_str, "--alpha").value_or(0.0);
    const auto terms = addx_probability_terms(n, k, alpha, j);
    out["value"] = terms.value;
    out["formula_terms"] = {{"main", terms.main_term},
                            {"bernoulli_correction", terms.correction}};
  } else if (which == "edgedist") {
    const double alpha = parse_auto(alpha_str, "--alpha").value_or(0.0);
    const DeltaOrder d = order == "triple" ? DeltaOrder::triple : DeltaOrder::pair;
    const auto terms = edgedist_delta_terms(n, alpha, d);
    out["value"] = terms.value;
    out["formula_terms"] = {{"leading", terms.main_term},
                            {"second", terms.correction}};
  } else {
    throw std::invalid_argument("oracle needs bernoulli|zeros|addx|edgedist");
  }
  emit(out.dump(2), f.out_path);
  return 0;
}

int cmd_blowup_stats(const CommonFlags& f, const std::string& template_path,
                     const std::string& kind, int u, int v, int multiplicity,
                     int draws, bool ladder) {
  const Template tmpl =
      template_from_json(Json::parse(read_file(template_path)));
  std::vector<int> levels = ladder ? std::vector<int>{50, 100, 200}
                                   : std::vector<int>{multiplicity};
  Json out;
  out["template"] = template_to_json(tmpl);
  out["kind"] = kind;
  out["levels"] = Json::array();
  for (int level : levels) {
    const auto blown = blow_up(uniform_blow_up_spec(tmpl, level), 1 << 20);
    SamplerSpec spec;
    spec.kind = sampler_kind_from_name(kind);
    spec.alpha = parse_auto(f.alpha, "--alpha");
    spec.epsilon = parse_auto(f.epsilon, "--epsilon");
    const auto sampler = prepare_sampler(spec, &blown.graph);
    const auto stats = estimate_blowup_statistics(
        sampler, blown.blocks, u, v, draws,
        derive_seed(f.seed, "blowup-stats", level), f.threads);
    const auto ffi = check_inverse_and_ffi(stats.f_uv, stats.f_vu, 0.02);
    double v_mean = 0.0;
    for (double s : stats.v_uv) v_mean += s;
    v_mean /= double(stats.v_uv.size());
    Json level_json;
    level_json["multiplicity"] = level;
    level_json["draws"] = draws;
    level_json["ks_u_p_value"] = ks_report(stats.u_samples, 2000).p_value;
    level_json["ks_v_p_value"] = ks_report(stats.v_uv, 2000).p_value;
    level_json["v_mean"] = v_mean;
    level_json["moment_functional"] = ffi.moment_functional;
    level_json["inverse_sup_distance"] = ffi.sup_distance;
    level_json["ffi_inequality_ok"] = ffi.inequality_ok;
    out["levels"].push_back(level_json);
  }
  emit(out.dump(2), f.out_path);
  return 0;
}

int cmd_repro(const CommonFlags& f, const std::string& name) {
  ExperimentConfig cfg;
  cfg.seed = f.seed;
  cfg.samples = f.samples;
  cfg.significance = f.significance;
  cfg.threads = f.threads;
  const auto started = std::chrono::steady_clock::now();
  const auto outcome = run_experiment(name, cfg);
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - started);
  emit(outcome.to_json(cfg).dump(2), f.out_path);
  std::cerr << "repro " << name << (outcome.pass() ? " PASS" : " FAIL")
            << " in " << elapsed.count() << " ms\n";
  return outcome.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"consistent random vertex orderings: samplers, oracles and verification"};
  app.set_version_flag("--version", ordlab::kVersion);
  app.require_subcommand(1);

  CommonFlags f;
  GraphInput gin;
  std::string kind = "uniform", mode = "uniformity";
  std::string copy_pattern_path, spec_path, forbidden_path, oracle_name,
      template_path, distributions_csv;

  auto* sample = app.add_subcommand("sample", "emit orderings, one JSON array per line");
  add_common(sample, f, false);
  add_graph_input(sample, gin);
  sample->add_option("--kind", kind, "sampler kind");
  sample->add_option("--copy-pattern", copy_pattern_path, "edge-list file for H (disjoint_copies)");
  sample->add_option("--spec", spec_path, "sampler specification JSON file");

  auto* verify = app.add_subcommand("verify", "consistency / uniformity test batteries");
  add_common(verify, f);
  add_graph_input(verify, gin);
  verify->add_option("--kind", kind, "sampler kind");
  verify->add_option("--mode", mode, "consistency or uniformity")
      ->check(CLI::IsMember({"consistency", "uniformity"}));
  verify->add_option("--copy-pattern", copy_pattern_path, "edge-list file for H");
  verify->add_option("--distributions-csv", distributions_csv,
                     "also write the empirical ordering distributions as CSV");

  auto* classify = app.add_subcommand("classify", "uniformity verdicts for hereditary classes");
  add_common(classify, f, false);
  classify->add_option("--forbidden", forbidden_path,
                       "file of edge-list blocks (blank-line separated)");
  classify->add_option("--oracle", oracle_name,
                       "builtin: forests|triangle-free|bipartite|planar|bounded-degree:D|flowers");
  classify->add_option("--template", template_path, "template JSON file");

  auto* oracle = app.add_subcommand("oracle", "closed-form probability evaluations");
  std::string which;
  int o_n = 2, o_k = 1, o_j = 1;
  double o_x = 0.0;
  std::string o_order = "pair";
  oracle->add_option("what", which, "bernoulli|zeros|addx|edgedist")->required();
  oracle->add_option("--n", o_n, "degree / variable count");
  oracle->add_option("--k", o_k, "order-statistic index");
  oracle->add_option("--j", o_j, "number of extra uniforms (1 or 2)");
  oracle->add_option("--x", o_x, "evaluation point for bernoulli");
  oracle->add_option("--order", o_order, "pair or triple (edgedist)");
  add_common(oracle, f, false);

  auto* blowup = app.add_subcommand("blowup-stats", "exchangeable-limit statistics on blow-ups");
  add_common(blowup, f, false);
  std::string blowup_template;
  int b_u = 0, b_v = 1, b_mult = 200, b_draws = 500;
  bool b_ladder = false;
  blowup->add_option("--template", blowup_template, "template JSON file")->required();
  blowup->add_option("--kind", kind, "sampler kind over the blow-up");
  blowup->add_option("--u", b_u, "first template vertex");
  blowup->add_option("--v", b_v, "second template vertex");
  blowup->add_option("--multiplicity", b_mult, "copies per template vertex");
  blowup->add_option("--draws", b_draws, "ordering draws");
  blowup->add_flag("--ladder", b_ladder, "run the 50/100/200 truncation ladder");

  auto* repro = app.add_subcommand("repro", "named experiments with pinned acceptance checks");
  std::string repro_name;
  std::string names_help;
  for (const auto& n : ordlab::experiment_names()) names_help += n + " ";
  repro->add_option("name", repro_name, "one of: " + names_help)->required();
  add_common(repro, f);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sample) return cmd_sample(f, gin, kind, copy_pattern_path, spec_path);
    if (*verify)
      return cmd_verify(f, gin, kind, mode, copy_pattern_path, distributions_csv);
    if (*classify) return cmd_classify(f, forbidden_path, oracle_name, template_path);
    if (*oracle) return cmd_oracle(f, which, o_n, o_k, o_j, f.alpha, o_x, o_order);
    if (*blowup)
      return cmd_blowup_stats(f, blowup_template, kind, b_u, b_v, b_mult,
                              b_draws, b_ladder);
    if (*repro) return cmd_repro(f, repro_name);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
