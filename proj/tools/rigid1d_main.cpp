#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "rigid1d/certify.hpp"
#include "rigid1d/embedding.hpp"
#include "rigid1d/errors.hpp"
#include "rigid1d/experiments.hpp"
#include "rigid1d/explore.hpp"
#include "rigid1d/generators.hpp"
#include "rigid1d/json_io.hpp"
#include "rigid1d/reconstruct.hpp"
#include "rigid1d/rng.hpp"
#include "rigid1d/structure.hpp"

using namespace rigid1d;
using nlohmann::json;

namespace {

enum Exit : int { kOk = 0, kUsage = 1, kRefuted = 2, kBudget = 3 };

struct Globals {
  std::uint64_t seed = 1;
  int trials = 0;
  std::string out;
  std::string format = "json";
  int workers = 0;
};

struct Budgets {
  std::uint64_t max_candidates = EnumerationBudget{}.max_candidates;
  std::size_t oracle_max_edges = OracleOptions{}.max_edges;
  std::uint64_t node_budget = ReconstructOptions{}.node_budget;
  int exact_cut_limit = MatchingCutOptions{}.exact_limit;
};

void add_budget_flags(CLI::App* cmd, Budgets& b) {
  cmd->add_option("--candidate-budget", b.max_candidates, "Max s-sets examined by exact property checks");
  cmd->add_option("--oracle-max-edges", b.oracle_max_edges, "Edge limit for the exact rigidity oracle");
  cmd->add_option("--node-budget", b.node_budget, "Reconstruction node budget");
  cmd->add_option("--exact-cut-limit", b.exact_cut_limit, "Largest n for exhaustive matching-cut search");
}

void emit(const Globals& g, const json& j) {
  if (g.out.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(g.out);
  if (!out) throw std::runtime_error("cannot write " + g.out);
  out << j.dump(2) << '\n';
}

// ---------------------------------------------------------------------------

struct GenerateArgs {
  std::string model;
  int n = 0;
  double p = 0.0;
  std::int64_t m = 0;
  int d = 3;
  int k = 2;
  int restarts = RegularOptions{}.max_restarts;
};

int run_generate(const Globals& glob, const GenerateArgs& a) {
  Graph g;
  std::string note;
  if (a.model == "gnp") {
    g = gen_gnp(a.n, a.p, glob.seed);
  } else if (a.model == "gnm") {
    g = gen_gnm(a.n, a.m, glob.seed);
  } else if (a.model == "process") {
    const auto trace = run_process_to_min_degree(a.n, a.k, glob.seed);
    g = trace.prefix(trace.tau);
    note = "# hitting time tau=" + std::to_string(trace.tau) + " for min degree " + std::to_string(a.k) + "\n";
  } else if (a.model == "regular") {
    g = gen_random_regular(a.n, a.d, glob.seed, {a.restarts});
  } else if (a.model == "complete") {
    g = Graph::complete(a.n);
  } else if (a.model == "cycle") {
    g = Graph::cycle(a.n);
  } else if (a.model == "path") {
    g = Graph::path(a.n);
  } else if (a.model == "star") {
    g = Graph::star(a.n);
  } else {
    g = Graph::petersen();
  }
  std::ostringstream text;
  text << note;
  write_graph(text, g);
  if (glob.out.empty()) {
    std::cout << text.str();
  } else {
    std::ofstream out(glob.out);
    if (!out) throw std::runtime_error("cannot write " + glob.out);
    out << text.str();
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct CheckArgs {
  std::string property;
  std::string graph;
  std::optional<int> s;
  int divisor = 15;
  double eps = 0.05;
  std::string witness;
  std::uint64_t samples = 0;
};

int run_check(const Globals& glob, const CheckArgs& a, const Budgets& b) {
  const Graph g = read_graph_file(a.graph);
  const int n = g.order();
  EnumerationBudget budget{b.max_candidates};
  json out = {{"property", a.property}, {"n", n}, {"m", g.size()}};
  int code = kOk;

  auto cross = [&](int s) {
    out["s"] = s;
    if (a.samples > 0) {
      Rng rng(glob.seed);
      const auto r = falsify_cross_property(g, s, a.samples, rng);
      out["mode"] = "sampled";
      out["samples"] = r.samples;
      out["violations"] = r.violations;
      if (r.first_violation) {
        out["holds"] = false;
        out["violation"] = {{"U", r.first_violation->u}, {"W", r.first_violation->w}};
        return kRefuted;
      }
      // Sampling can refute but never confirm.
      out["holds"] = nullptr;
      return kOk;
    }
    out["mode"] = "exact";
    const auto v = check_cross_property(g, s, budget);
    out["holds"] = !v.has_value();
    if (v) {
      out["violation"] = {{"U", v->u}, {"W", v->w}};
      return kRefuted;
    }
    return kOk;
  };

  try {
    if (a.property == "p1") {
      code = cross(a.s.value_or(threshold_size(n, a.divisor)));
    } else if (a.property == "p3") {
      code = cross(a.s.value_or(std::max(1, static_cast<int>(std::ceil(a.eps * n - 1e-9)))));
    } else if (a.property == "cross") {
      code = cross(a.s.value_or(1));
    } else if (a.property == "p2") {
      const int s = a.s.value_or(threshold_size(n, a.divisor));
      out["s"] = s;
      const auto u = check_p2(g, s, budget);
      out["holds"] = !u.has_value();
      if (u) {
        out["violation"] = {{"U", *u}};
        code = kRefuted;
      }
    } else if (a.property == "lemma-main") {
      const bool ok = lemma_main_check(g, budget, a.divisor);
      out["divisor"] = a.divisor;
      out["holds"] = ok;
      // Passing is sufficient for global rigidity; failing proves nothing.
      out["implies_globally_rigid"] = ok;
      code = ok ? kOk : kRefuted;
    } else if (a.property == "matching-cut") {
      MatchingCutOptions options;
      options.exact_limit = b.exact_cut_limit;
      const auto r = find_matching_cut(g, options);
      out["exhaustive"] = r.exhaustive;
      out["method"] = r.method;
      out["found"] = r.cut.has_value();
      if (r.cut) {
        out["certificate"] = to_json(*r.cut);
        if (!(n == 2 && g.size() == 1)) out["witness"] = to_json(build_witness_pair(g, *r.cut));
        code = kRefuted;
      } else if (!r.exhaustive) {
        code = kBudget;
      }
    } else if (a.property == "oracle") {
      OracleOptions options;
      options.max_edges = b.oracle_max_edges;
      const auto v = decide_global_rigidity(g, options);
      out["verdict"] = to_json(v);
      code = v.status == RigidityStatus::kRigid ? kOk : v.status == RigidityStatus::kNotRigid ? kRefuted : kBudget;
    } else if (a.property == "2-connected") {
      out["holds"] = is_2_connected(g);
      code = out["holds"].get<bool>() ? kOk : kRefuted;
    } else if (a.property == "f1f2") {
      const bool found = contains_F1_or_F2(g);
      out["contains_F1_or_F2"] = found;
      code = found ? kRefuted : kOk;
    } else if (a.property == "witness") {
      if (a.witness.empty()) throw CLI::ValidationError("--witness", "required for 'check witness'");
      const auto w = witness_from_json(read_json_file(a.witness));
      const auto c = check_witness(g, w);
      out["f_injective"] = c.f_injective;
      out["g_injective"] = c.g_injective;
      out["lengths_agree"] = c.lengths_agree;
      out["non_isometric"] = c.non_isometric;
      out["holds"] = c.ok();
      code = c.ok() ? kOk : kRefuted;
    }
  } catch (const BudgetExceeded& e) {
    out["holds"] = nullptr;
    out["reason"] = e.what();
    code = kBudget;
  }
  emit(glob, out);
  return code;
}

// ---------------------------------------------------------------------------

struct ReconstructArgs {
  std::string graph;
  std::string lengths;
  std::string embedding;
  bool all = false;
};

int run_reconstruct(const Globals& glob, const ReconstructArgs& a, const Budgets& b) {
  const Graph g = read_graph_file(a.graph);
  EdgeLengths lengths;
  if (!a.lengths.empty()) {
    lengths = lengths_from_json(g, read_json_file(a.lengths));
  } else if (!a.embedding.empty()) {
    lengths = lengths_of(g, embedding_from_json(read_json_file(a.embedding)));
  } else {
    throw CLI::ValidationError("reconstruct", "one of --lengths or --embedding is required");
  }
  ReconstructOptions options;
  options.class_limit = a.all ? 0 : 2;
  options.node_budget = b.node_budget;
  const auto r = reconstruct(g, lengths, options);
  emit(glob, to_json(r));
  if (r.classes.size() >= 2) return kRefuted;
  if (r.budget_hit) return kBudget;
  return kOk;
}

// ---------------------------------------------------------------------------

struct ExploreArgs {
  std::string graph;
  std::optional<Vertex> vertex;
  bool all = false;
  double sigma_const = 6000.0;
  std::string z_floor = "99/100";
  bool trace = false;
};

int run_explore(const Globals& glob, const ExploreArgs& a) {
  const Graph g = read_graph_file(a.graph);
  const auto params = ExploreParams::defaults(g.order(), a.sigma_const, Ratio::parse(a.z_floor));
  std::ofstream file;
  if (!glob.out.empty()) {
    file.open(glob.out);
    if (!file) throw std::runtime_error("cannot write " + glob.out);
  }
  std::ostream& out = glob.out.empty() ? std::cout : file;
  Explorer explorer(g);
  auto one = [&](Vertex v) {
    if (!g.contains(v)) throw CLI::ValidationError("--vertex", "vertex " + std::to_string(v) + " is not in the graph");
    out << to_json(explorer.run(v, params, a.trace), a.trace).dump() << '\n';
  };
  if (a.vertex) {
    one(*a.vertex);
  } else {
    for (Vertex v = 0; v < g.order(); ++v) one(v);
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct ExperimentArgs {
  std::string name;
  std::string config_file;
  std::optional<int> n;
  std::optional<double> p;
  std::optional<double> p_scale;
  std::optional<double> edge_factor;
  std::optional<int> d;
  std::optional<int> embeddings;
  std::optional<int> vertices;
  std::optional<int> subsets;
  std::optional<double> eps;
  std::optional<double> sigma_const;
  std::optional<std::string> z_floor;
  std::optional<double> gamma;
  std::optional<std::uint64_t> samples;
  std::optional<int> audit_max_n;
  bool no_witnesses = false;
  bool validate_report = false;
};

int run_experiment_cmd(const Globals& glob, const ExperimentArgs& a, const Budgets& b, const CLI::App& cmd) {
  ExperimentConfig c;
  if (!a.config_file.empty()) {
    // Accepts a bare config object or a report whose first line is the config.
    std::ifstream in(a.config_file);
    if (!in) throw std::runtime_error("cannot open " + a.config_file);
    std::string first;
    std::getline(in, first);
    json j = json::parse(first, nullptr, false);
    if (j.is_discarded()) {
      in.clear();
      in.seekg(0);
      j = json::parse(in);
    }
    c = config_from_json(j.contains("config") ? j["config"] : j);
  } else {
    c = default_config(a.name);
  }
  if (c.experiment != a.name) throw CLI::ValidationError("--config", "config is for '" + c.experiment + "'");
  if (cmd.get_parent()->count("--seed") > 0 || a.config_file.empty()) c.seed = glob.seed;
  if (glob.trials > 0) c.trials = glob.trials;
  if (a.n) c.n = *a.n;
  if (a.p) c.p = *a.p;
  if (a.p_scale) c.p = *a.p_scale / c.n;
  if (!a.p && !a.p_scale && a.n && c.experiment == "explore-sweep") c.p = 1.1 / c.n;
  if (a.edge_factor) c.edge_factor = *a.edge_factor;
  if (a.d) c.d = *a.d;
  if (a.embeddings) c.embeddings = *a.embeddings;
  if (a.vertices) c.vertices = *a.vertices;
  if (a.subsets) c.subsets = *a.subsets;
  if (a.eps) c.eps = *a.eps;
  if (a.sigma_const) c.sigma_const = *a.sigma_const;
  if (a.z_floor) c.z_floor = Ratio::parse(*a.z_floor);
  if (a.gamma) c.gamma = *a.gamma;
  if (a.samples) c.falsifier_samples = *a.samples;
  if (a.audit_max_n) {
    c.audit_max_n = *a.audit_max_n;
    c.audit_sign_max_n = std::min(c.audit_sign_max_n, c.audit_max_n);
  }
  if (a.no_witnesses) c.emit_witnesses = false;
  if (cmd.count("--oracle-max-edges")) c.oracle_max_edges = b.oracle_max_edges;
  if (cmd.count("--node-budget")) c.reconstruct_nodes = b.node_budget;
  if (cmd.count("--exact-cut-limit")) c.exact_cut_limit = b.exact_cut_limit;
  validate(c);

  RunOptions options;
  options.workers = glob.workers;
  std::ofstream jsonl;
  if (!glob.out.empty()) {
    jsonl.open(glob.out + ".jsonl");
    if (!jsonl) throw std::runtime_error("cannot write " + glob.out + ".jsonl");
  }
  const auto report = run_experiment(c, options);
  if (!glob.out.empty()) {
    write_jsonl(jsonl, report);
    std::ofstream csv(glob.out + ".csv");
    write_csv(csv, report);
  }
  json summary = {{"experiment", c.experiment}, {"config", to_json(c)}, {"summary", report.summary}};
  if (a.validate_report) summary["revalidated"] = revalidate_report(report);
  if (glob.format == "csv") {
    write_csv(std::cout, report);
  } else {
    std::cout << summary.dump(2) << '\n';
  }
  const auto meets = report.summary.find("meets_threshold");
  return meets != report.summary.end() && meets->get<bool>() ? kOk : kRefuted;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rigid1d: global rigidity of graphs on the line"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals glob;
  app.add_option("--seed", glob.seed, "Master seed")->capture_default_str();
  app.add_option("--trials", glob.trials, "Trials (experiments)");
  app.add_option("--out", glob.out, "Output file (experiments: path prefix for .jsonl and .csv)");
  app.add_option("--format", glob.format, "Experiment summary format on stdout")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--workers", glob.workers, "Worker threads for experiments (0 = all cores)");
  Budgets budgets;

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a graph in the text format");
  generate->add_option("model", gen.model, "Model")
      ->required()
      ->check(CLI::IsMember({"gnp", "gnm", "process", "regular", "complete", "cycle", "path", "star", "petersen"}));
  generate->add_option("-n,--n", gen.n, "Vertices");
  generate->add_option("-p,--p", gen.p, "Edge probability (gnp)");
  generate->add_option("-m,--m", gen.m, "Edges (gnm)");
  generate->add_option("-d,--d", gen.d, "Degree (regular)");
  generate->add_option("-k,--k", gen.k, "Minimum degree target (process)");
  generate->add_option("--restarts", gen.restarts, "Pairing-model restart budget (regular)");

  CheckArgs chk;
  auto* check = app.add_subcommand("check", "Test a property of a graph");
  check->add_option("property", chk.property, "Property")
      ->required()
      ->check(CLI::IsMember(
          {"p1", "p2", "p3", "cross", "lemma-main", "matching-cut", "oracle", "2-connected", "f1f2", "witness"}));
  check->add_option("--graph", chk.graph, "Graph file")->required()->check(CLI::ExistingFile);
  check->add_option("--s", chk.s, "Set-size threshold (overrides the derived one)");
  check->add_option("--divisor", chk.divisor, "Threshold divisor for p1/p2/lemma-main (ceil(n/divisor))");
  check->add_option("--eps", chk.eps, "Threshold rate for p3 (ceil(eps*n))");
  check->add_option("--samples", chk.samples, "Use the sampling falsifier with this many pairs (p1/p3/cross)");
  check->add_option("--witness", chk.witness, "Witness JSON {f, g} (witness)");
  add_budget_flags(check, budgets);

  ReconstructArgs rec;
  auto* reconstruct_cmd = app.add_subcommand("reconstruct", "Enumerate placements consistent with edge lengths");
  reconstruct_cmd->add_option("--graph", rec.graph, "Graph file")->required()->check(CLI::ExistingFile);
  auto* lengths_opt = reconstruct_cmd->add_option("--lengths", rec.lengths, "Edge lengths JSON")->check(CLI::ExistingFile);
  reconstruct_cmd->add_option("--embedding", rec.embedding, "Embedding JSON to take lengths from")
      ->check(CLI::ExistingFile)
      ->excludes(lengths_opt);
  reconstruct_cmd->add_flag("--all", rec.all, "Enumerate every class instead of stopping at two");
  add_budget_flags(reconstruct_cmd, budgets);

  ExploreArgs exp;
  auto* explore = app.add_subcommand("explore", "Run the exploration process");
  explore->add_option("--graph", exp.graph, "Graph file")->required()->check(CLI::ExistingFile);
  auto* vopt = explore->add_option("--vertex", exp.vertex, "Start vertex");
  auto* aopt = explore->add_flag("--all", exp.all, "Explore from every vertex");
  vopt->excludes(aopt);
  explore->add_option("--sigma-const", exp.sigma_const, "sigma = ceil(c ln n)")->capture_default_str();
  explore->add_option("--z-floor", exp.z_floor, "Fail while |Z| < z*n")->capture_default_str();
  explore->add_flag("--trace", exp.trace, "Include the per-round log");

  ExperimentArgs ea;
  auto* experiment = app.add_subcommand("experiment", "Monte Carlo and exhaustive experiments");
  experiment->add_option("name", ea.name, "Experiment")
      ->required()
      ->check(CLI::IsMember({"hitting-time", "sparse-core", "explore-sweep", "cubic", "audit-small"}));
  experiment->add_option("--config", ea.config_file, "Re-run from a config JSON or a report .jsonl")
      ->check(CLI::ExistingFile);
  experiment->add_option("-n,--n", ea.n, "Vertices");
  experiment->add_option("-p,--p", ea.p, "Edge probability (explore-sweep)");
  experiment->add_option("--c-over-n", ea.p_scale, "Set p = value / n (explore-sweep)");
  experiment->add_option("-C,--edge-factor", ea.edge_factor, "m = C*n (sparse-core)");
  experiment->add_option("-d,--d", ea.d, "Degree (cubic)");
  experiment->add_option("--embeddings", ea.embeddings, "Adversarial embeddings per trial (hitting-time)");
  experiment->add_option("--vertices", ea.vertices, "Sampled start vertices per trial (explore-sweep)");
  experiment->add_option("--subsets", ea.subsets, "Sampled subsets V' per trial (explore-sweep)");
  experiment->add_option("--eps", ea.eps, "Epsilon (sparse-core)");
  experiment->add_option("--sigma-const", ea.sigma_const, "sigma = ceil(c ln n)");
  experiment->add_option("--z-floor", ea.z_floor, "Failure floor for |Z|/n");
  experiment->add_option("--gamma", ea.gamma, "|V'| = ceil(gamma ln n) (explore-sweep)");
  experiment->add_option("--samples", ea.samples, "Falsifier pair samples (sparse-core)");
  experiment->add_option("--audit-max-n", ea.audit_max_n, "Largest n for audit-small");
  experiment->add_flag("--no-witnesses", ea.no_witnesses, "Leave witnesses and certificates out of trial records");
  experiment->add_flag("--validate", ea.validate_report, "Re-validate every stored certificate before exiting");
  add_budget_flags(experiment, budgets);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*generate) return run_generate(glob, gen);
    if (*check) return run_check(glob, chk, budgets);
    if (*reconstruct_cmd) return run_reconstruct(glob, rec, budgets);
    if (*explore) return run_explore(glob, exp);
    if (*experiment) return run_experiment_cmd(glob, ea, budgets, *experiment);
  } catch (const CLI::Error& e) {
    std::cerr << "rigid1d: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "rigid1d: " << e.what() << '\n';
    return kUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "rigid1d: " << e.what() << '\n';
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "rigid1d: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
