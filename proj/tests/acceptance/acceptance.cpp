// Acceptance suite: one PASS/FAIL line per criterion. Optional arguments
// select criteria by number; the default runs all ten.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rigid1d/certify.hpp"
#include "rigid1d/embedding.hpp"
#include "rigid1d/enumerate.hpp"
#include "rigid1d/experiments.hpp"
#include "rigid1d/generators.hpp"
#include "rigid1d/reconstruct.hpp"
#include "rigid1d/rng.hpp"
#include "rigid1d/structure.hpp"

using namespace rigid1d;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

template <class T>
T get(const json& j, const char* key) {
  return j.at(key).get<T>();
}

// 1. Exhaustive audit over connected labeled graphs with n <= 7.
Outcome audit(double& secs) {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentConfig c = default_config("audit-small");
  c.audit_max_n = 7;
  c.audit_sign_max_n = 6;
  c.audit_sign_samples = 100;
  c.audit_cubic = false;
  const auto report = cmd_audit_small(c);
  secs = seconds_since(t0);
  std::uint64_t cut = 0, conn = 0, wit = 0, sign = 0, recon = 0, unknown = 0, graphs = 0;
  for (const auto& t : report.trials) {
    const auto& v = t.data["violations"];
    cut += get<std::uint64_t>(v, "cut_implies_not_rigid");
    conn += get<std::uint64_t>(v, "rigid_implies_2_connected");
    wit += get<std::uint64_t>(v, "witness_valid");
    sign += get<std::uint64_t>(v, "sign_enumeration");
    recon += get<std::uint64_t>(v, "reconstruction");
    unknown += get<std::uint64_t>(t.data, "unknown");
    graphs += get<std::uint64_t>(t.data, "graphs");
  }
  const bool ok = graphs == 1 + 1 + 4 + 38 + 728 + 26704 + 1866256 && cut + conn + wit + sign + recon + unknown == 0 &&
                  secs < 600;
  return {ok, fmt("%llu graphs; violations (a)=%llu (b)=%llu (c)=%llu (d)=%llu recon=%llu unknown=%llu; %.0fs (limit 600s)",
                  (unsigned long long)graphs, (unsigned long long)cut, (unsigned long long)conn,
                  (unsigned long long)wit, (unsigned long long)sign, (unsigned long long)recon,
                  (unsigned long long)unknown, secs)};
}

// 2. Small fixtures.
Outcome fixtures(double& secs) {
  const auto t0 = std::chrono::steady_clock::now();
  const Graph c4 = Graph::cycle(4);
  const auto v = decide_global_rigidity(c4);
  const bool c4_ok = v.status == RigidityStatus::kNotRigid && v.witness && check_witness(c4, *v.witness).ok();
  const bool k3 = decide_global_rigidity(Graph::complete(3)).status == RigidityStatus::kRigid;
  const bool k4 = decide_global_rigidity(Graph::complete(4)).status == RigidityStatus::kRigid;
  const Graph k4e(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
  const bool k4m = decide_global_rigidity(k4e).status == RigidityStatus::kRigid;
  secs = seconds_since(t0);
  return {c4_ok && k3 && k4 && k4m,
          fmt("C4 NotRigid+witness=%d K3 Rigid=%d K4 Rigid=%d K4-e Rigid=%d", c4_ok, k3, k4, k4m)};
}

// 3. Every cubic graph on 8 vertices is NotRigid.
Outcome cubic8(double& secs) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto graphs = enumerate_regular_graphs(8, 3);
  std::size_t not_rigid = 0;
  for (const auto& g : graphs) {
    const auto v = decide_global_rigidity(g);
    if (v.status == RigidityStatus::kNotRigid && v.witness && check_witness(g, *v.witness).ok()) ++not_rigid;
  }
  secs = seconds_since(t0);
  // Six isomorphism classes of cubic graphs on 8 vertices (five connected).
  return {graphs.size() == 6 && not_rigid == graphs.size() && secs < 300,
          fmt("%zu classes, %zu NotRigid with validated witness; %.1fs (limit 300s)", graphs.size(), not_rigid, secs)};
}

// 4. Witness construction on random matching-cut instances.
Outcome witness_builder(double& secs) {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(derive_seed(4, 0));
  int failures = 0, total = 0;
  for (int i = 0; i < 10000; ++i) {
    const int n = static_cast<int>(rng.between(3, 50));
    const auto inst = oracle::random_cut_instance(n, rng);
    ++total;
    if (!is_valid_cut(inst.graph, inst.cut) || !check_witness(inst.graph, build_witness_pair(inst.graph, inst.cut)).ok())
      ++failures;
  }
  secs = seconds_since(t0);
  return {failures == 0, fmt("%d instances, %d failures", total, failures)};
}

// 5. Graphs passing the main lemma check reconstruct uniquely.
Outcome lemma_proxy(double& secs) {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(derive_seed(5, 0));
  int graphs = 0, tried = 0, multi = 0, budget = 0, embeddings = 0;
  while (graphs < 100) {
    const int n = static_cast<int>(rng.between(16, 24));
    const double p = 0.85 + 0.13 * rng.uniform01();
    const Graph g = gen_gnp(n, p, rng.next());
    ++tried;
    if (!lemma_main_check(g)) continue;
    ++graphs;
    for (const auto& f : adversarial_battery(n, 20, rng)) {
      ++embeddings;
      ReconstructOptions opts;
      opts.class_limit = 2;
      const auto r = reconstruct(g, lengths_of(g, f), opts);
      if (r.classes.size() != 1) ++multi;
      if (r.budget_hit) ++budget;
    }
  }
  secs = seconds_since(t0);
  return {multi == 0 && budget == 0,
          fmt("%d graphs (of %d sampled) x 20 embeddings = %d; multi-class %d, budget %d", graphs, tried, embeddings,
              multi, budget)};
}

// 6. Hitting-time graphs.
Outcome hitting_time(double& secs) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto report = cmd_hitting_time(default_config("hitting-time"));
  secs = seconds_since(t0);
  const auto& s = report.summary;
  const double pass = get<double>(s, "embedding_pass_fraction");
  const double hit = get<double>(s, "hitting_ok_fraction");
  return {pass >= 0.95 && hit == 1.0 && secs < 1800,
          fmt("n=200, %zu trials x 20: pass fraction %.4f (>= 0.95), hitting-time ok %.3f (= 1), tau mean %.1f; %.0fs "
              "(limit 1800s)",
              report.trials.size(), pass, hit, get<double>(s, "tau_mean"), secs)};
}

// 7. Exploration in sparse random graphs and subset certification.
Outcome explore_sweep(double& secs) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto report = cmd_explore_sweep(default_config("explore-sweep"));
  secs = seconds_since(t0);
  const auto& s = report.summary;
  const double success = get<double>(s, "success_fraction");
  const double cut = get<double>(s, "cut_verified_fraction");
  const double bound = get<double>(s, "bound_ok_fraction");
  const double cert = get<double>(s, "certification_rate");
  const auto& d0 = report.trials.front().data;
  const bool ok = success >= 0.99 && cut == 1.0 && bound == 1.0 && cert >= 0.95 && secs < 1200;
  return {ok, fmt("n=1e5, p=1.1/n, 20x200 starts: success %.4f (>= 0.99), cut bound %.3f, size bound %.3f "
                  "(max |A_v| %llu); certified %.3f of %llu V' (>= 0.95), |V'| target %lld, used %lld; %.0fs (limit "
                  "1200s)",
                  success, cut, bound, (unsigned long long)get<std::uint64_t>(s, "max_a_v"), cert,
                  (unsigned long long)get<std::uint64_t>(s, "subsets_tried"),
                  (long long)get<std::int64_t>(d0, "subset_target"), (long long)get<std::int64_t>(d0, "subset_size"),
                  secs)};
}

// 8. Random cubic graphs.
Outcome cubic(double& secs) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto report = cmd_cubic(default_config("cubic"));
  secs = seconds_since(t0);
  const auto& s = report.summary;
  const double rate = get<double>(s, "witness_rate");
  const double forbidden = get<double>(s, "forbidden_fraction");
  const bool petersen = s["fixtures"]["petersen"]["witness_ok"].get<bool>();
  return {rate >= 0.95 && forbidden <= 0.10 && petersen && secs < 300,
          fmt("n=1000, 100 trials: certified+witness %.2f (>= 0.95), F1/F2 %.2f (<= 0.10), Petersen %d; %.1fs (limit "
              "300s)",
              rate, forbidden, petersen, secs)};
}

// 9. Sparse core.
Outcome sparse_core(double& secs) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto report = cmd_sparse_core(default_config("sparse-core"));
  secs = seconds_since(t0);
  const auto& s = report.summary;
  const double core = get<double>(s, "core_ok_fraction");
  const auto violations = get<std::uint64_t>(s, "violations");
  return {core >= 0.90 && violations == 0 && secs < 600,
          fmt("n=3000, C=40, eps=0.05, 50 trials: |V'| >= 0.95n in %.2f (>= 0.90), falsifier violations %llu (= 0), "
              "min |V'|/n %.4f; %.0fs (limit 600s)",
              core, (unsigned long long)violations, get<double>(s, "min_core_fraction"), secs)};
}

// 10. Re-running a config reproduces its records.
Outcome reproducibility(double& secs) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<ExperimentConfig> configs;
  {
    auto c = default_config("hitting-time");
    c.trials = 10;
    configs.push_back(c);
    c = default_config("sparse-core");
    c.trials = 4;
    configs.push_back(c);
    c = default_config("explore-sweep");
    c.trials = 2;
    configs.push_back(c);
    c = default_config("cubic");
    c.trials = 20;
    configs.push_back(c);
    c = default_config("audit-small");
    c.audit_max_n = 5;
    c.audit_sign_max_n = 5;
    configs.push_back(c);
  }
  std::string bad;
  std::size_t revalidated = 0;
  for (const auto& c : configs) {
    const auto first = run_experiment(c, {1, {}});
    std::stringstream file;
    write_jsonl(file, first);
    const auto loaded = read_jsonl(file);
    const auto again = run_experiment(loaded.config, {2, {}});
    bool same = first.trials.size() == again.trials.size() && first.summary == again.summary;
    for (std::size_t i = 0; same && i < first.trials.size(); ++i)
      same = trial_to_json(first.trials[i], false) == trial_to_json(again.trials[i], false);
    std::stringstream a, b;
    for (const auto& t : loaded.trials) a << trial_to_json(t, false).dump() << '\n';
    for (const auto& t : again.trials) b << trial_to_json(t, false).dump() << '\n';
    same = same && a.str() == b.str();
    try {
      revalidated += revalidate_report(loaded);
    } catch (const std::exception& e) {
      same = false;
    }
    if (!same) bad += (bad.empty() ? "" : ",") + c.experiment;
  }
  secs = seconds_since(t0);
  return {bad.empty(), fmt("5 experiments re-run from their JSON-lines config with a different worker count; "
                           "mismatches: %s; %zu stored certificates re-validated",
                           bad.empty() ? "none" : bad.c_str(), revalidated)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome(double&)>>> criteria = {
      {"exhaustive audit n<=7", audit},
      {"C4/K3/K4/K4-e fixtures", fixtures},
      {"cubic graphs on 8 vertices", cubic8},
      {"matching-cut witness construction", witness_builder},
      {"main-lemma reconstruction proxy", lemma_proxy},
      {"hitting-time graphs", hitting_time},
      {"sparse exploration and subset certification", explore_sweep},
      {"random cubic graphs", cubic},
      {"sparse rigid core", sparse_core},
      {"reproducibility", reproducibility},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::stoi(argv[i]));
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    if (!selected.empty() && !selected.count(id)) continue;
    double secs = 0;
    Outcome out;
    try {
      out = criteria[i].second(secs);
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    failed += !out.pass;
    std::printf("%s criterion %d (%s): %s\n", out.pass ? "PASS" : "FAIL", id, criteria[i].first, out.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
