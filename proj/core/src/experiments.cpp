#include "rigid1d/experiments.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <istream>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "rigid1d/certify.hpp"
#include "rigid1d/embedding.hpp"
#include "rigid1d/enumerate.hpp"
#include "rigid1d/generators.hpp"
#include "rigid1d/json_io.hpp"
#include "rigid1d/reconstruct.hpp"
#include "rigid1d/rng.hpp"
#include "rigid1d/structure.hpp"

namespace rigid1d {

using nlohmann::json;

namespace {

// ceil(x * n) for a rate x, ignoring floating-point dust just above an integer.
std::int64_t ceil_rate(double x, std::int64_t n) {
  return static_cast<std::int64_t>(std::ceil(x * static_cast<double>(n) - 1e-9));
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string host_name() {
  char buf[256] = {};
  if (gethostname(buf, sizeof buf - 1) != 0) return "unknown";
  return buf;
}

int resolve_workers(int requested, int tasks) {
  int w = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  return std::clamp(w, 1, std::max(1, tasks));
}

template <class Fn>
std::vector<TrialRecord> run_trials(const ExperimentConfig& config, int count, const RunOptions& options, Fn&& fn) {
  std::vector<TrialRecord> records(static_cast<std::size_t>(count));
  std::atomic<int> next{0};
  std::mutex mutex;
  std::exception_ptr failure;
  auto body = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      {
        std::lock_guard lock(mutex);
        if (failure) return;
      }
      try {
        TrialRecord r;
        r.trial = i;
        r.seed = derive_seed(config.seed, static_cast<std::uint64_t>(i));
        const auto t0 = std::chrono::steady_clock::now();
        r.data = fn(i, r.seed);
        r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::lock_guard lock(mutex);
        records[static_cast<std::size_t>(i)] = std::move(r);
        if (options.on_trial) options.on_trial(records[static_cast<std::size_t>(i)]);
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  const int workers = resolve_workers(options.workers, count);
  if (workers == 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

ExperimentReport make_report(const ExperimentConfig& config, std::vector<TrialRecord> trials, json summary,
                             const RunOptions& options, std::chrono::steady_clock::time_point started) {
  ExperimentReport report;
  report.config = config;
  report.trials = std::move(trials);
  report.summary = std::move(summary);
  double total = 0.0;
  for (const auto& t : report.trials) total += t.wall_seconds;
  report.side = {{"finished_utc", utc_timestamp()},
                 {"host", host_name()},
                 {"workers", resolve_workers(options.workers, static_cast<int>(report.trials.size()))},
                 {"wall_seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count()},
                 {"trial_seconds_total", total}};
  return report;
}

double fraction(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::vector<Vertex> sorted_copy(std::vector<Vertex> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<std::int64_t> integer_coordinates(const Embedding& f) {
  mpz_class lcm = 1;
  for (const auto& x : f.values()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
  std::vector<std::int64_t> out;
  out.reserve(f.values().size());
  for (const auto& x : f.values()) {
    const mpz_class scaled = x.get_num() * (lcm / x.get_den());
    if (!scaled.fits_slong_p()) throw std::overflow_error("integer_coordinates: coordinate too large");
    out.push_back(scaled.get_si());
  }
  return out;
}

Embedding to_embedding(const std::vector<std::int64_t>& xs) { return Embedding::from_integers(xs); }

// Distinct integers from [0, 2n] so that pairwise distances repeat often.
std::vector<std::int64_t> small_range_placement(int n, Rng& rng) {
  std::vector<std::int64_t> pool(static_cast<std::size_t>(2 * n + 1));
  std::iota(pool.begin(), pool.end(), 0);
  rng.shuffle(pool);
  pool.resize(static_cast<std::size_t>(n));
  return pool;
}

void check_config_name(const ExperimentConfig& config, const char* name) {
  validate(config);
  if (config.experiment != name) {
    throw std::invalid_argument(std::string("config is for '") + config.experiment + "', not '" + name + "'");
  }
}

// ---------------------------------------------------------------------------
// hitting-time
// ---------------------------------------------------------------------------

json hitting_time_trial(const ExperimentConfig& c, std::uint64_t seed) {
  const auto trace = run_process_to_min_degree(c.n, 2, derive_seed(seed, 0));
  const Graph g = trace.prefix(trace.tau);
  const Graph before = trace.prefix(trace.tau - 1);
  Rng rng(derive_seed(seed, 1));
  const auto battery = adversarial_battery(c.n, c.embeddings, rng);

  std::uint64_t unique = 0, multiple = 0, budget = 0;
  json witness = nullptr;
  for (const auto& f : battery) {
    ReconstructOptions options;
    options.class_limit = 2;
    options.node_budget = c.reconstruct_nodes;
    const auto result = reconstruct(g, lengths_of(g, f), options);
    if (result.classes.size() >= 2) {
      ++multiple;
      if (c.emit_witnesses && witness.is_null()) {
        const auto& other = is_isometric(result.classes[0], f) ? result.classes[1] : result.classes[0];
        witness = to_json(WitnessPair{f, other});
      }
    } else if (result.budget_hit) {
      ++budget;
    } else {
      ++unique;
    }
  }
  const int d_tau = g.min_degree();
  const int d_before = before.min_degree();
  json out = {{"tau", trace.tau},
              {"min_degree_tau", d_tau},
              {"min_degree_before", d_before},
              {"hitting_ok", d_tau >= 2 && d_before <= 1},
              {"embeddings", battery.size()},
              {"unique", unique},
              {"multiple", multiple},
              {"budget", budget},
              {"all_unique", unique == battery.size()}};
  if (!witness.is_null()) out["witness"] = std::move(witness);
  return out;
}

// ---------------------------------------------------------------------------
// sparse-core
// ---------------------------------------------------------------------------

json sparse_core_trial(const ExperimentConfig& c, std::uint64_t seed) {
  const Graph g = trial_graph(c, seed);
  const int n = g.order();
  const auto a = find_deficient_set(g, c.eps);
  const auto nbhd = open_neighbourhood(g, a.vertices);
  const bool deficient_ok = static_cast<double>(a.vertices.size()) <= c.eps * n + 1e-9 &&
                            nbhd.size() <= a.vertices.size();

  std::vector<Vertex> core;
  core.reserve(static_cast<std::size_t>(n) - a.vertices.size());
  for (Vertex v = 0, j = 0; v < n; ++v) {
    if (j < static_cast<Vertex>(a.vertices.size()) && a.vertices[static_cast<std::size_t>(j)] == v) {
      ++j;
      continue;
    }
    core.push_back(v);
  }
  const auto core_size = static_cast<std::int64_t>(core.size());

  Rng rng(derive_seed(seed, 1));
  const int s = static_cast<int>(ceil_rate(c.eps, n));
  const auto on_g = falsify_cross_property(g, s, c.falsifier_samples, rng);
  const auto sub = induced(g, core);
  const int s_core = static_cast<int>(ceil_rate(c.eps, core_size));
  const auto on_core = falsify_cross_property(sub.graph, s_core, c.falsifier_samples, rng);

  json out = {{"m", g.size()},
              {"deficient_size", a.vertices.size()},
              {"deficient_exact", a.exact},
              {"deficient_ok", deficient_ok},
              {"core_size", core_size},
              {"core_fraction", fraction(static_cast<std::uint64_t>(core_size), static_cast<std::uint64_t>(n))},
              {"core_ok", static_cast<double>(n - core_size) <= c.eps * n + 1e-9},
              {"s", s},
              {"samples", on_g.samples},
              {"violations", on_g.violations},
              {"s_core", s_core},
              {"samples_core", on_core.samples},
              {"violations_core", on_core.violations}};
  if (c.emit_witnesses && !a.vertices.empty()) out["deficient_set"] = a.vertices;
  if (on_g.first_violation) {
    out["violation"] = {{"U", on_g.first_violation->u}, {"W", on_g.first_violation->w}};
  }
  return out;
}

// ---------------------------------------------------------------------------
// explore-sweep
// ---------------------------------------------------------------------------

std::vector<Vertex> sample_distinct(int n, int count, Rng& rng) {
  count = std::min(count, n);
  std::vector<Vertex> out;
  std::unordered_set<Vertex> seen;
  while (static_cast<int>(out.size()) < count) {
    const auto v = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
    if (seen.insert(v).second) out.push_back(v);
  }
  return out;
}

json explore_sweep_trial(const ExperimentConfig& c, std::uint64_t seed) {
  const Graph g = trial_graph(c, seed);
  const int n = g.order();
  const double ln_n = std::log(static_cast<double>(n));
  Rng rng(derive_seed(seed, 1));
  const auto starts = sample_distinct(n, c.vertices, rng);
  const auto params = ExploreParams::defaults(n, c.sigma_const, c.z_floor);

  Explorer explorer(g);
  std::vector<std::pair<Vertex, std::vector<Vertex>>> successes;
  std::uint64_t cut_verified = 0, bound_ok = 0;
  std::size_t max_a = 0;
  std::vector<bool> in_a(static_cast<std::size_t>(n), false);
  for (const Vertex v : starts) {
    auto outcome = explorer.run(v, params);
    if (outcome.status != ExploreStatus::kSuccess) continue;
    for (const Vertex x : outcome.a_v) in_a[static_cast<std::size_t>(x)] = true;
    if (max_crossing_degree(g, in_a) <= 1) ++cut_verified;
    for (const Vertex x : outcome.a_v) in_a[static_cast<std::size_t>(x)] = false;
    if (static_cast<double>(outcome.a_v.size()) <= c.sigma_const * ln_n) ++bound_ok;
    max_a = std::max(max_a, outcome.a_v.size());
    successes.emplace_back(v, std::move(outcome.a_v));
  }

  const auto target = static_cast<std::int64_t>(std::ceil(c.gamma * ln_n));
  const std::int64_t subset_size = std::min<std::int64_t>(n, std::max<std::int64_t>(2, target));
  const bool clamped = subset_size < target;
  std::uint64_t tried = 0, certified = 0;
  json certificates = json::array();
  if (!successes.empty()) {
    SubsetOptions options;
    options.exact_limit = c.exact_cut_limit;
    options.sigma_const = c.sigma_const;
    options.z_floor = c.z_floor;
    for (int j = 0; j < c.subsets; ++j) {
      const auto& [v, a_v] = successes[static_cast<std::size_t>(j) % successes.size()];
      std::vector<Vertex> subset;
      if (subset_size == n) {
        subset.resize(static_cast<std::size_t>(n));
        std::iota(subset.begin(), subset.end(), 0);
      } else {
        std::unordered_set<Vertex> members(a_v.begin(), a_v.end());
        subset = a_v;
        if (static_cast<std::int64_t>(subset.size()) > subset_size) subset.resize(static_cast<std::size_t>(subset_size));
        while (static_cast<std::int64_t>(subset.size()) < subset_size) {
          const auto x = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
          if (members.insert(x).second) subset.push_back(x);
        }
        std::sort(subset.begin(), subset.end());
      }
      options.hints = {v};
      ++tried;
      const auto cert = certify_not_rigid_subset(g, subset, options);
      if (!cert || !check_witness(cert->sub.graph, cert->witness).ok()) continue;
      ++certified;
      if (c.emit_witnesses) {
        std::vector<Vertex> side;
        for (const Vertex x : cert->cut.a) side.push_back(cert->sub.to_parent[static_cast<std::size_t>(x)]);
        json entry = {{"vertex", v}, {"method", cert->method}, {"A", sorted_copy(std::move(side))}};
        if (subset_size == n) {
          entry["subset"] = "all";
        } else if (subset.size() <= 2000) {
          entry["subset"] = subset;
        }
        certificates.push_back(std::move(entry));
      }
    }
  }

  json out = {{"sampled", starts.size()},
              {"successes", successes.size()},
              {"success_fraction", fraction(successes.size(), starts.size())},
              {"cut_verified", cut_verified},
              {"bound_ok", bound_ok},
              {"max_a_v", max_a},
              {"max_a_v_over_ln_n", static_cast<double>(max_a) / ln_n},
              {"sigma", params.sigma},
              {"subset_target", target},
              {"subset_size", subset_size},
              {"subset_clamped", clamped},
              {"subsets_tried", tried},
              {"certified", certified}};
  if (c.emit_witnesses) out["certificates"] = std::move(certificates);
  return out;
}

// ---------------------------------------------------------------------------
// cubic
// ---------------------------------------------------------------------------

struct CycleCut {
  std::optional<std::vector<Vertex>> cycle;
  bool certified = false;
  bool witness_ok = false;
  std::optional<WitnessPair> witness;
};

CycleCut shortest_cycle_cut(const Graph& g) {
  CycleCut out;
  out.cycle = find_shortest_cycle(g);
  if (!out.cycle || static_cast<int>(out.cycle->size()) >= g.order()) return out;
  CutCertificate cut;
  cut.a = sorted_copy(*out.cycle);
  for (Vertex v = 0; v < g.order(); ++v)
    if (!std::binary_search(cut.a.begin(), cut.a.end(), v)) cut.b.push_back(v);
  if (!is_valid_cut(g, cut)) return out;
  out.certified = true;
  out.witness = build_witness_pair(g, cut);
  out.witness_ok = check_witness(g, *out.witness).ok();
  return out;
}

json cubic_trial(const ExperimentConfig& c, std::uint64_t seed) {
  const Graph g = trial_graph(c, seed);
  const auto cut = shortest_cycle_cut(g);
  json out = {{"girth", cut.cycle ? cut.cycle->size() : 0},
              {"certified", cut.certified},
              {"witness_ok", cut.witness_ok},
              {"forbidden", contains_F1_or_F2(g)}};
  if (cut.cycle) out["cycle"] = *cut.cycle;
  if (c.emit_witnesses && cut.witness) out["witness"] = to_json(*cut.witness);
  return out;
}

json fixture_json(const Graph& g) {
  const auto cut = shortest_cycle_cut(g);
  json out = {{"certified", cut.certified}, {"witness_ok", cut.witness_ok}};
  if (cut.cycle) out["cycle"] = *cut.cycle;
  return out;
}

// ---------------------------------------------------------------------------
// audit-small
// ---------------------------------------------------------------------------

json audit_order(const ExperimentConfig& c, int n, std::uint64_t seed) {
  const auto pairs = all_pairs(n);
  Rng rng(seed);
  OracleOptions oracle;
  oracle.max_edges = c.oracle_max_edges;
  MatchingCutOptions cut_options;
  cut_options.exact_limit = c.exact_cut_limit;

  std::uint64_t graphs = 0, rigid = 0, not_rigid = 0, unknown = 0, with_cut = 0, sign_checks = 0, recon_checks = 0;
  std::uint64_t bad_cut = 0, bad_2conn = 0, bad_witness = 0, bad_sign = 0, bad_recon = 0;
  json examples = json::array();
  auto note = [&](const char* kind, std::uint64_t mask) {
    if (examples.size() < 10) examples.push_back({{"kind", kind}, {"mask", mask}});
  };

  const std::uint64_t masks = 1ULL << pairs.size();
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    if (!mask_connected(n, mask, pairs)) continue;
    ++graphs;
    const Graph g = graph_from_mask(n, mask, pairs);
    const auto verdict = decide_global_rigidity(g, oracle);
    const bool is_k2 = n == 2;
    switch (verdict.status) {
      case RigidityStatus::kRigid: ++rigid; break;
      case RigidityStatus::kNotRigid: ++not_rigid; break;
      case RigidityStatus::kUnknown: ++unknown; break;
    }

    const auto cut = find_matching_cut(g, cut_options);
    if (cut.cut) {
      ++with_cut;
      if (!is_k2 && verdict.status != RigidityStatus::kNotRigid) {
        ++bad_cut;
        note("cut-but-not-NotRigid", mask);
      }
    }
    if (verdict.status == RigidityStatus::kRigid && n >= 3 && !is_2_connected(g)) {
      ++bad_2conn;
      note("rigid-but-not-2-connected", mask);
    }
    if (verdict.status == RigidityStatus::kNotRigid && (!verdict.witness || !check_witness(g, *verdict.witness).ok())) {
      ++bad_witness;
      note("invalid-witness", mask);
    }
    if (n < 2) continue;

    // Sign enumeration and reconstruction on small-range placements.
    const bool sign_stage = n <= c.audit_sign_max_n;
    const int samples = std::max(sign_stage ? c.audit_sign_samples : 0, c.audit_recon_embeddings);
    for (int k = 0; k < samples; ++k) {
      const auto f = small_range_placement(n, rng);
      const std::size_t raw = count_sign_classes(g, f);
      if (sign_stage && k < c.audit_sign_samples) {
        ++sign_checks;
        if (verdict.status == RigidityStatus::kRigid && raw != 1) {
          ++bad_sign;
          note("rigid-but-sign-enumeration-multiple", mask);
        }
      }
      if (k < c.audit_recon_embeddings) {
        ++recon_checks;
        ReconstructOptions options;
        options.class_limit = 0;
        options.node_budget = c.reconstruct_nodes;
        const auto result = reconstruct(g, lengths_of(g, to_embedding(f)), options);
        if (result.classes.size() != raw || result.budget_hit) {
          ++bad_recon;
          note("reconstruction-disagrees-with-sign-enumeration", mask);
        }
      }
    }
    if (verdict.status == RigidityStatus::kNotRigid && verdict.witness) {
      const auto wf = integer_coordinates(verdict.witness->f);
      const std::size_t raw = count_sign_classes(g, wf);
      if (sign_stage) {
        ++sign_checks;
        if (raw < 2) {
          ++bad_sign;
          note("witness-but-sign-enumeration-unique", mask);
        }
      }
      ++recon_checks;
      if (framework_rigidity(g, verdict.witness->f, c.reconstruct_nodes) != FrameworkStatus::kMultiple) {
        ++bad_recon;
        note("witness-but-reconstruction-unique", mask);
      }
    }
  }
  const std::uint64_t violations = bad_cut + bad_2conn + bad_witness + bad_sign + bad_recon;
  return {{"family", "connected-labeled"},
          {"n", n},
          {"graphs", graphs},
          {"rigid", rigid},
          {"not_rigid", not_rigid},
          {"unknown", unknown},
          {"matching_cut", with_cut},
          {"sign_checks", sign_checks},
          {"reconstruction_checks", recon_checks},
          {"violations",
           {{"cut_implies_not_rigid", bad_cut},
            {"rigid_implies_2_connected", bad_2conn},
            {"witness_valid", bad_witness},
            {"sign_enumeration", bad_sign},
            {"reconstruction", bad_recon}}},
          {"violation_total", violations},
          {"examples", examples}};
}

json audit_cubic8(const ExperimentConfig& c) {
  const auto graphs = enumerate_regular_graphs(8, 3);
  OracleOptions oracle;
  oracle.max_edges = c.oracle_max_edges;
  std::uint64_t not_rigid = 0, bad = 0;
  json verdicts = json::array();
  for (const auto& g : graphs) {
    const auto v = decide_global_rigidity(g, oracle);
    const bool ok = v.status == RigidityStatus::kNotRigid && v.witness && check_witness(g, *v.witness).ok();
    if (v.status == RigidityStatus::kNotRigid) ++not_rigid;
    if (!ok) ++bad;
    json edges = json::array();
    for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
    json entry = {{"edges", edges}, {"connected", is_connected(g)}, {"status", to_string(v.status)}};
    if (c.emit_witnesses && v.witness) entry["witness"] = to_json(*v.witness);
    verdicts.push_back(std::move(entry));
  }
  return {{"family", "cubic-8"},
          {"classes", graphs.size()},
          {"not_rigid", not_rigid},
          {"violation_total", bad},
          {"graphs", verdicts}};
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  const auto it = j.find(key);
  return it == j.end() ? fallback : it->template get<T>();
}

}  // namespace

// ---------------------------------------------------------------------------
// Config
// ---------------------------------------------------------------------------

ExperimentConfig default_config(const std::string& experiment) {
  ExperimentConfig c;
  c.experiment = experiment;
  if (experiment == "hitting-time") {
    c.n = 200;
    c.trials = 200;
    c.embeddings = 20;
  } else if (experiment == "sparse-core") {
    c.n = 3000;
    c.edge_factor = 40.0;
    c.eps = 0.05;
    c.trials = 50;
  } else if (experiment == "explore-sweep") {
    c.n = 100000;
    c.p = 1.1 / 100000.0;
    c.trials = 20;
    c.vertices = 200;
    c.subsets = 5;
  } else if (experiment == "cubic") {
    c.n = 1000;
    c.d = 3;
    c.trials = 100;
  } else if (experiment == "audit-small") {
    c.n = 7;
    c.trials = 1;
  } else {
    throw std::invalid_argument("unknown experiment '" + experiment + "'");
  }
  return c;
}

void validate(const ExperimentConfig& c) {
  auto fail = [&](const std::string& what) { throw std::invalid_argument(c.experiment + ": " + what); };
  if (c.trials < 1) fail("trials must be >= 1");
  if (c.z_floor.den <= 0 || c.z_floor.num <= 0 || c.z_floor.num > c.z_floor.den) fail("z-floor must lie in (0, 1]");
  if (!(c.sigma_const > 0)) fail("sigma-const must be positive");
  if (c.experiment == "hitting-time") {
    if (c.n < 3) fail("n must be >= 3");
    if (c.embeddings < 1) fail("embeddings must be >= 1");
  } else if (c.experiment == "sparse-core") {
    if (c.n < 2) fail("n must be >= 2");
    if (!(c.eps > 0 && c.eps < 1)) fail("eps must lie in (0, 1)");
    if (!(c.edge_factor > 0)) fail("edge factor C must be positive");
    const double max_m = static_cast<double>(c.n) * (c.n - 1) / 2.0;
    if (std::llround(c.edge_factor * c.n) > max_m) fail("C*n exceeds the number of vertex pairs");
  } else if (c.experiment == "explore-sweep") {
    if (c.n < 2) fail("n must be >= 2");
    if (!(c.p >= 0 && c.p <= 1)) fail("p must lie in [0, 1]");
    if (c.vertices < 1) fail("vertices must be >= 1");
    if (c.subsets < 0) fail("subsets must be >= 0");
    if (!(c.gamma >= 0)) fail("gamma must be >= 0");
  } else if (c.experiment == "cubic") {
    if (c.n < 1 || c.d < 0 || c.d >= c.n) fail("need 0 <= d < n");
    if ((static_cast<std::int64_t>(c.n) * c.d) % 2 != 0) fail("n*d must be even");
  } else if (c.experiment == "audit-small") {
    if (c.audit_max_n < 1 || c.audit_max_n > 8) fail("audit max n must lie in 1..8");
    if (c.audit_sign_max_n > c.audit_max_n) fail("sign-enumeration n exceeds the audit range");
  } else {
    fail("unknown experiment");
  }
}

json to_json(const ExperimentConfig& c) {
  return {{"experiment", c.experiment},
          {"n", c.n},
          {"p", c.p},
          {"edge_factor", c.edge_factor},
          {"d", c.d},
          {"trials", c.trials},
          {"seed", c.seed},
          {"embeddings", c.embeddings},
          {"vertices", c.vertices},
          {"subsets", c.subsets},
          {"eps", c.eps},
          {"sigma_const", c.sigma_const},
          {"z_floor", c.z_floor.str()},
          {"gamma", c.gamma},
          {"falsifier_samples", c.falsifier_samples},
          {"pass_threshold", c.pass_threshold},
          {"success_threshold", c.success_threshold},
          {"core_trial_threshold", c.core_trial_threshold},
          {"forbidden_max_fraction", c.forbidden_max_fraction},
          {"reconstruct_nodes", c.reconstruct_nodes},
          {"oracle_max_edges", c.oracle_max_edges},
          {"exact_cut_limit", c.exact_cut_limit},
          {"regular_restarts", c.regular_restarts},
          {"audit_max_n", c.audit_max_n},
          {"audit_sign_max_n", c.audit_sign_max_n},
          {"audit_sign_samples", c.audit_sign_samples},
          {"audit_recon_embeddings", c.audit_recon_embeddings},
          {"audit_cubic", c.audit_cubic},
          {"emit_witnesses", c.emit_witnesses}};
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c = default_config(j.at("experiment").get<std::string>());
  c.n = get_or(j, "n", c.n);
  c.p = get_or(j, "p", c.p);
  c.edge_factor = get_or(j, "edge_factor", c.edge_factor);
  c.d = get_or(j, "d", c.d);
  c.trials = get_or(j, "trials", c.trials);
  c.seed = get_or(j, "seed", c.seed);
  c.embeddings = get_or(j, "embeddings", c.embeddings);
  c.vertices = get_or(j, "vertices", c.vertices);
  c.subsets = get_or(j, "subsets", c.subsets);
  c.eps = get_or(j, "eps", c.eps);
  c.sigma_const = get_or(j, "sigma_const", c.sigma_const);
  if (j.contains("z_floor")) c.z_floor = Ratio::parse(j.at("z_floor").get<std::string>());
  c.gamma = get_or(j, "gamma", c.gamma);
  c.falsifier_samples = get_or(j, "falsifier_samples", c.falsifier_samples);
  c.pass_threshold = get_or(j, "pass_threshold", c.pass_threshold);
  c.success_threshold = get_or(j, "success_threshold", c.success_threshold);
  c.core_trial_threshold = get_or(j, "core_trial_threshold", c.core_trial_threshold);
  c.forbidden_max_fraction = get_or(j, "forbidden_max_fraction", c.forbidden_max_fraction);
  c.reconstruct_nodes = get_or(j, "reconstruct_nodes", c.reconstruct_nodes);
  c.oracle_max_edges = get_or(j, "oracle_max_edges", c.oracle_max_edges);
  c.exact_cut_limit = get_or(j, "exact_cut_limit", c.exact_cut_limit);
  c.regular_restarts = get_or(j, "regular_restarts", c.regular_restarts);
  c.audit_max_n = get_or(j, "audit_max_n", c.audit_max_n);
  c.audit_sign_max_n = get_or(j, "audit_sign_max_n", c.audit_sign_max_n);
  c.audit_sign_samples = get_or(j, "audit_sign_samples", c.audit_sign_samples);
  c.audit_recon_embeddings = get_or(j, "audit_recon_embeddings", c.audit_recon_embeddings);
  c.audit_cubic = get_or(j, "audit_cubic", c.audit_cubic);
  c.emit_witnesses = get_or(j, "emit_witnesses", c.emit_witnesses);
  return c;
}

Graph trial_graph(const ExperimentConfig& c, std::uint64_t trial_seed) {
  const std::uint64_t s = derive_seed(trial_seed, 0);
  if (c.experiment == "hitting-time") {
    const auto trace = run_process_to_min_degree(c.n, 2, s);
    return trace.prefix(trace.tau);
  }
  if (c.experiment == "sparse-core") return gen_gnm(c.n, std::llround(c.edge_factor * c.n), s);
  if (c.experiment == "explore-sweep") return gen_gnp(c.n, c.p, s);
  if (c.experiment == "cubic") return gen_random_regular(c.n, c.d, s, {c.regular_restarts});
  throw std::invalid_argument("trial_graph: no trial graph for '" + c.experiment + "'");
}

std::size_t count_sign_classes(const Graph& g, const std::vector<std::int64_t>& f) {
  const int n = g.order();
  if (n <= 1) return 1;
  std::vector<Vertex> order{0}, parent(static_cast<std::size_t>(n), -1);
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  seen[0] = 1;
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (const Vertex y : g.neighbors(order[head])) {
      if (!seen[y]) {
        seen[y] = 1;
        parent[y] = order[head];
        order.push_back(y);
      }
    }
  }
  if (static_cast<int>(order.size()) != n) throw std::invalid_argument("count_sign_classes: graph must be connected");
  std::size_t classes = 0;
  std::vector<std::int64_t> x(static_cast<std::size_t>(n));
  // Bit k-1 of `signs` is the sign of the tree edge into order[k]; the edge
  // into order[1] is always +.
  for (std::uint64_t signs = 0; signs < (1ULL << (n - 2)); ++signs) {
    x[0] = 0;
    for (int k = 1; k < n; ++k) {
      const Vertex v = order[static_cast<std::size_t>(k)];
      const Vertex p = parent[v];
      const std::int64_t len = std::abs(f[v] - f[p]);
      const bool minus = k >= 2 && (signs >> (k - 2) & 1ULL);
      x[v] = minus ? x[p] - len : x[p] + len;
    }
    bool ok = true;
    for (const Edge& e : g.edges()) {
      if (std::abs(x[e.u] - x[e.v]) != std::abs(f[e.u] - f[e.v])) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    auto sorted = x;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
    ++classes;
  }
  return classes;
}

// ---------------------------------------------------------------------------
// Experiments
// ---------------------------------------------------------------------------

ExperimentReport cmd_hitting_time(const ExperimentConfig& c, const RunOptions& options) {
  check_config_name(c, "hitting-time");
  const auto t0 = std::chrono::steady_clock::now();
  auto trials =
      run_trials(c, c.trials, options, [&](int, std::uint64_t seed) { return hitting_time_trial(c, seed); });
  std::uint64_t unique = 0, total = 0, all_unique = 0, hitting_ok = 0, budget = 0;
  double tau_sum = 0;
  std::int64_t tau_min = INT64_MAX, tau_max = 0;
  for (const auto& t : trials) {
    unique += t.data["unique"].get<std::uint64_t>();
    budget += t.data["budget"].get<std::uint64_t>();
    total += t.data["embeddings"].get<std::uint64_t>();
    all_unique += t.data["all_unique"].get<bool>();
    hitting_ok += t.data["hitting_ok"].get<bool>();
    const auto tau = t.data["tau"].get<std::int64_t>();
    tau_sum += static_cast<double>(tau);
    tau_min = std::min(tau_min, tau);
    tau_max = std::max(tau_max, tau);
  }
  const double n = c.n;
  const double pass = fraction(unique, total);
  json summary = {{"embedding_pass_fraction", pass},
                  {"trial_pass_fraction", fraction(all_unique, trials.size())},
                  {"budget_exhausted", budget},
                  {"hitting_ok_fraction", fraction(hitting_ok, trials.size())},
                  {"tau_mean", tau_sum / static_cast<double>(trials.size())},
                  {"tau_min", tau_min},
                  {"tau_max", tau_max},
                  {"tau_asymptotic", n / 2 * (std::log(n) + std::log(std::log(n)))},
                  {"pass_threshold", c.pass_threshold},
                  {"meets_threshold", pass >= c.pass_threshold && hitting_ok == trials.size()}};
  return make_report(c, std::move(trials), std::move(summary), options, t0);
}

ExperimentReport cmd_sparse_core(const ExperimentConfig& c, const RunOptions& options) {
  check_config_name(c, "sparse-core");
  const auto t0 = std::chrono::steady_clock::now();
  auto trials =
      run_trials(c, c.trials, options, [&](int, std::uint64_t seed) { return sparse_core_trial(c, seed); });
  std::uint64_t core_ok = 0, deficient_ok = 0, violations = 0, violations_core = 0, exact = 0;
  double min_fraction = 1.0;
  for (const auto& t : trials) {
    core_ok += t.data["core_ok"].get<bool>();
    deficient_ok += t.data["deficient_ok"].get<bool>();
    exact += t.data["deficient_exact"].get<bool>();
    violations += t.data["violations"].get<std::uint64_t>();
    violations_core += t.data["violations_core"].get<std::uint64_t>();
    min_fraction = std::min(min_fraction, t.data["core_fraction"].get<double>());
  }
  // Complete graph control: nothing to peel and no empty pair.
  const int k = std::min(c.n, 60);
  const Graph control = Graph::complete(k);
  Rng control_rng(derive_seed(c.seed, 0xc0117201ULL));
  const auto control_set = find_deficient_set(control, c.eps);
  const auto control_fals =
      falsify_cross_property(control, static_cast<int>(std::max<std::int64_t>(1, ceil_rate(c.eps, k))), 1000, control_rng);

  const double core_fraction = fraction(core_ok, trials.size());
  json summary = {{"core_ok_fraction", core_fraction},
                  {"min_core_fraction", min_fraction},
                  {"deficient_ok_fraction", fraction(deficient_ok, trials.size())},
                  {"deficient_exact_trials", exact},
                  {"violations", violations},
                  {"violations_core", violations_core},
                  {"control", {{"n", k}, {"deficient_size", control_set.vertices.size()}, {"violations", control_fals.violations}}},
                  {"core_trial_threshold", c.core_trial_threshold},
                  {"meets_threshold", core_fraction >= c.core_trial_threshold && violations == 0 &&
                                          deficient_ok == trials.size()}};
  const double needed = 2.0 / (c.eps * c.eps);
  if (!(c.edge_factor > needed)) {
    std::ostringstream w;
    w << "edge factor C=" << c.edge_factor << " does not exceed 2/eps^2=" << needed;
    summary["warnings"] = json::array({w.str()});
  }
  return make_report(c, std::move(trials), std::move(summary), options, t0);
}

ExperimentReport cmd_explore_sweep(const ExperimentConfig& c, const RunOptions& options) {
  check_config_name(c, "explore-sweep");
  const auto t0 = std::chrono::steady_clock::now();
  auto trials =
      run_trials(c, c.trials, options, [&](int, std::uint64_t seed) { return explore_sweep_trial(c, seed); });
  std::uint64_t sampled = 0, successes = 0, cut_verified = 0, bound_ok = 0, tried = 0, certified = 0;
  std::uint64_t max_a = 0;
  double max_ratio = 0.0;
  bool clamped = false;
  for (const auto& t : trials) {
    sampled += t.data["sampled"].get<std::uint64_t>();
    successes += t.data["successes"].get<std::uint64_t>();
    cut_verified += t.data["cut_verified"].get<std::uint64_t>();
    bound_ok += t.data["bound_ok"].get<std::uint64_t>();
    tried += t.data["subsets_tried"].get<std::uint64_t>();
    certified += t.data["certified"].get<std::uint64_t>();
    max_a = std::max(max_a, t.data["max_a_v"].get<std::uint64_t>());
    max_ratio = std::max(max_ratio, t.data["max_a_v_over_ln_n"].get<double>());
    clamped = clamped || t.data["subset_clamped"].get<bool>();
  }
  const double success = fraction(successes, sampled);
  const double cert_rate = fraction(certified, tried);
  json summary = {{"success_fraction", success},
                  {"cut_verified_fraction", fraction(cut_verified, successes)},
                  {"bound_ok_fraction", fraction(bound_ok, successes)},
                  {"max_a_v", max_a},
                  {"max_a_v_over_ln_n", max_ratio},
                  {"subsets_tried", tried},
                  {"certified", certified},
                  {"certification_rate", cert_rate},
                  {"subset_clamped", clamped},
                  {"success_threshold", c.success_threshold},
                  {"pass_threshold", c.pass_threshold},
                  {"meets_threshold", success >= c.success_threshold && cut_verified == successes &&
                                          bound_ok == successes && tried > 0 && cert_rate >= c.pass_threshold}};
  json warnings = json::array();
  if (c.p > 1.1 / c.n * (1 + 1e-12)) warnings.push_back("p exceeds 1.1/n, outside the sparse regime");
  if (clamped) warnings.push_back("ceil(gamma ln n) exceeds n; subsets clamped to V");
  if (!warnings.empty()) summary["warnings"] = std::move(warnings);
  return make_report(c, std::move(trials), std::move(summary), options, t0);
}

ExperimentReport cmd_cubic(const ExperimentConfig& c, const RunOptions& options) {
  check_config_name(c, "cubic");
  const auto t0 = std::chrono::steady_clock::now();
  auto trials = run_trials(c, c.trials, options, [&](int, std::uint64_t seed) { return cubic_trial(c, seed); });
  std::uint64_t certified = 0, witness_ok = 0, forbidden = 0;
  for (const auto& t : trials) {
    certified += t.data["certified"].get<bool>();
    witness_ok += t.data["witness_ok"].get<bool>();
    forbidden += t.data["forbidden"].get<bool>();
  }
  const double rate = fraction(witness_ok, trials.size());
  const double forbidden_rate = fraction(forbidden, trials.size());
  const json petersen = fixture_json(Graph::petersen());
  const json k4 = fixture_json(Graph::complete(4));
  json summary = {{"certificate_rate", fraction(certified, trials.size())},
                  {"witness_rate", rate},
                  {"forbidden_fraction", forbidden_rate},
                  {"fixtures", {{"petersen", petersen}, {"K4", k4}}},
                  {"pass_threshold", c.pass_threshold},
                  {"forbidden_max_fraction", c.forbidden_max_fraction},
                  {"meets_threshold", rate >= c.pass_threshold && forbidden_rate <= c.forbidden_max_fraction &&
                                          petersen["witness_ok"].get<bool>()}};
  return make_report(c, std::move(trials), std::move(summary), options, t0);
}

ExperimentReport cmd_audit_small(const ExperimentConfig& c, const RunOptions& options) {
  check_config_name(c, "audit-small");
  const auto t0 = std::chrono::steady_clock::now();
  const int orders = c.audit_max_n;
  const int count = orders + (c.audit_cubic ? 1 : 0);
  auto trials = run_trials(c, count, options, [&](int i, std::uint64_t seed) {
    return i < orders ? audit_order(c, i + 1, seed) : audit_cubic8(c);
  });
  std::uint64_t violations = 0, graphs = 0;
  json per_n = json::object();
  for (const auto& t : trials) {
    violations += t.data["violation_total"].get<std::uint64_t>();
    if (t.data["family"] == "connected-labeled") {
      graphs += t.data["graphs"].get<std::uint64_t>();
      per_n[std::to_string(t.data["n"].get<int>())] = {{"graphs", t.data["graphs"]}, {"rigid", t.data["rigid"]},
                                                         {"not_rigid", t.data["not_rigid"]}};
    }
  }
  json summary = {{"graphs", graphs}, {"per_n", per_n}, {"violations", violations}, {"meets_threshold", violations == 0}};
  if (c.audit_cubic) {
    const auto& cub = trials.back().data;
    summary["cubic8"] = {{"classes", cub["classes"]}, {"not_rigid", cub["not_rigid"]}};
  }
  return make_report(c, std::move(trials), std::move(summary), options, t0);
}

ExperimentReport run_experiment(const ExperimentConfig& c, const RunOptions& options) {
  if (c.experiment == "hitting-time") return cmd_hitting_time(c, options);
  if (c.experiment == "sparse-core") return cmd_sparse_core(c, options);
  if (c.experiment == "explore-sweep") return cmd_explore_sweep(c, options);
  if (c.experiment == "cubic") return cmd_cubic(c, options);
  if (c.experiment == "audit-small") return cmd_audit_small(c, options);
  throw std::invalid_argument("unknown experiment '" + c.experiment + "'");
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

json trial_to_json(const TrialRecord& r, bool with_side) {
  json out = {{"type", "trial"}, {"trial", r.trial}, {"seed", r.seed}, {"data", r.data}};
  if (with_side) out["side"] = {{"wall_seconds", r.wall_seconds}};
  return out;
}

void write_jsonl(std::ostream& out, const ExperimentReport& report) {
  out << json{{"type", "config"}, {"config", to_json(report.config)}}.dump() << '\n';
  for (const auto& t : report.trials) out << trial_to_json(t).dump() << '\n';
  out << json{{"type", "summary"}, {"summary", report.summary}, {"side", report.side}}.dump() << '\n';
}

ExperimentReport read_jsonl(std::istream& in) {
  ExperimentReport report;
  bool have_config = false;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    const auto type = j.at("type").get<std::string>();
    if (type == "config") {
      report.config = config_from_json(j.at("config"));
      have_config = true;
    } else if (type == "trial") {
      TrialRecord r;
      r.trial = j.at("trial").get<int>();
      r.seed = j.at("seed").get<std::uint64_t>();
      r.data = j.at("data");
      if (j.contains("side")) r.wall_seconds = j["side"].value("wall_seconds", 0.0);
      report.trials.push_back(std::move(r));
    } else if (type == "summary") {
      report.summary = j.at("summary");
      report.side = j.value("side", json::object());
    }
  }
  if (!have_config) throw std::runtime_error("read_jsonl: no config line");
  return report;
}

void write_csv(std::ostream& out, const ExperimentReport& report) {
  std::vector<std::string> columns;
  for (const auto& t : report.trials) {
    for (const auto& [key, value] : t.data.items()) {
      if (value.is_primitive() && std::find(columns.begin(), columns.end(), key) == columns.end()) {
        columns.push_back(key);
      }
    }
  }
  out << "experiment,trial,seed";
  for (const auto& col : columns) out << ',' << col;
  out << '\n';
  auto cell = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  for (const auto& t : report.trials) {
    out << report.config.experiment << ',' << t.trial << ',' << t.seed;
    for (const auto& col : columns) {
      out << ',';
      if (const auto it = t.data.find(col); it != t.data.end()) out << cell(*it);
    }
    out << '\n';
  }
  out << "\nsummary_key,value\n";
  for (const auto& [key, value] : report.summary.items()) {
    if (value.is_primitive()) out << key << ',' << cell(value) << '\n';
  }
}

std::size_t revalidate_report(const ExperimentReport& report) {
  const auto& c = report.config;
  std::size_t checked = 0;
  auto fail = [&](const TrialRecord& t, const std::string& what) {
    throw std::runtime_error(c.experiment + " trial " + std::to_string(t.trial) + ": " + what);
  };
  for (const auto& t : report.trials) {
    const auto& d = t.data;
    if (c.experiment == "audit-small") {
      if (!d.contains("graphs") || !d["graphs"].is_array()) continue;
      for (const auto& entry : d["graphs"]) {
        if (!entry.contains("witness")) continue;
        std::vector<Edge> edges;
        for (const auto& e : entry["edges"]) edges.emplace_back(e[0].get<Vertex>(), e[1].get<Vertex>());
        const Graph g(8, std::move(edges));
        if (!check_witness(g, witness_from_json(entry["witness"])).ok()) fail(t, "cubic-8 witness invalid");
        ++checked;
      }
      continue;
    }
    const bool needs_graph = d.contains("witness") || d.contains("certificates") || d.contains("deficient_set") ||
                             d.contains("violation");
    if (!needs_graph) continue;
    const Graph g = trial_graph(c, t.seed);
    if (d.contains("witness")) {
      if (!check_witness(g, witness_from_json(d["witness"])).ok()) fail(t, "witness invalid");
      ++checked;
    }
    if (d.contains("deficient_set")) {
      const auto a = d["deficient_set"].get<std::vector<Vertex>>();
      if (open_neighbourhood(g, a).size() > a.size() || static_cast<double>(a.size()) > c.eps * g.order() + 1e-9) {
        fail(t, "deficient set violates its inequalities");
      }
      ++checked;
    }
    if (d.contains("violation")) {
      const auto u = d["violation"]["U"].get<std::vector<Vertex>>();
      const auto w = d["violation"]["W"].get<std::vector<Vertex>>();
      for (const Vertex x : u)
        for (const Vertex y : w)
          if (g.has_edge(x, y)) fail(t, "reported cross-property violation has an edge");
      ++checked;
    }
    if (d.contains("certificates")) {
      for (const auto& entry : d["certificates"]) {
        if (!entry.contains("subset")) continue;
        std::vector<Vertex> subset;
        if (entry["subset"].is_string()) {
          subset.resize(static_cast<std::size_t>(g.order()));
          std::iota(subset.begin(), subset.end(), 0);
        } else {
          subset = entry["subset"].get<std::vector<Vertex>>();
        }
        const auto sub = induced(g, subset);
        std::vector<Vertex> local(static_cast<std::size_t>(g.order()), -1);
        for (std::size_t i = 0; i < subset.size(); ++i) local[static_cast<std::size_t>(subset[i])] = static_cast<Vertex>(i);
        CutCertificate cut;
        std::vector<char> in_a(subset.size(), 0);
        for (const Vertex x : entry["A"].get<std::vector<Vertex>>()) {
          if (local[static_cast<std::size_t>(x)] < 0) fail(t, "certificate vertex outside V'");
          in_a[static_cast<std::size_t>(local[static_cast<std::size_t>(x)])] = 1;
        }
        for (std::size_t i = 0; i < subset.size(); ++i) (in_a[i] ? cut.a : cut.b).push_back(static_cast<Vertex>(i));
        if (!is_valid_cut(sub.graph, cut)) fail(t, "subset certificate invalid");
        if (!check_witness(sub.graph, build_witness_pair(sub.graph, cut)).ok()) fail(t, "subset witness invalid");
        ++checked;
      }
    }
  }
  return checked;
}

}  // namespace rigid1d
