#include <doctest.h>

#include <sstream>

#include "rigid1d/experiments.hpp"
#include "rigid1d/rng.hpp"
#include "rigid1d/structure.hpp"

using namespace rigid1d;
using nlohmann::json;

namespace {

ExperimentConfig small(const std::string& name) {
  ExperimentConfig c = default_config(name);
  c.seed = 7;
  if (name == "hitting-time") {
    c.n = 40;
    c.trials = 4;
    c.embeddings = 5;
  } else if (name == "sparse-core") {
    c.n = 400;
    c.trials = 3;
    c.falsifier_samples = 2000;
  } else if (name == "explore-sweep") {
    c.n = 2000;
    c.p = 1.1 / 2000;
    c.trials = 2;
    c.vertices = 30;
    c.subsets = 3;
  } else if (name == "cubic") {
    c.n = 100;
    c.trials = 6;
  } else {
    c.audit_max_n = 4;
    c.audit_sign_max_n = 4;
    c.audit_sign_samples = 5;
  }
  return c;
}

std::vector<json> records(const ExperimentReport& r) {
  std::vector<json> out;
  for (const auto& t : r.trials) out.push_back(trial_to_json(t, false));
  return out;
}

const char* const kNames[] = {"hitting-time", "sparse-core", "explore-sweep", "cubic", "audit-small"};

}  // namespace

TEST_CASE("defaults validate and serialize") {
  for (const char* name : kNames) {
    const auto c = default_config(name);
    CHECK_NOTHROW(validate(c));
    const auto back = config_from_json(to_json(c));
    CHECK(to_json(back) == to_json(c));
  }
  CHECK_THROWS(default_config("nope"));
}

TEST_CASE("config validation") {
  auto c = default_config("hitting-time");
  c.n = 2;
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
  c = default_config("cubic");
  c.n = 7;
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
  c = default_config("sparse-core");
  c.eps = 1.5;
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
  c = default_config("explore-sweep");
  c.trials = 0;
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
  CHECK_THROWS_AS(cmd_cubic(default_config("sparse-core")), std::invalid_argument);
}

TEST_CASE("reruns reproduce identical records for every experiment") {
  for (const char* name : kNames) {
    CAPTURE(name);
    const auto c = small(name);
    const auto a = run_experiment(c, {1, {}});
    const auto b = run_experiment(c, {3, {}});
    CHECK(records(a) == records(b));
    CHECK(a.summary == b.summary);
    CHECK(a.trials.size() == (std::string(name) == "audit-small" ? 5u : static_cast<std::size_t>(c.trials)));
    for (std::size_t i = 0; i < a.trials.size(); ++i) {
      CHECK(a.trials[i].trial == static_cast<int>(i));
      CHECK(a.trials[i].seed == derive_seed(c.seed, i));
    }
    CHECK(a.summary.contains("meets_threshold"));
  }
}

TEST_CASE("reports survive a JSON-lines round trip and revalidate") {
  for (const char* name : kNames) {
    CAPTURE(name);
    const auto report = run_experiment(small(name), {2, {}});
    std::stringstream io;
    write_jsonl(io, report);
    const auto back = read_jsonl(io);
    CHECK(to_json(back.config) == to_json(report.config));
    CHECK(records(back) == records(report));
    CHECK(back.summary == report.summary);
    CHECK_NOTHROW(revalidate_report(back));
    const auto rerun = run_experiment(back.config, {1, {}});
    CHECK(records(rerun) == records(report));
  }
}

TEST_CASE("revalidation catches a tampered witness") {
  auto report = run_experiment(small("cubic"), {1, {}});
  bool tampered = false;
  for (auto& t : report.trials) {
    if (!t.data.contains("witness")) continue;
    t.data["witness"]["g"]["0"] = "12345";
    tampered = true;
    break;
  }
  REQUIRE(tampered);
  CHECK_THROWS_AS(revalidate_report(report), std::runtime_error);
}

TEST_CASE("CSV output has a header, one row per trial and summary rows") {
  const auto report = run_experiment(small("cubic"), {1, {}});
  std::stringstream out;
  write_csv(out, report);
  std::string line;
  std::getline(out, line);
  CHECK(line.rfind("experiment,trial,seed", 0) == 0);
  int rows = 0;
  while (std::getline(out, line) && !line.empty()) ++rows;
  CHECK(rows == report.config.trials);
  std::getline(out, line);
  CHECK(line == "summary_key,value");
}

TEST_CASE("small-scale experiment outcomes") {
  auto h = default_config("hitting-time");
  h.n = 3;
  h.trials = 1;
  const auto r3 = cmd_hitting_time(h);
  CHECK(r3.trials[0].data["tau"] == 3);
  CHECK(r3.summary["embedding_pass_fraction"] == 1.0);

  auto e = small("explore-sweep");
  e.p = 0.0;
  const auto empty = cmd_explore_sweep(e);
  CHECK(empty.summary["success_fraction"] == 1.0);
  CHECK(empty.summary["max_a_v"] == 1);
  CHECK(empty.summary["certification_rate"] == 1.0);

  const auto cub = cmd_cubic(small("cubic"));
  CHECK(cub.summary["fixtures"]["petersen"]["witness_ok"] == true);
  CHECK(cub.summary["fixtures"]["K4"]["certified"] == false);

  const auto audit = cmd_audit_small(small("audit-small"));
  CHECK(audit.summary["violations"] == 0);
  CHECK(audit.summary["per_n"]["4"]["graphs"] == 38);
  CHECK(audit.summary["cubic8"]["classes"] == 6);
  CHECK(audit.summary["cubic8"]["not_rigid"] == 6);
}

TEST_CASE("trial graphs are rebuilt from trial seeds") {
  const auto c = small("cubic");
  const auto report = cmd_cubic(c);
  for (const auto& t : report.trials) {
    const Graph g = trial_graph(c, t.seed);
    CHECK(g.order() == c.n);
    CHECK(static_cast<int>(t.data["girth"].get<std::size_t>()) == girth(g));
  }
}

TEST_CASE("sign-class counting reference") {
  CHECK(count_sign_classes(Graph::cycle(4), {0, 1, 3, 2}) == 2);
  CHECK(count_sign_classes(Graph::cycle(4), {0, 1, 5, 3}) == 1);
  CHECK(count_sign_classes(Graph::path(3), {0, 1, 3}) == 2);
  CHECK(count_sign_classes(Graph::complete(3), {0, 1, 3}) == 1);
  CHECK_THROWS(count_sign_classes(Graph(3), {0, 1, 2}));
}
