#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>

#include "ctbn/ctpc.hpp"
#include "ctbn/ctss.hpp"
#include "ctbn/io.hpp"
#include "fixtures.hpp"

using namespace ctbn;
using nlohmann::json;

namespace {

bool throws_mentioning(const std::function<void()>& fn, const std::string& needle) {
  try {
    fn();
  } catch (const std::invalid_argument& e) {
    return std::string(e.what()).find(needle) != std::string::npos;
  }
  return false;
}

CtbnModel awkward_model() {
  GenConfig gc;
  gc.nodes = 4;
  gc.density = 0.4;
  gc.cardinality = 3;
  gc.rate_min = 0.371;
  gc.rate_max = 9.113;
  gc.seed = 606;
  return generate_model(gc);
}

}  // namespace

TEST_CASE("model JSON round-trips exactly") {
  for (const CtbnModel& model : {fixtures::cycle3(), awkward_model()}) {
    const json j = model_to_json(model);
    const CtbnModel back = model_from_json(j);

    CHECK(back.variables == model.variables);
    CHECK(back.graph == model.graph);
    REQUIRE(back.cims.size() == model.cims.size());
    for (std::size_t k = 0; k < model.cims.size(); ++k) {
      CHECK(back.cims[k].parents == model.cims[k].parents);
      CHECK(back.cims[k].matrices == model.cims[k].matrices);  // bitwise doubles
    }
    CHECK(back.initial == model.initial);
    CHECK(model_to_json(back).dump() == j.dump());
  }
}

TEST_CASE("dataset JSON round-trips exactly") {
  const Dataset ds = fixtures::sample(awkward_model(), 4, 6.0, 607);
  const json j = dataset_to_json(ds);
  const Dataset back = dataset_from_json(j);

  CHECK(back.variables == ds.variables);
  REQUIRE(back.trajectories.size() == ds.trajectories.size());
  for (std::size_t i = 0; i < ds.trajectories.size(); ++i) {
    const Trajectory& a = ds.trajectories[i];
    const Trajectory& b = back.trajectories[i];
    CHECK(b.initial == a.initial);
    CHECK(b.duration == a.duration);
    CHECK(b.ended_early == a.ended_early);
    REQUIRE(b.events.size() == a.events.size());
    for (std::size_t e = 0; e < a.events.size(); ++e) {
      CHECK(b.events[e].time == a.events[e].time);  // bitwise
      CHECK(b.events[e].var == a.events[e].var);
      CHECK(b.events[e].state == a.events[e].state);
    }
  }
  CHECK(dataset_to_json(back).dump() == j.dump());
}

TEST_CASE("malformed model files are reported as such") {
  const json good = model_to_json(fixtures::chain2());

  json missing = good;
  missing.erase("cims");
  CHECK(throws_mentioning([&] { model_from_json(missing); }, "malformed model file"));

  json unknown_arc = good;
  unknown_arc["arcs"].push_back({"X0", "NOPE"});
  CHECK(throws_mentioning([&] { model_from_json(unknown_arc); }, "unknown variable name"));

  json bad_matrix = good;
  bad_matrix["cims"][0]["matrices"][0] = {1.0, 2.0, 3.0};
  CHECK(throws_mentioning([&] { model_from_json(bad_matrix); }, "matrix size"));

  json bad_card = good;
  bad_card["variables"][0]["cardinality"] = 1;
  CHECK(throws_mentioning([&] { model_from_json(bad_card); }, "cardinality"));

  json broken_rows = good;
  broken_rows["cims"][0]["matrices"][0] = {-1.0, 0.5, 1.0, -1.0};  // row sums off
  CHECK(throws_mentioning([&] { model_from_json(broken_rows); }, "invalid model"));

  json wrong_count = good;
  wrong_count["cims"].erase(1);
  CHECK(throws_mentioning([&] { model_from_json(wrong_count); }, "one conditional intensity"));
}

TEST_CASE("malformed dataset files are reported as such") {
  const json good = dataset_to_json(fixtures::sample(fixtures::chain2(), 2, 5.0, 608));

  json missing = good;
  missing["trajectories"][0].erase("duration");
  CHECK(throws_mentioning([&] { dataset_from_json(missing); }, "malformed dataset file"));

  json decreasing = good;
  decreasing["trajectories"][0]["events"] = {{2.0, 0, 1}, {1.0, 0, 0}};
  CHECK(throws_mentioning([&] { dataset_from_json(decreasing); }, "trajectory 0"));

  json bad_state = good;
  bad_state["trajectories"][0]["initial"] = {0, 7};
  CHECK_THROWS_AS((void)dataset_from_json(bad_state), std::invalid_argument);

  /* ended_early is optional and defaults to false */
  json no_flag = good;
  no_flag["trajectories"][0].erase("ended_early");
  CHECK(dataset_from_json(no_flag).trajectories[0].ended_early == false);
}

TEST_CASE("graph files round-trip and validate the node list") {
  const CtbnModel model = fixtures::cycle3();
  const json j = graph_to_json(model.graph, model.variables);
  CHECK(graph_from_json(j, model.variables) == model.graph);

  const std::vector<VariableSpec> renamed = {{"A", 2}, {"B", 2}, {"C", 2}};
  CHECK(throws_mentioning([&] { graph_from_json(j, renamed); }, "node list"));

  std::vector<VariableSpec> fewer = model.variables;
  fewer.pop_back();
  CHECK(throws_mentioning([&] { graph_from_json(j, fewer); }, "node list"));
}

TEST_CASE("a learned-structure file may be a graph or a whole model") {
  const CtbnModel model = fixtures::cycle3();
  const json as_graph = graph_to_json(model.graph, model.variables);
  const json as_model = model_to_json(model);
  CHECK(graph_from_model_or_graph_json(as_graph, model.variables) == model.graph);
  CHECK(graph_from_model_or_graph_json(as_model, model.variables) == model.graph);

  const std::vector<VariableSpec> other = {{"A", 2}, {"B", 2}, {"C", 2}};
  CHECK(throws_mentioning([&] { graph_from_model_or_graph_json(as_model, other); },
                          "do not match"));
}

TEST_CASE("sufficient statistics export names variables and lays out cells") {
  Dataset ds;
  ds.variables = {{"X", 2}, {"Y", 2}};
  Trajectory tr;
  tr.initial = {0, 0};
  tr.duration = 5.0;
  tr.events = {{1.0, 1, 1}, {2.0, 0, 1}, {3.5, 1, 0}};
  ds.trajectories.push_back(tr);

  const SuffStats s = compute_suffstats(ds, 0, {1});
  const json j = suffstats_to_json(s, ds.variables);
  CHECK(j["target"] == "X");
  CHECK(j["cond"] == json::array({"Y"}));
  CHECK(j["time"][0][0] == 1.0);
  CHECK(j["time"][1][1] == 1.5);
  CHECK(j["counts"][1][0][1] == 1.0);
}

TEST_CASE("verdict and score exports carry readable names") {
  const Dataset ds = fixtures::sample(fixtures::chain2(), 20, 10.0, 609);

  const CtpcResult pc = learn_structure_ctpc(ds, CtpcConfig{});
  const json jv = verdicts_to_json(pc, ds.variables);
  REQUIRE(jv["nodes"].size() == 2);
  CHECK(jv["nodes"][1]["node"] == "X1");
  bool found_record = false;
  for (const auto& node : jv["nodes"]) {
    for (const auto& verdict : node["verdicts"]) {
      CHECK(verdict.contains("independent"));
      for (const auto& rec : verdict["records"]) {
        found_record = true;
        const std::string kind = rec["kind"].get<std::string>();
        CHECK((kind == "F" || kind == "X" || kind == "K"));
        const std::string d = rec["decision"].get<std::string>();
        CHECK((d == "accept" || d == "reject" || d == "insufficient"));
      }
    }
  }
  CHECK(found_record);

  const CtssResult ss = learn_structure_ctss(ds, CtssConfig{});
  const json js = scores_to_json(ss, ds.variables);
  CHECK(js["sets_scored"].get<long long>() == ss.sets_scored);
  REQUIRE(js["nodes"].size() == 2);
  CHECK(js["nodes"][1]["parents"] == json::array({"X0"}));
  CHECK(js["nodes"][0]["total"].get<double>() == ss.scores[0].total);
}

TEST_CASE("CSV export writes one fully expanded row per event") {
  Dataset ds;
  ds.variables = {{"X", 2}, {"Y", 2}};
  Trajectory tr;
  tr.initial = {0, 0};
  tr.duration = 5.0;
  tr.events = {{1.0, 1, 1}, {2.0, 0, 1}, {3.5, 1, 0}};
  ds.trajectories.push_back(tr);
  Trajectory still;
  still.initial = {1, 0};
  still.duration = 2.0;
  ds.trajectories.push_back(still);

  std::ostringstream out;
  write_dataset_csv(ds, out);
  CHECK(out.str() ==
        "trajectory,time,X,Y\n"
        "0,0,0,0\n"
        "0,1,0,1\n"
        "0,2,1,1\n"
        "0,3.5,1,0\n"
        "1,0,1,0\n");
}

TEST_CASE("CSV timestamps survive a parse back to double") {
  const Dataset ds = fixtures::sample(fixtures::chain2(), 2, 4.0, 610);
  std::ostringstream out;
  write_dataset_csv(ds, out);

  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);  // header
  std::size_t row = 0;
  std::vector<double> times;
  while (std::getline(in, line)) {
    const auto first = line.find(',');
    const auto second = line.find(',', first + 1);
    times.push_back(std::stod(line.substr(first + 1, second - first - 1)));
    ++row;
  }
  std::size_t k = 0;
  for (const Trajectory& tr : ds.trajectories) {
    CHECK(times.at(k++) == 0.0);
    for (const TrajectoryEvent& ev : tr.events) CHECK(times.at(k++) == ev.time);
  }
  CHECK(k == row);
}

TEST_CASE("generator configs parse required and optional keys") {
  const json j = {{"nodes", 6},        {"density", 0.25},   {"cardinality", 3},
                  {"trajectories", 9}, {"duration", 12.5},  {"seed", 42}};
  const GenConfig c = gen_config_from_json(j);
  CHECK(c.nodes == 6);
  CHECK(c.density == 0.25);
  CHECK(c.cardinality == 3);
  CHECK(c.trajectories == 9);
  CHECK(c.mean_duration == 12.5);
  CHECK(c.seed == 42);
  CHECK(c.rate_min == 1.0);
  CHECK(c.rate_max == 10.0);

  json with_rates = j;
  with_rates["rate_range"] = {0.5, 4.0};
  const GenConfig cr = gen_config_from_json(with_rates);
  CHECK(cr.rate_min == 0.5);
  CHECK(cr.rate_max == 4.0);

  json incomplete = j;
  incomplete.erase("density");
  CHECK(throws_mentioning([&] { gen_config_from_json(incomplete); },
                          "malformed generator config"));
}

TEST_CASE("JSON files save and load through the filesystem") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "ctbn_io_test";
  fs::create_directories(dir);
  const fs::path file = dir / "model.json";

  const CtbnModel model = fixtures::chain2();
  save_json_file(file, model_to_json(model));
  const CtbnModel back = model_from_json(load_json_file(file));
  CHECK(back.graph == model.graph);

  CHECK(throws_mentioning([&] { load_json_file(dir / "missing.json"); }, "cannot open"));

  const fs::path junk = dir / "junk.json";
  {
    std::FILE* f = std::fopen(junk.string().c_str(), "w");
    std::fputs("{ not json", f);
    std::fclose(f);
  }
  CHECK_THROWS_AS((void)load_json_file(junk), std::invalid_argument);
  fs::remove_all(dir);
}
