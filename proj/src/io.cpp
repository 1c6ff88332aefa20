#include "ctbn/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace ctbn {

using nlohmann::json;

namespace {

std::unordered_map<std::string, int> name_index(const std::vector<VariableSpec>& variables) {
  std::unordered_map<std::string, int> idx;
  for (std::size_t i = 0; i < variables.size(); ++i) idx[variables[i].name] = static_cast<int>(i);
  return idx;
}

int resolve(const std::unordered_map<std::string, int>& idx, const std::string& name) {
  auto it = idx.find(name);
  if (it == idx.end()) throw std::invalid_argument("unknown variable name: " + name);
  return it->second;
}

std::vector<VariableSpec> variables_from_json(const json& j) {
  std::vector<VariableSpec> out;
  for (const auto& v : j) {
    VariableSpec spec;
    spec.name = v.at("name").get<std::string>();
    spec.cardinality = v.at("cardinality").get<int>();
    if (spec.cardinality < 2)
      throw std::invalid_argument("variable " + spec.name + ": cardinality must be at least 2");
    out.push_back(std::move(spec));
  }
  if (out.empty()) throw std::invalid_argument("no variables declared");
  return out;
}

json variables_to_json(const std::vector<VariableSpec>& variables) {
  json out = json::array();
  for (const auto& v : variables)
    out.push_back({{"name", v.name}, {"cardinality", v.cardinality}});
  return out;
}

std::string decision_name(Decision d) {
  switch (d) {
    case Decision::accept: return "accept";
    case Decision::reject: return "reject";
    default: return "insufficient";
  }
}

/* Shortest representation that parses back to the same double. */
std::string fmt_double(double v) {
  char buf[32];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace

json model_to_json(const CtbnModel& model) {
  json j;
  j["variables"] = variables_to_json(model.variables);

  json arcs = json::array();
  for (const Arc& a : model.graph.arcs())
    arcs.push_back({model.variables[a.parent].name, model.variables[a.child].name});
  j["arcs"] = std::move(arcs);

  json cims = json::array();
  for (const Cim& cim : model.cims) {
    json block;
    json parents = json::array();
    for (int p : cim.parents) parents.push_back(model.variables[p].name);
    block["parents"] = std::move(parents);
    json matrices = json::array();
    for (const IntensityMatrix& im : cim.matrices) matrices.push_back(im.data());
    block["matrices"] = std::move(matrices);
    cims.push_back(std::move(block));
  }
  j["cims"] = std::move(cims);
  j["initial"] = model.initial;
  return j;
}

CtbnModel model_from_json(const json& j) {
  CtbnModel model;
  try {
    model.variables = variables_from_json(j.at("variables"));
    const auto idx = name_index(model.variables);
    const int n = model.node_count();

    model.graph = DirectedGraph(n);
    for (const auto& a : j.at("arcs"))
      model.graph.add_arc(resolve(idx, a.at(0).get<std::string>()),
                          resolve(idx, a.at(1).get<std::string>()));

    const auto& cims = j.at("cims");
    if (static_cast<int>(cims.size()) != n)
      throw std::invalid_argument("expected one conditional intensity block per variable");
    for (int k = 0; k < n; ++k) {
      Cim cim;
      cim.target = k;
      for (const auto& p : cims[k].at("parents"))
        cim.parents.push_back(resolve(idx, p.get<std::string>()));
      std::vector<int> cards;
      for (int p : cim.parents) cards.push_back(model.cardinality(p));
      cim.configs = ConfigSpace(cards);
      const int m = model.cardinality(k);
      for (const auto& flat : cims[k].at("matrices")) {
        if (static_cast<int>(flat.size()) != m * m)
          throw std::invalid_argument("matrix size does not match the variable cardinality");
        IntensityMatrix im(m);
        for (int i = 0; i < m * m; ++i) im.data()[i] = flat[i].get<double>();
        cim.matrices.push_back(std::move(im));
      }
      model.cims.push_back(std::move(cim));
    }

    model.initial.clear();
    for (const auto& w : j.at("initial"))
      model.initial.push_back(w.get<std::vector<double>>());
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed model file: ") + e.what());
  }

  const auto violations = validate_model(model);
  if (!violations.empty())
    throw std::invalid_argument("invalid model: " + format_violation(violations.front(), &model));
  return model;
}

json dataset_to_json(const Dataset& ds) {
  json j;
  j["variables"] = variables_to_json(ds.variables);
  json trajectories = json::array();
  for (const Trajectory& tr : ds.trajectories) {
    json t;
    t["initial"] = tr.initial;
    t["duration"] = tr.duration;
    t["ended_early"] = tr.ended_early;
    json events = json::array();
    for (const TrajectoryEvent& ev : tr.events)
      events.push_back({ev.time, ev.var, ev.state});
    t["events"] = std::move(events);
    trajectories.push_back(std::move(t));
  }
  j["trajectories"] = std::move(trajectories);
  return j;
}

Dataset dataset_from_json(const json& j) {
  Dataset ds;
  try {
    ds.variables = variables_from_json(j.at("variables"));
    for (const auto& t : j.at("trajectories")) {
      Trajectory tr;
      tr.initial = t.at("initial").get<std::vector<int>>();
      tr.duration = t.at("duration").get<double>();
      tr.ended_early = t.value("ended_early", false);
      for (const auto& ev : t.at("events"))
        tr.events.push_back({ev.at(0).get<double>(), ev.at(1).get<int>(), ev.at(2).get<int>()});
      ds.trajectories.push_back(std::move(tr));
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed dataset file: ") + e.what());
  }
  validate_dataset(ds);
  return ds;
}

json graph_to_json(const DirectedGraph& g, const std::vector<VariableSpec>& variables) {
  json j;
  json nodes = json::array();
  for (const auto& v : variables) nodes.push_back(v.name);
  j["nodes"] = std::move(nodes);
  json arcs = json::array();
  for (const Arc& a : g.arcs())
    arcs.push_back({variables[a.parent].name, variables[a.child].name});
  j["arcs"] = std::move(arcs);
  return j;
}

DirectedGraph graph_from_json(const json& j, const std::vector<VariableSpec>& variables) {
  try {
    const auto& nodes = j.at("nodes");
    if (nodes.size() != variables.size())
      throw std::invalid_argument("graph node list does not match the dataset variables");
    for (std::size_t i = 0; i < variables.size(); ++i)
      if (nodes[i].get<std::string>() != variables[i].name)
        throw std::invalid_argument("graph node list does not match the dataset variables");
    const auto idx = name_index(variables);
    DirectedGraph g(static_cast<int>(variables.size()));
    for (const auto& a : j.at("arcs"))
      g.add_arc(resolve(idx, a.at(0).get<std::string>()),
                resolve(idx, a.at(1).get<std::string>()));
    return g;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed graph file: ") + e.what());
  }
}

DirectedGraph graph_from_model_or_graph_json(const json& j,
                                             const std::vector<VariableSpec>& variables) {
  if (j.contains("cims")) {
    const CtbnModel model = model_from_json(j);
    if (model.variables != variables)
      throw std::invalid_argument("model variables do not match the dataset variables");
    return model.graph;
  }
  return graph_from_json(j, variables);
}

json suffstats_to_json(const SuffStats& s, const std::vector<VariableSpec>& variables) {
  json j;
  j["target"] = variables[s.target].name;
  json cond = json::array();
  for (int v : s.cond) cond.push_back(variables[v].name);
  j["cond"] = std::move(cond);
  json time = json::array();
  json counts = json::array();
  for (int u = 0; u < s.configs.count(); ++u) {
    json tu = json::array();
    json mu = json::array();
    for (int x = 0; x < s.target_card; ++x) {
      tu.push_back(s.t(u, x));
      json row = json::array();
      for (int x2 = 0; x2 < s.target_card; ++x2) row.push_back(s.m(u, x, x2));
      mu.push_back(std::move(row));
    }
    time.push_back(std::move(tu));
    counts.push_back(std::move(mu));
  }
  j["time"] = std::move(time);
  j["counts"] = std::move(counts);
  return j;
}

json verdicts_to_json(const CtpcResult& r, const std::vector<VariableSpec>& variables) {
  json nodes = json::array();
  for (const CtpcNodeResult& nr : r.nodes) {
    json node;
    node["node"] = variables[nr.node].name;
    json parents = json::array();
    for (int p : nr.parents) parents.push_back(variables[p].name);
    node["parents"] = std::move(parents);
    node["tests_run"] = nr.tests_run;
    json verdicts = json::array();
    for (const IndependenceVerdict& v : nr.verdicts) {
      json jv;
      jv["target"] = variables[v.xi].name;
      jv["candidate"] = variables[v.xj].name;
      json sep = json::array();
      for (int s : v.sepset) sep.push_back(variables[s].name);
      jv["separating_set"] = std::move(sep);
      jv["independent"] = v.independent;
      json records = json::array();
      for (const TestRecord& rec : v.records) {
        records.push_back({{"kind", std::string(1, rec.kind)},
                           {"candidate_state", rec.y},
                           {"configuration", rec.s},
                           {"target_state", rec.x},
                           {"statistic", rec.statistic},
                           {"lower", rec.lower},
                           {"upper", rec.upper},
                           {"decision", decision_name(rec.decision)}});
      }
      jv["records"] = std::move(records);
      verdicts.push_back(std::move(jv));
    }
    node["verdicts"] = std::move(verdicts);
    nodes.push_back(std::move(node));
  }
  return json{{"nodes", std::move(nodes)}};
}

json scores_to_json(const CtssResult& r, const std::vector<VariableSpec>& variables) {
  json nodes = json::array();
  for (const NodeScore& sc : r.scores) {
    json parents = json::array();
    for (int p : sc.parents) parents.push_back(variables[p].name);
    nodes.push_back({{"node", variables[sc.node].name},
                     {"parents", std::move(parents)},
                     {"log_ml_q", sc.log_ml_q},
                     {"log_ml_theta", sc.log_ml_theta},
                     {"log_prior", sc.log_prior},
                     {"total", sc.total}});
  }
  return json{{"nodes", std::move(nodes)}, {"sets_scored", r.sets_scored}};
}

void write_dataset_csv(const Dataset& ds, std::ostream& out) {
  out << "trajectory,time";
  for (const auto& v : ds.variables) out << ',' << v.name;
  out << '\n';
  for (std::size_t i = 0; i < ds.trajectories.size(); ++i) {
    const Trajectory& tr = ds.trajectories[i];
    std::vector<int> state = tr.initial;
    auto row = [&](double t) {
      out << i << ',' << fmt_double(t);
      for (int x : state) out << ',' << x;
      out << '\n';
    };
    row(0.0);
    for (const TrajectoryEvent& ev : tr.events) {
      state[ev.var] = ev.state;
      row(ev.time);
    }
  }
}

GenConfig gen_config_from_json(const json& j) {
  GenConfig c;
  try {
    c.nodes = j.at("nodes").get<int>();
    c.density = j.at("density").get<double>();
    c.cardinality = j.at("cardinality").get<int>();
    c.trajectories = j.at("trajectories").get<int>();
    c.mean_duration = j.at("duration").get<double>();
    c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("rate_range")) {
      c.rate_min = j.at("rate_range").at(0).get<double>();
      c.rate_max = j.at("rate_range").at(1).get<double>();
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed generator config: ") + e.what());
  }
  return c;
}

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

void save_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace ctbn
