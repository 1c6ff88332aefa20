#ifndef CTBN_IO_HPP
#define CTBN_IO_HPP

#include <filesystem>
#include <iosfwd>

#include <json.hpp>

#include "ctbn/ctpc.hpp"
#include "ctbn/ctss.hpp"
#include "ctbn/generator.hpp"
#include "ctbn/model.hpp"
#include "ctbn/trajectory.hpp"

namespace ctbn {

/* JSON schemas round-trip bit-exactly for finite doubles.  Loaders
 * validate and throw std::invalid_argument with a description of the
 * first problem. */

nlohmann::json model_to_json(const CtbnModel& model);
CtbnModel model_from_json(const nlohmann::json& j);

nlohmann::json dataset_to_json(const Dataset& ds);
Dataset dataset_from_json(const nlohmann::json& j);

nlohmann::json graph_to_json(const DirectedGraph& g, const std::vector<VariableSpec>& variables);
DirectedGraph graph_from_json(const nlohmann::json& j, const std::vector<VariableSpec>& variables);

/* Accepts either a graph file or a model file (whose graph is taken). */
DirectedGraph graph_from_model_or_graph_json(const nlohmann::json& j,
                                             const std::vector<VariableSpec>& variables);

nlohmann::json suffstats_to_json(const SuffStats& s, const std::vector<VariableSpec>& variables);
nlohmann::json verdicts_to_json(const CtpcResult& r, const std::vector<VariableSpec>& variables);
nlohmann::json scores_to_json(const CtssResult& r, const std::vector<VariableSpec>& variables);

/* Long format: trajectory id, timestamp, one column per variable holding
 * the full state, with a time-zero row per trajectory. */
void write_dataset_csv(const Dataset& ds, std::ostream& out);

GenConfig gen_config_from_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::filesystem::path& path);
void save_json_file(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace ctbn

#endif
