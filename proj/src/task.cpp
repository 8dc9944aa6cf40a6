#include "extempore/task.hpp"

#include <set>

#include "extempore/error.hpp"

namespace extempore {

using nlohmann::json;

std::string_view to_string(TaskKind kind) {
  return kind == TaskKind::single_leaf ? "single-leaf" : "top-level-set";
}

TaskSpec parse_task(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::parse_error, "task document must be an object");
  if (auto it = doc.find("format"); it != doc.end() && *it != "extempore-task/1") {
    throw Error(ErrorCode::parse_error, "unsupported task format, expected extempore-task/1");
  }
  TaskSpec task;
  const auto kind = doc.value("kind", std::string());
  if (kind == "single-leaf") task.kind = TaskKind::single_leaf;
  else if (kind == "top-level-set") task.kind = TaskKind::top_level_set;
  else throw Error(ErrorCode::parse_error, "task kind must be single-leaf or top-level-set");

  auto constraints = doc.find("constraints");
  if (constraints == doc.end() || !constraints->is_array()) {
    throw Error(ErrorCode::parse_error, "task needs a 'constraints' list");
  }
  for (const auto& c : *constraints) {
    if (!c.is_object() || !c.contains("facet") || !c.contains("value") || !c["facet"].is_string() ||
        !c["value"].is_string()) {
      throw Error(ErrorCode::parse_error, "task constraints need string 'facet' and 'value'");
    }
    task.constraints.push_back(TermValue{c["facet"].get<std::string>(), c["value"].get<std::string>()});
  }
  task.name = doc.value("name", std::string());
  return task;
}

TaskSpec parse_task(std::string_view text) {
  try {
    return parse_task(json::parse(text));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse_error, std::string("malformed task document: ") + e.what());
  }
}

json to_json(const TaskSpec& task) {
  json constraints = json::array();
  for (const auto& c : task.constraints) constraints.push_back(json{{"facet", c.facet}, {"value", c.value}});
  json out{{"format", "extempore-task/1"}, {"kind", to_string(task.kind)}, {"constraints", constraints}};
  if (!task.name.empty()) out["name"] = task.name;
  return out;
}

LeafSet satisfying_leaves(const TaskSpec& task, const SiteTree& site) {
  auto sat = site.all_leaves();
  for (const auto& c : task.constraints) sat &= site.leaves_with(c);
  return sat;
}

TaskAnswer task_answer(const TaskSpec& task, const SiteTree& site) {
  if (task.constraints.empty()) throw Error(ErrorCode::invalid_task, "task has no constraints");
  std::set<std::string> facets;
  for (const auto& c : task.constraints) {
    if (!site.has_facet(c.facet)) {
      throw Error(ErrorCode::invalid_task, "task refers to unknown facet '" + c.facet + "'", {{"facet", c.facet}});
    }
    if (!site.has_term(c)) {
      throw Error(ErrorCode::invalid_task, "task refers to unknown value " + to_string(c),
                  {{"facet", c.facet}, {"value", c.value}});
    }
    if (!facets.insert(c.facet).second) {
      throw Error(ErrorCode::invalid_task, "task constrains facet '" + c.facet + "' twice", {{"facet", c.facet}});
    }
  }

  const auto sat = satisfying_leaves(task, site);
  if (sat.none()) throw Error(ErrorCode::unsatisfiable_task, "no leaf satisfies the task");

  TaskAnswer answer;
  if (task.kind == TaskKind::single_leaf) {
    if (sat.count() != 1) {
      throw Error(ErrorCode::invalid_task,
                  "single-leaf task matches " + std::to_string(sat.count()) + " leaves",
                  {{"matches", leaf_ids(site, sat)}});
    }
    answer.leaf_index = sat.find_first();
    return answer;
  }
  for (const auto& edge : site.node(site.root()).edges) {
    if (site.node(edge.child).leaves_below.intersects(sat)) answer.top_level.push_back(edge.label);
  }
  return answer;
}

}  // namespace extempore
