#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "extempore/site.hpp"

namespace extempore {

enum class TaskKind { single_leaf, top_level_set };

std::string_view to_string(TaskKind kind);

/// A machine-checkable information-finding task: a conjunction of aspects.
struct TaskSpec {
  TaskKind kind = TaskKind::single_leaf;
  std::vector<TermValue> constraints;
  std::string name;
};

TaskSpec parse_task(const nlohmann::json& document);
TaskSpec parse_task(std::string_view text);
nlohmann::json to_json(const TaskSpec& task);

/// Answer computed from the site. Exactly one of the two members is meaningful.
struct TaskAnswer {
  std::size_t leaf_index = 0;               // single-leaf
  std::vector<std::string> top_level;       // top-level-set, document order
};

/// Leaves satisfying every constraint of `task`.
LeafSet satisfying_leaves(const TaskSpec& task, const SiteTree& site);

/// Throws Error(invalid_task) for unknown terms, repeated facets or a single-leaf task
/// matching several leaves, and Error(unsatisfiable_task) when nothing matches.
TaskAnswer task_answer(const TaskSpec& task, const SiteTree& site);

}  // namespace extempore
