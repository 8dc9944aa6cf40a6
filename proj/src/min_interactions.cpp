#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "extempore/analysis.hpp"
#include "extempore/error.hpp"
#include "extempore/view.hpp"

namespace extempore {

std::string_view to_string(Regime regime) {
  return regime == Regime::in_turn_only ? "in-turn-only" : "out-of-turn-allowed";
}

namespace {

constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

/// Depth-first audit of the plain hierarchy. A page decides membership for its
/// subtree once every leaf below satisfies the task (found) or none does (absent).
class BrowsingAudit {
 public:
  BrowsingAudit(const SiteTree& site, LeafSet satisfying) : site_(site), sat_(std::move(satisfying)) {}

  std::size_t total() {
    const auto root = site_.root();
    if (decided(root)) return 0;
    std::size_t cost = 0;
    for (const auto& edge : site_.node(root).edges) cost += 1 + audit(edge.child);
    return cost;
  }

 private:
  bool decided(NodeId n) const {
    const auto& below = site_.node(n).leaves_below;
    return !below.intersects(sat_) || below.is_subset_of(sat_);
  }

  // Clicks below `n` (already reached) until membership of its subtree is known.
  std::size_t audit(NodeId n) {
    if (auto it = memo_.find(n); it != memo_.end()) return it->second;
    std::size_t cost = 0;
    if (!decided(n)) {
      cost = kUnreachable;
      for (const auto& edge : site_.node(n).edges) {
        if (!site_.node(edge.child).leaves_below.intersects(sat_)) continue;
        cost = std::min(cost, 1 + audit(edge.child));
      }
    }
    memo_.emplace(n, cost);
    return cost;
  }

  const SiteTree& site_;
  LeafSet sat_;
  std::map<NodeId, std::size_t> memo_;
};

using StateKey = std::vector<TermValue>;

StateKey key_of(const View& view) {
  StateKey key;
  for (const auto& c : view.constraints()) key.push_back(c.term);
  std::sort(key.begin(), key.end());
  return key;
}

/// 0-1 breadth-first search over engine states keyed by constraint set.
/// `step_cost(before, term, after)` returns 0 or 1.
std::size_t search(const SiteTree& site, const std::function<bool(const View&)>& complete,
                   const std::function<std::size_t(const View&, const TermValue&, const View&)>& step_cost) {
  std::map<StateKey, std::size_t> best;
  std::deque<std::pair<View, std::size_t>> queue;
  auto start = View::fresh(site);
  best[key_of(start)] = 0;
  queue.emplace_back(std::move(start), 0);

  while (!queue.empty()) {
    auto [view, cost] = std::move(queue.front());
    queue.pop_front();
    if (best[key_of(view)] < cost) continue;
    if (complete(view)) return cost;

    for (const auto& term : site.term_values()) {
      if (view.is_constrained(term.facet)) continue;
      if (!view.remaining().intersects(site.leaves_with(term))) continue;
      auto next = view.with(term, 0);
      const auto next_cost = cost + step_cost(view, term, next);
      auto key = key_of(next);
      auto it = best.find(key);
      if (it != best.end() && it->second <= next_cost) continue;
      best[std::move(key)] = next_cost;
      if (next_cost == cost) queue.emplace_front(std::move(next), next_cost);
      else queue.emplace_back(std::move(next), next_cost);
    }
  }
  return kUnreachable;
}

std::size_t in_turn_minimum(const TaskSpec& task, const SiteTree& site, const TaskAnswer& answer) {
  if (task.kind == TaskKind::single_leaf) return site.node(site.leaf_node(answer.leaf_index)).depth;
  return BrowsingAudit(site, satisfying_leaves(task, site)).total();
}

}  // namespace

std::size_t min_interactions(const TaskSpec& task, const SiteTree& site, Regime regime) {
  const auto answer = task_answer(task, site);
  const auto browsing = in_turn_minimum(task, site, answer);
  if (regime == Regime::in_turn_only) return browsing;

  if (task.kind == TaskKind::single_leaf) {
    const auto target = site.leaf_node(answer.leaf_index);
    auto complete = [&](const View& v) { return v.frontier() == target; };
    auto cost = [&](const View& before, const TermValue& term, const View& after) -> std::size_t {
      return before.mode_for(term) == Mode::in_turn && complete(after) ? 0 : 1;
    };
    return std::min(browsing, search(site, complete, cost));
  }

  auto complete = [&](const View& v) {
    if (v.frontier() != site.root()) return false;
    for (const auto& c : task.constraints) {
      if (!v.redundant(c)) return false;
    }
    return v.available_labels() == answer.top_level;
  };
  auto cost = [](const View&, const TermValue&, const View&) -> std::size_t { return 1; };
  return std::min(browsing, search(site, complete, cost));
}

std::string_view to_string(Orientation orientation) {
  return orientation == Orientation::non_oriented ? "non-oriented" : "out-of-turn-oriented";
}

Orientation orientation(const TaskSpec& task, const SiteTree& site) {
  return min_interactions(task, site, Regime::in_turn_only) > site.max_depth() ? Orientation::out_of_turn_oriented
                                                                               : Orientation::non_oriented;
}

}  // namespace extempore
