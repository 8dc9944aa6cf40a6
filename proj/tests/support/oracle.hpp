#pragma once

// Reference model for tests. Parses the site document directly and recomputes
// everything by brute force; shares no code with the library beyond json.hpp.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace oracle {

using Term = std::pair<std::string, std::string>;  // facet, value
using Constraints = std::map<std::string, std::string>;

struct Node {
  int parent = -1;
  std::string label;  // edge label from parent
  std::string solicits;
  std::vector<int> children;
  std::string leaf_id;  // empty for internal pages
  std::map<std::string, std::string> attributes;
};

struct Site {
  std::vector<Node> nodes;
  std::vector<int> leaves;  // document order
  std::vector<Term> terms;  // distinct edge terms, first appearance order

  bool is_leaf(int n) const { return !nodes[n].leaf_id.empty(); }

  std::string path(int n) const {
    std::vector<std::string> labels;
    for (; n != 0; n = nodes[n].parent) labels.push_back(nodes[n].label);
    std::string out = "root";
    for (auto it = labels.rbegin(); it != labels.rend(); ++it) out += "/" + *it;
    return out;
  }

  int depth(int n) const {
    int d = 0;
    for (; n != 0; n = nodes[n].parent) ++d;
    return d;
  }

  int max_depth() const {
    int d = 0;
    for (int l : leaves) d = std::max(d, depth(l));
    return d;
  }

  bool below(int n, int ancestor) const {
    for (; n != -1; n = nodes[n].parent) {
      if (n == ancestor) return true;
    }
    return false;
  }
};

inline void parse_node(Site& site, const nlohmann::json& j, int parent, const std::string& label,
                       std::map<std::string, std::string> attrs) {
  const int id = static_cast<int>(site.nodes.size());
  site.nodes.push_back(Node{});
  site.nodes[id].parent = parent;
  site.nodes[id].label = label;
  if (parent >= 0) site.nodes[parent].children.push_back(id);
  if (j.contains("leaf")) {
    const auto& leaf = j["leaf"];
    site.nodes[id].leaf_id = leaf["id"].get<std::string>();
    if (leaf.contains("attributes")) {
      for (auto& [k, v] : leaf["attributes"].items()) attrs[k] = v.get<std::string>();
    }
    site.nodes[id].attributes = attrs;
    site.leaves.push_back(id);
    return;
  }
  const auto facet = j["solicits"].get<std::string>();
  site.nodes[id].solicits = facet;
  for (const auto& e : j["edges"]) {
    const auto value = e["label"].get<std::string>();
    Term t{facet, value};
    if (std::find(site.terms.begin(), site.terms.end(), t) == site.terms.end()) site.terms.push_back(t);
    auto next = attrs;
    next[facet] = value;
    parse_node(site, e["child"], id, value, std::move(next));
  }
}

inline Site parse(const nlohmann::json& document) {
  Site site;
  parse_node(site, document["root"], -1, "", {});
  return site;
}

inline bool satisfies(const Node& leaf, const Constraints& c) {
  for (const auto& [facet, value] : c) {
    auto it = leaf.attributes.find(facet);
    if (it == leaf.attributes.end() || it->second != value) return false;
  }
  return true;
}

/// Leaf ids that satisfy every constraint, document order.
inline std::vector<std::string> filter(const Site& site, const Constraints& c) {
  std::vector<std::string> out;
  for (int l : site.leaves) {
    if (satisfies(site.nodes[l], c)) out.push_back(site.nodes[l].leaf_id);
  }
  return out;
}

inline bool has_remaining_below(const Site& site, int n, const Constraints& c) {
  for (int l : site.leaves) {
    if (site.below(l, n) && satisfies(site.nodes[l], c)) return true;
  }
  return false;
}

/// Bypass constrained pages from the root, then collapse onto a lone remaining leaf
/// when every unconstrained page on the way there has a single link in the site.
inline int frontier(const Site& site, const Constraints& c) {
  int n = 0;
  while (!site.is_leaf(n)) {
    auto it = c.find(site.nodes[n].solicits);
    if (it == c.end()) break;
    int next = -1;
    for (int ch : site.nodes[n].children) {
      if (site.nodes[ch].label == it->second) next = ch;
    }
    if (next < 0) break;
    n = next;
  }
  if (site.is_leaf(n)) return n;

  int lone = -1, count = 0;
  for (int l : site.leaves) {
    if (site.below(l, n) && satisfies(site.nodes[l], c)) {
      lone = l;
      ++count;
    }
  }
  if (count != 1) return n;
  for (int m = site.nodes[lone].parent; m != -1; m = site.nodes[m].parent) {
    if (!c.contains(site.nodes[m].solicits) && site.nodes[m].children.size() != 1) return n;
    if (m == n) break;
  }
  return lone;
}

inline std::vector<std::string> available(const Site& site, const Constraints& c) {
  const int f = frontier(site, c);
  std::vector<std::string> out;
  for (int ch : site.nodes[f].children) {
    if (has_remaining_below(site, ch, c)) out.push_back(site.nodes[ch].label);
  }
  return out;
}

inline bool in_turn(const Site& site, const Constraints& c, const Term& t) {
  const int f = frontier(site, c);
  if (site.is_leaf(f) || site.nodes[f].solicits != t.first) return false;
  const auto links = available(site, c);
  return std::find(links.begin(), links.end(), t.second) != links.end();
}

/// Constraint sets reachable by one more aspect: facet unconstrained, result non-empty.
inline std::optional<Constraints> apply(const Site& site, const Constraints& c, const Term& t) {
  if (c.contains(t.first)) return std::nullopt;
  auto next = c;
  next[t.first] = t.second;
  if (filter(site, next).empty()) return std::nullopt;
  return next;
}

// ---------------------------------------------------------------------------
// Minimum interactions by exhaustive enumeration.

enum class Kind { single_leaf, top_level_set };

struct Task {
  Kind kind;
  Constraints constraints;
};

inline std::vector<std::string> top_level_answer(const Site& site, const Constraints& c) {
  std::vector<std::string> out;
  for (int ch : site.nodes[0].children) {
    if (has_remaining_below(site, ch, c)) out.push_back(site.nodes[ch].label);
  }
  return out;
}

/// Plain browsing: clicks along the hierarchy with no pruning. For a single leaf,
/// the shortest click path; for a top-level set, the smallest set of visited pages
/// (closed under parent) in which every top-level value is visited and its
/// membership is witnessed by a visited page whose leaves all satisfy the task,
/// or its own subtree has no satisfying leaf. Returns nullopt above `limit`.
inline std::optional<int> browse_minimum(const Site& site, const Task& task, int limit) {
  auto sat = [&](int leaf) { return satisfies(site.nodes[leaf], task.constraints); };
  auto leaves_below = [&](int n) {
    std::vector<int> out;
    for (int l : site.leaves) {
      if (site.below(l, n)) out.push_back(l);
    }
    return out;
  };
  auto all_sat = [&](int n) {
    auto ls = leaves_below(n);
    return std::all_of(ls.begin(), ls.end(), sat);
  };
  auto none_sat = [&](int n) {
    auto ls = leaves_below(n);
    return std::none_of(ls.begin(), ls.end(), sat);
  };

  if (task.kind == Kind::single_leaf) {
    std::optional<int> best;
    std::function<void(int, int)> walk = [&](int n, int clicks) {
      if (clicks > limit) return;
      if (site.is_leaf(n) && sat(n)) {
        if (!best || clicks < *best) best = clicks;
        return;
      }
      for (int ch : site.nodes[n].children) walk(ch, clicks + 1);
    };
    walk(0, 0);
    return best;
  }

  if (all_sat(0) || none_sat(0)) return 0;

  auto sufficient = [&](const std::set<int>& visited) {
    for (int top : site.nodes[0].children) {
      if (!visited.contains(top)) return false;
      if (none_sat(top)) continue;
      bool witnessed = false;
      for (int v : visited) {
        if (site.below(v, top) && all_sat(v)) witnessed = true;
      }
      if (!witnessed) return false;
    }
    return true;
  };

  // Grow parent-closed page sets one page at a time, smallest first.
  std::set<std::set<int>> layer{{}};
  for (int size = 0; size <= limit; ++size) {
    for (const auto& visited : layer) {
      if (sufficient(visited)) return size;
    }
    std::set<std::set<int>> next;
    for (const auto& visited : layer) {
      for (std::size_t n = 1; n < site.nodes.size(); ++n) {
        const int node = static_cast<int>(n);
        if (visited.contains(node)) continue;
        const int parent = site.nodes[node].parent;
        if (parent != 0 && !visited.contains(parent)) continue;
        auto grown = visited;
        grown.insert(node);
        next.insert(std::move(grown));
      }
    }
    layer = std::move(next);
  }
  return std::nullopt;
}

/// Browsing cost of a top-level-set task as a sum over top-level values: one click
/// for a value with no satisfying leaf, otherwise the depth of its shallowest page
/// whose leaves all satisfy the task.
inline std::size_t witness_minimum(const Site& site, const Task& task) {
  std::vector<int> total(site.nodes.size(), 0), good(site.nodes.size(), 0);
  for (int l : site.leaves) {
    const bool s = satisfies(site.nodes[l], task.constraints);
    for (int n = l; n != -1; n = site.nodes[n].parent) {
      ++total[n];
      good[n] += s;
    }
  }
  if (good[0] == 0 || good[0] == total[0]) return 0;
  std::size_t sum = 0;
  for (int top : site.nodes[0].children) {
    if (good[top] == 0) {
      sum += 1;
      continue;
    }
    int best = -1;
    for (std::size_t n = 0; n < site.nodes.size(); ++n) {
      const int node = static_cast<int>(n);
      if (good[node] == total[node] && site.below(node, top)) {
        const int d = site.depth(node);
        if (best < 0 || d < best) best = d;
      }
    }
    sum += static_cast<std::size_t>(best);
  }
  return sum;
}

/// Every sequence of actions up to `limit` long, each action supplying one aspect
/// (a click or an utterance) or going back. Backs are free; an in-turn final input
/// that lands on a single-leaf target is free. The plain browsing strategy is
/// always available too.
inline std::optional<int> search_minimum(const Site& site, const Task& task, int limit) {
  std::optional<int> best = browse_minimum(site, task, limit);
  const auto answer = top_level_answer(site, task.constraints);
  int target = -1;
  if (task.kind == Kind::single_leaf) {
    for (int l : site.leaves) {
      if (satisfies(site.nodes[l], task.constraints)) target = l;
    }
  }

  auto complete = [&](const Constraints& c) {
    if (task.kind == Kind::single_leaf) return frontier(site, c) == target;
    if (frontier(site, c) != 0) return false;
    for (const auto& kv : task.constraints) {
      auto it = c.find(kv.first);
      if (it == c.end() || it->second != kv.second) return false;
    }
    return available(site, c) == answer;
  };

  std::vector<Constraints> history{{}};
  std::function<void(int, int)> dfs = [&](int length, int cost) {
    if (best && cost >= *best) return;
    if (length == limit) return;
    const auto current = history.back();
    for (const auto& t : site.terms) {
      auto next = apply(site, current, t);
      if (!next) continue;
      int step_cost = 1;
      if (task.kind == Kind::single_leaf && in_turn(site, current, t) && frontier(site, *next) == target) step_cost = 0;
      if (complete(*next)) {
        if (!best || cost + step_cost < *best) best = cost + step_cost;
        continue;
      }
      history.push_back(*next);
      dfs(length + 1, cost + step_cost);
      history.pop_back();
    }
    if (history.size() > 1) {
      auto top = history.back();
      history.pop_back();
      if (complete(history.back())) {
        if (!best || cost < *best) best = cost;
      } else {
        dfs(length + 1, cost);
      }
      history.push_back(std::move(top));
    }
  };
  if (complete({})) return 0;
  dfs(0, 0);
  return best;
}

}  // namespace oracle
