#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>
#include <json.hpp>

namespace extempore {

/// One aspect of partial information: a facet paired with a canonical value.
struct TermValue {
  std::string facet;
  std::string value;

  auto operator<=>(const TermValue&) const = default;
};

std::string to_string(const TermValue& term);

/// Leaves are indexed 0..n-1 in document order; a LeafSet is a bitset over that index.
using LeafSet = boost::dynamic_bitset<>;

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

struct LeafPage {
  std::string id;
  std::string title;
  std::string url;
  /// facet -> canonical value, one entry per facet on the root-to-leaf path.
  std::map<std::string, std::string> attributes;

  bool satisfies(const TermValue& term) const {
    auto it = attributes.find(term.facet);
    return it != attributes.end() && it->second == term.value;
  }
};

struct Edge {
  std::string label;
  NodeId child;
};

struct SiteNode {
  NodeId parent = kNoNode;
  std::size_t depth = 0;
  /// Empty for leaves.
  std::string solicits;
  std::vector<Edge> edges;
  std::optional<std::size_t> leaf_index;
  LeafSet leaves_below;

  bool is_leaf() const { return leaf_index.has_value(); }
};

/// Immutable, validated representation of a levelwise hierarchical website.
class SiteTree {
 public:
  static constexpr std::string_view kFormat = "extempore-site/1";

  const std::string& id() const { return id_; }
  const std::string& title() const { return title_; }
  const std::vector<std::string>& facets() const { return facets_; }
  bool has_facet(std::string_view facet) const;

  NodeId root() const { return 0; }
  const SiteNode& node(NodeId id) const { return nodes_.at(id); }
  std::size_t node_count() const { return nodes_.size(); }

  const std::vector<LeafPage>& leaves() const { return leaves_; }
  std::size_t leaf_count() const { return leaves_.size(); }
  NodeId leaf_node(std::size_t leaf_index) const { return leaf_nodes_.at(leaf_index); }
  const LeafPage* find_leaf(std::string_view id) const;
  std::optional<std::size_t> leaf_index_of(std::string_view id) const;

  std::size_t max_depth() const { return max_depth_; }

  /// Leaves whose attributes include `term`; empty set for unknown terms.
  LeafSet leaves_with(const TermValue& term) const;
  LeafSet all_leaves() const { return node(root()).leaves_below; }
  LeafSet no_leaves() const { return LeafSet(leaves_.size()); }

  /// Every distinct (facet, value) labelling some edge, in document order.
  const std::vector<TermValue>& term_values() const { return term_values_; }
  bool has_term(const TermValue& term) const { return term_leaves_.contains(term); }

  /// Child of `node` along the edge labelled `label`, or kNoNode.
  NodeId child(NodeId node, std::string_view label) const;

  /// Slash-joined edge labels from the root, e.g. "root/Georgia/Senate".
  std::string path_of(NodeId node) const;

 private:
  friend class SiteBuilder;

  std::string id_;
  std::string title_;
  std::vector<std::string> facets_;
  std::vector<SiteNode> nodes_;
  std::vector<LeafPage> leaves_;
  std::vector<NodeId> leaf_nodes_;
  std::map<std::string, std::size_t, std::less<>> leaf_by_id_;
  std::map<TermValue, LeafSet> term_leaves_;
  std::vector<TermValue> term_values_;
  std::size_t max_depth_ = 0;
};

/// Parses and validates an extempore-site/1 document.
/// Throws Error(parse_error) for malformed text and Error(validation_error)
/// naming the offending path for structural violations.
SiteTree load_site(std::string_view document, std::string_view fallback_id = "site");
SiteTree load_site_file(const std::filesystem::path& path);

/// Builds from an already-parsed document.
SiteTree site_from_json(const nlohmann::json& document, std::string_view fallback_id = "site");

/// Canonical extempore-site/1 serialization; leaf attributes are omitted (derived from the path).
nlohmann::json to_json(const SiteTree& tree);

/// The leaves reachable from `from`, in document order.
std::vector<const LeafPage*> leaf_set(const SiteTree& tree, NodeId from);

std::size_t max_depth(const SiteTree& tree);

/// Ids of the leaves in `set`, in document order.
std::vector<std::string> leaf_ids(const SiteTree& tree, const LeafSet& set);

}  // namespace extempore
