#include "extempore/site.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "extempore/error.hpp"

namespace extempore {

using nlohmann::json;

std::string to_string(const TermValue& term) { return term.facet + "=" + term.value; }

bool SiteTree::has_facet(std::string_view facet) const {
  for (const auto& f : facets_) {
    if (f == facet) return true;
  }
  return false;
}

const LeafPage* SiteTree::find_leaf(std::string_view id) const {
  auto it = leaf_by_id_.find(id);
  return it == leaf_by_id_.end() ? nullptr : &leaves_[it->second];
}

std::optional<std::size_t> SiteTree::leaf_index_of(std::string_view id) const {
  auto it = leaf_by_id_.find(id);
  if (it == leaf_by_id_.end()) return std::nullopt;
  return it->second;
}

LeafSet SiteTree::leaves_with(const TermValue& term) const {
  auto it = term_leaves_.find(term);
  return it == term_leaves_.end() ? no_leaves() : it->second;
}

NodeId SiteTree::child(NodeId node_id, std::string_view label) const {
  for (const auto& edge : node(node_id).edges) {
    if (edge.label == label) return edge.child;
  }
  return kNoNode;
}

std::string SiteTree::path_of(NodeId node_id) const {
  std::vector<std::string_view> labels;
  while (node_id != root()) {
    const auto parent = node(node_id).parent;
    for (const auto& edge : node(parent).edges) {
      if (edge.child == node_id) {
        labels.push_back(edge.label);
        break;
      }
    }
    node_id = parent;
  }
  std::string out = "root";
  for (auto it = labels.rbegin(); it != labels.rend(); ++it) {
    out += '/';
    out += *it;
  }
  return out;
}

namespace {

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::validation_error, what + " at " + path, json{{"path", path}});
}

[[noreturn]] void malformed(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::parse_error, what + " at " + path, json{{"path", path}});
}

const json& require(const json& object, const char* key, const std::string& path) {
  auto it = object.find(key);
  if (it == object.end()) malformed(path, std::string("missing field '") + key + "'");
  return *it;
}

std::string require_string(const json& object, const char* key, const std::string& path) {
  const auto& value = require(object, key, path);
  if (!value.is_string()) malformed(path, std::string("field '") + key + "' must be a string");
  return value.get<std::string>();
}

}  // namespace

class SiteBuilder {
 public:
  explicit SiteBuilder(SiteTree& tree) : tree_(tree) {}

  void build(const json& doc, std::string_view fallback_id) {
    if (!doc.is_object()) malformed("document", "site document must be an object");
    if (auto it = doc.find("format"); it != doc.end()) {
      if (!it->is_string() || it->get<std::string>() != SiteTree::kFormat) {
        malformed("document", "unsupported format, expected " + std::string(SiteTree::kFormat));
      }
    }
    tree_.id_ = doc.value("id", std::string(fallback_id));
    tree_.title_ = doc.value("title", tree_.id_);

    const auto& facets = require(doc, "facets", "document");
    if (!facets.is_array() || facets.empty()) malformed("document", "'facets' must be a non-empty list");
    std::set<std::string> seen;
    for (const auto& f : facets) {
      if (!f.is_string() || f.get<std::string>().empty()) invalid("facets", "facet names must be non-empty strings");
      if (!seen.insert(f.get<std::string>()).second) invalid("facets", "duplicate facet '" + f.get<std::string>() + "'");
      tree_.facets_.push_back(f.get<std::string>());
    }

    const auto& root = require(doc, "root", "document");
    if (!root.is_object() || root.contains("leaf")) invalid("root", "root must be an internal node");
    std::map<std::string, std::string> path_attributes;
    add_node(root, kNoNode, 0, "root", path_attributes);

    finish();
  }

 private:
  NodeId add_node(const json& object, NodeId parent, std::size_t depth, const std::string& path,
                  std::map<std::string, std::string>& path_attributes) {
    if (!object.is_object()) malformed(path, "node must be an object");
    const auto id = static_cast<NodeId>(tree_.nodes_.size());
    tree_.nodes_.emplace_back();
    tree_.nodes_[id].parent = parent;
    tree_.nodes_[id].depth = depth;

    if (auto leaf = object.find("leaf"); leaf != object.end()) {
      add_leaf(id, *leaf, path, path_attributes);
      return id;
    }

    const auto facet = require_string(object, "solicits", path);
    if (!tree_.has_facet(facet)) invalid(path, "unknown facet '" + facet + "'");
    if (path_attributes.contains(facet)) invalid(path, "facet '" + facet + "' repeated on path");
    tree_.nodes_[id].solicits = facet;

    const auto& edges = require(object, "edges", path);
    if (!edges.is_array()) malformed(path, "'edges' must be a list");
    if (edges.empty()) invalid(path, "internal node has no edges");

    std::set<std::string> labels;
    for (const auto& edge : edges) {
      if (!edge.is_object()) malformed(path, "edge must be an object");
      auto label = require_string(edge, "label", path);
      if (label.empty()) invalid(path, "empty edge label");
      if (!labels.insert(label).second) invalid(path, "duplicate edge label '" + label + "'");
      const auto& child = require(edge, "child", path);

      path_attributes[facet] = label;
      const auto child_id = add_node(child, id, depth + 1, path + "/" + label, path_attributes);
      path_attributes.erase(facet);
      tree_.nodes_[id].edges.push_back(Edge{std::move(label), child_id});
    }
    return id;
  }

  void add_leaf(NodeId id, const json& leaf, const std::string& path,
                const std::map<std::string, std::string>& path_attributes) {
    if (!leaf.is_object()) malformed(path, "'leaf' must be an object");
    if (id == tree_.root()) invalid(path, "root cannot be a leaf");
    LeafPage page;
    page.id = require_string(leaf, "id", path);
    if (page.id.empty()) invalid(path, "empty leaf id");
    page.title = leaf.value("title", page.id);
    page.url = leaf.value("url", std::string());
    page.attributes = path_attributes;

    if (auto attrs = leaf.find("attributes"); attrs != leaf.end()) {
      if (!attrs->is_object()) malformed(path, "'attributes' must be an object");
      std::map<std::string, std::string> explicit_attrs;
      for (auto it = attrs->begin(); it != attrs->end(); ++it) {
        if (!it.value().is_string()) malformed(path, "attribute values must be strings");
        explicit_attrs[it.key()] = it.value().get<std::string>();
      }
      if (explicit_attrs != path_attributes) {
        invalid(path, "leaf '" + page.id + "' attributes do not match its path");
      }
    }

    if (tree_.leaf_by_id_.contains(page.id)) invalid(path, "duplicate leaf id '" + page.id + "'");
    const auto index = tree_.leaves_.size();
    tree_.leaf_by_id_.emplace(page.id, index);
    tree_.leaves_.push_back(std::move(page));
    tree_.leaf_nodes_.push_back(id);
    tree_.nodes_[id].leaf_index = index;
  }

  void finish() {
    const auto n = tree_.leaves_.size();
    for (auto& node : tree_.nodes_) node.leaves_below.resize(n);
    // Children always have larger ids than their parents, so a reverse sweep accumulates bottom-up.
    for (auto id = static_cast<NodeId>(tree_.nodes_.size()); id-- > 0;) {
      auto& node = tree_.nodes_[id];
      if (node.leaf_index) {
        node.leaves_below.set(*node.leaf_index);
        tree_.max_depth_ = std::max(tree_.max_depth_, node.depth);
      }
      if (node.parent != kNoNode) tree_.nodes_[node.parent].leaves_below |= node.leaves_below;
    }
    for (const auto& node : tree_.nodes_) {
      for (const auto& edge : node.edges) {
        TermValue term{node.solicits, edge.label};
        auto [it, inserted] = tree_.term_leaves_.try_emplace(term, LeafSet(n));
        if (inserted) tree_.term_values_.push_back(term);
        it->second |= tree_.nodes_[edge.child].leaves_below;
      }
    }
  }

  SiteTree& tree_;
};

SiteTree site_from_json(const json& document, std::string_view fallback_id) {
  SiteTree tree;
  SiteBuilder(tree).build(document, fallback_id);
  return tree;
}

SiteTree load_site(std::string_view document, std::string_view fallback_id) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse_error, std::string("malformed site document: ") + e.what());
  }
  return site_from_json(doc, fallback_id);
}

SiteTree load_site_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::parse_error, "cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  auto stem = path.stem().string();
  if (auto dot = stem.find('.'); dot != std::string::npos) stem.resize(dot);
  return load_site(buffer.str(), stem);
}

namespace {

json node_to_json(const SiteTree& tree, NodeId id) {
  const auto& node = tree.node(id);
  if (node.is_leaf()) {
    const auto& page = tree.leaves()[*node.leaf_index];
    return json{{"leaf", {{"id", page.id}, {"title", page.title}, {"url", page.url}}}};
  }
  json edges = json::array();
  for (const auto& edge : node.edges) {
    edges.push_back(json{{"label", edge.label}, {"child", node_to_json(tree, edge.child)}});
  }
  return json{{"solicits", node.solicits}, {"edges", std::move(edges)}};
}

}  // namespace

json to_json(const SiteTree& tree) {
  return json{{"format", SiteTree::kFormat},
              {"id", tree.id()},
              {"title", tree.title()},
              {"facets", tree.facets()},
              {"root", node_to_json(tree, tree.root())}};
}

std::vector<const LeafPage*> leaf_set(const SiteTree& tree, NodeId from) {
  std::vector<const LeafPage*> out;
  const auto& below = tree.node(from).leaves_below;
  for (auto i = below.find_first(); i != LeafSet::npos; i = below.find_next(i)) {
    out.push_back(&tree.leaves()[i]);
  }
  return out;
}

std::size_t max_depth(const SiteTree& tree) { return tree.max_depth(); }

std::vector<std::string> leaf_ids(const SiteTree& tree, const LeafSet& set) {
  std::vector<std::string> out;
  for (auto i = set.find_first(); i != LeafSet::npos; i = set.find_next(i)) out.push_back(tree.leaves()[i].id);
  return out;
}

}  // namespace extempore
