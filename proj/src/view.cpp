#include "extempore/view.hpp"

#include <algorithm>

#include "extempore/error.hpp"

namespace extempore {

std::string_view to_string(Mode mode) { return mode == Mode::in_turn ? "in-turn" : "out-of-turn"; }

View::View(const SiteTree& site, std::vector<Constraint> constraints, LeafSet remaining)
    : site_(&site), constraints_(std::move(constraints)), remaining_(std::move(remaining)), frontier_(site.root()) {
  settle();
}

View View::fresh(const SiteTree& site) { return View(site, {}, site.all_leaves()); }

View View::derive(const SiteTree& site, std::vector<Constraint> constraints) {
  auto remaining = site.all_leaves();
  for (const auto& c : constraints) remaining &= site.leaves_with(c.term);
  return View(site, std::move(constraints), std::move(remaining));
}

void View::settle() {
  const auto& site = *site_;
  frontier_ = site.root();

  // Bypass: skip pages soliciting something the user already supplied.
  while (!site.node(frontier_).is_leaf()) {
    auto value = constrained_value(site.node(frontier_).solicits);
    if (!value) break;
    const auto next = site.child(frontier_, *value);
    if (next == kNoNode || !site.node(next).leaves_below.intersects(remaining_)) break;
    frontier_ = next;
  }

  // Collapse: a single remaining leaf reached through one-link pages only.
  if (site.node(frontier_).is_leaf() || remaining_.count() != 1) return;
  const auto leaf_node = site.leaf_node(remaining_.find_first());
  for (auto n = site.node(leaf_node).parent; n != kNoNode; n = site.node(n).parent) {
    const auto& node = site.node(n);
    if (!is_constrained(node.solicits) && node.edges.size() != 1) return;
    if (n == frontier_) break;
  }
  frontier_ = leaf_node;
}

std::optional<std::string_view> View::solicits() const {
  const auto& node = site_->node(frontier_);
  if (node.is_leaf()) return std::nullopt;
  return std::string_view(node.solicits);
}

std::vector<std::string> View::available_labels() const {
  std::vector<std::string> out;
  for (const auto& edge : site_->node(frontier_).edges) {
    if (site_->node(edge.child).leaves_below.intersects(remaining_)) out.push_back(edge.label);
  }
  return out;
}

bool View::is_available(std::string_view label) const {
  const auto child = site_->child(frontier_, label);
  return child != kNoNode && site_->node(child).leaves_below.intersects(remaining_);
}

std::optional<std::string_view> View::constrained_value(std::string_view facet) const {
  for (const auto& c : constraints_) {
    if (c.term.facet == facet) return std::string_view(c.term.value);
  }
  return std::nullopt;
}

bool View::redundant(const TermValue& term) const {
  auto value = constrained_value(term.facet);
  return value && *value == term.value;
}

Mode View::mode_for(const TermValue& term) const {
  auto facet = solicits();
  return facet && *facet == term.facet && is_available(term.value) ? Mode::in_turn : Mode::out_of_turn;
}

View View::with(const TermValue& term, std::size_t step) const {
  if (auto current = constrained_value(term.facet)) {
    if (*current == term.value) return *this;
    throw Error(ErrorCode::conflict,
                "facet '" + term.facet + "' is already " + std::string(*current) + ", cannot also be " + term.value,
                {{"facet", term.facet}, {"values", {std::string(*current), term.value}}});
  }
  auto remaining = remaining_ & site_->leaves_with(term);
  if (remaining.none()) {
    throw Error(ErrorCode::no_results, "no results for " + to_string(term),
                {{"facet", term.facet}, {"value", term.value}});
  }
  auto constraints = constraints_;
  constraints.push_back(Constraint{term, mode_for(term), step});
  return View(*site_, std::move(constraints), std::move(remaining));
}

const LeafPage* View::leaf() const {
  const auto& node = site_->node(frontier_);
  return node.is_leaf() ? &site_->leaves()[*node.leaf_index] : nullptr;
}

bool View::same_state(const View& other) const {
  if (site_ != other.site_ || frontier_ != other.frontier_ || remaining_ != other.remaining_) return false;
  if (constraints_.size() != other.constraints_.size()) return false;
  return std::all_of(constraints_.begin(), constraints_.end(),
                     [&](const Constraint& c) { return other.redundant(c.term); });
}

}  // namespace extempore
