#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "extempore/site.hpp"

namespace extempore {

enum class Mode { in_turn, out_of_turn };

std::string_view to_string(Mode mode);

struct Constraint {
  TermValue term;
  Mode mode;
  std::size_t step;

  bool operator==(const Constraint&) const = default;
};

/// The pruned view of a site induced by an ordered set of constraints.
///
/// Remaining leaves are exactly those whose attributes include every constraint.
/// The frontier is found by descending from the root along constrained edges
/// (bypass) and then jumping to the single remaining leaf when every unconstrained
/// page between the frontier and that leaf offers exactly one link (vertical collapse).
/// Both are functions of the constraint set alone, so application order never matters.
class View {
 public:
  static View fresh(const SiteTree& site);

  /// Recomputes remaining leaves and frontier for `constraints` from scratch.
  static View derive(const SiteTree& site, std::vector<Constraint> constraints);

  const SiteTree& site() const { return *site_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const LeafSet& remaining() const { return remaining_; }
  std::size_t remaining_count() const { return remaining_.count(); }
  NodeId frontier() const { return frontier_; }
  bool terminal() const { return site_->node(frontier_).is_leaf(); }

  /// Facet solicited at the frontier; nullopt at a leaf.
  std::optional<std::string_view> solicits() const;

  /// Frontier edges that still lead to a remaining leaf, in document order.
  std::vector<std::string> available_labels() const;
  bool is_available(std::string_view label) const;

  std::optional<std::string_view> constrained_value(std::string_view facet) const;
  bool is_constrained(std::string_view facet) const { return constrained_value(facet).has_value(); }

  /// True when `term` is already in force (same facet, same value).
  bool redundant(const TermValue& term) const;

  /// In-turn iff the frontier solicits the term's facet and offers its value as a link.
  Mode mode_for(const TermValue& term) const;

  /// Adds one aspect. A redundant term returns an unchanged copy.
  /// Throws Error(conflict) for a different value on a constrained facet and
  /// Error(no_results) when no remaining leaf carries the term.
  View with(const TermValue& term, std::size_t step) const;

  /// The leaf at the frontier; nullptr unless terminal.
  const LeafPage* leaf() const;

  /// Equality of constraint sets (ignoring order and step numbers), leaves and frontier.
  bool same_state(const View& other) const;

  bool operator==(const View& other) const {
    return site_ == other.site_ && constraints_ == other.constraints_ && remaining_ == other.remaining_ &&
           frontier_ == other.frontier_;
  }

 private:
  View(const SiteTree& site, std::vector<Constraint> constraints, LeafSet remaining);
  void settle();

  const SiteTree* site_;
  std::vector<Constraint> constraints_;
  LeafSet remaining_;
  NodeId frontier_ = 0;
};

}  // namespace extempore
