#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "extempore/counting.hpp"
#include "extempore/site.hpp"
#include "extempore/view.hpp"
#include "extempore/vocabulary.hpp"

namespace extempore {

enum class EventKind { click, utterance, back, what_may_i_say };

std::string_view to_string(EventKind kind);
EventKind event_kind_from_string(std::string_view text);

struct InteractionEvent {
  std::size_t step = 0;
  EventKind kind = EventKind::click;
  std::string payload;
  /// Aspects after resolution and dependency expansion.
  std::vector<AspectTerm> aspects;
  TokenSequence tokens;
  std::int64_t timestamp_ms = 0;
  /// Post-completion checking clicks, excluded from classification.
  bool verification = false;
};

/// What the user sees: the status bar, the current page of links and, at the end, the leaf.
struct StateSummary {
  std::vector<Constraint> input_so_far;
  std::optional<std::string> solicits;
  std::vector<std::string> links;
  std::size_t remaining_leaf_count = 0;
  bool terminal = false;
  std::optional<LeafPage> leaf;

  /// "party=Democrat (out-of-turn), branch=Senate (out-of-turn)"
  std::string input_so_far_label() const;
};

nlohmann::json to_json(const StateSummary& summary);

/// One user's browsing dialog with a site.
///
/// Every mutating call is atomic: on error the session is left exactly as it was
/// and nothing is logged. `back` undoes one whole event.
class Session {
 public:
  using Clock = std::function<std::int64_t()>;

  explicit Session(std::shared_ptr<const SiteTree> site, Clock clock = {});

  const SiteTree& site() const { return *site_; }
  const std::shared_ptr<const SiteTree>& site_ptr() const { return site_; }
  const View& view() const { return view_; }
  std::size_t remaining_leaf_count() const { return view_.remaining_count(); }
  bool terminal() const { return view_.terminal(); }
  std::size_t history_depth() const { return history_.size(); }
  const std::vector<InteractionEvent>& events() const { return events_; }

  StateSummary summary() const;

  /// Follows a link on the current page.
  /// Throws Error(terminal) at a leaf and Error(unknown_label) listing the available links.
  const InteractionEvent& click(std::string_view label);

  /// Resolves, expands and applies a typed utterance as one event.
  const InteractionEvent& utter(std::string_view raw, const Vocabulary& vocabulary);

  /// Applies already-resolved aspects as one utterance event (used for log replay).
  const InteractionEvent& apply_utterance(std::string_view raw, const std::vector<AspectTerm>& aspects);

  /// Applies a single aspect; its mode follows from the frontier, not from the caller.
  const InteractionEvent& apply_aspect(const TermValue& term);

  /// Throws Error(at_start) when there is nothing to undo.
  const InteractionEvent& back();

  /// Lists utterable values and records the request in the log.
  Guidance what_may_i_say(const Lexicon& lexicon);

  /// Flags the most recent event as a verification input.
  void mark_verification();

 private:
  const InteractionEvent& record(EventKind kind, std::string payload, std::vector<AspectTerm> aspects,
                                 TokenSequence tokens);

  std::shared_ptr<const SiteTree> site_;
  Clock clock_;
  View view_;
  std::vector<View> history_;
  std::vector<InteractionEvent> events_;
};

/// Concatenated tokens of all non-verification events.
TokenSequence session_tokens(const std::vector<InteractionEvent>& events);

}  // namespace extempore
