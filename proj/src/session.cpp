#include "extempore/session.hpp"

#include <chrono>

#include "extempore/error.hpp"

namespace extempore {

using nlohmann::json;

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::click: return "click";
    case EventKind::utterance: return "utterance";
    case EventKind::back: return "back";
    case EventKind::what_may_i_say: return "what-may-i-say";
  }
  return "?";
}

EventKind event_kind_from_string(std::string_view text) {
  if (text == "click") return EventKind::click;
  if (text == "utterance") return EventKind::utterance;
  if (text == "back") return EventKind::back;
  if (text == "what-may-i-say") return EventKind::what_may_i_say;
  throw Error(ErrorCode::parse_error, "unknown event kind '" + std::string(text) + "'");
}

std::string StateSummary::input_so_far_label() const {
  std::string out;
  for (const auto& c : input_so_far) {
    if (!out.empty()) out += ", ";
    out += to_string(c.term);
    out += " (";
    out += to_string(c.mode);
    out += ')';
  }
  return out;
}

json to_json(const StateSummary& summary) {
  json input = json::array();
  for (const auto& c : summary.input_so_far) {
    input.push_back(json{{"facet", c.term.facet}, {"value", c.term.value}, {"mode", to_string(c.mode)}, {"step", c.step}});
  }
  json leaf = nullptr;
  if (summary.leaf) {
    leaf = json{{"id", summary.leaf->id},
                {"title", summary.leaf->title},
                {"url", summary.leaf->url},
                {"attributes", summary.leaf->attributes}};
  }
  return json{{"input_so_far", std::move(input)},
              {"input_so_far_label", summary.input_so_far_label()},
              {"solicits", summary.solicits ? json(*summary.solicits) : json(nullptr)},
              {"links", summary.links},
              {"remaining_leaf_count", summary.remaining_leaf_count},
              {"terminal", summary.terminal},
              {"leaf", std::move(leaf)}};
}

namespace {

std::int64_t wall_clock_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

}  // namespace

Session::Session(std::shared_ptr<const SiteTree> site, Clock clock)
    : site_(std::move(site)), clock_(clock ? std::move(clock) : Clock(wall_clock_ms)), view_(View::fresh(*site_)) {}

StateSummary Session::summary() const {
  StateSummary s;
  s.input_so_far = view_.constraints();
  if (auto facet = view_.solicits()) s.solicits = std::string(*facet);
  s.links = view_.available_labels();
  s.remaining_leaf_count = view_.remaining_count();
  s.terminal = view_.terminal();
  if (const auto* leaf = view_.leaf()) s.leaf = *leaf;
  return s;
}

const InteractionEvent& Session::record(EventKind kind, std::string payload, std::vector<AspectTerm> aspects,
                                        TokenSequence tokens) {
  InteractionEvent event;
  event.step = events_.size() + 1;
  event.kind = kind;
  event.payload = std::move(payload);
  event.aspects = std::move(aspects);
  event.tokens = std::move(tokens);
  event.timestamp_ms = clock_();
  events_.push_back(std::move(event));
  return events_.back();
}

const InteractionEvent& Session::click(std::string_view label) {
  if (view_.terminal()) {
    throw Error(ErrorCode::terminal, "terminal: the session is at leaf " + view_.leaf()->id,
                {{"leaf", view_.leaf()->id}});
  }
  if (!view_.is_available(label)) {
    throw Error(ErrorCode::unknown_label, "no link labelled '" + std::string(label) + "'",
                {{"label", label}, {"available", view_.available_labels()}});
  }
  const TermValue term{std::string(*view_.solicits()), std::string(label)};
  auto next = view_.with(term, events_.size() + 1);
  history_.push_back(std::move(view_));
  view_ = std::move(next);
  return record(EventKind::click, std::string(label), {AspectTerm{term, AspectOrigin::literal, std::string(label)}},
                {Token::I});
}

const InteractionEvent& Session::utter(std::string_view raw, const Vocabulary& vocabulary) {
  return apply_utterance(raw, expand(resolve(raw, vocabulary.lexicon), vocabulary.fds));
}

const InteractionEvent& Session::apply_utterance(std::string_view raw, const std::vector<AspectTerm>& aspects) {
  const auto step = events_.size() + 1;
  View next = view_;
  for (const auto& aspect : aspects) next = next.with(aspect.term, step);
  auto tokens = tokenize_event(aspects, view_);
  history_.push_back(std::move(view_));
  view_ = std::move(next);
  return record(EventKind::utterance, std::string(raw), aspects, std::move(tokens));
}

const InteractionEvent& Session::apply_aspect(const TermValue& term) {
  return apply_utterance(term.value, {AspectTerm{term, AspectOrigin::literal, term.value}});
}

const InteractionEvent& Session::back() {
  if (history_.empty()) throw Error(ErrorCode::at_start, "at start: nothing to go back to");
  view_ = std::move(history_.back());
  history_.pop_back();
  return record(EventKind::back, "", {}, {});
}

Guidance Session::what_may_i_say(const Lexicon& lexicon) {
  auto guidance = extempore::what_may_i_say(*this, lexicon);
  record(EventKind::what_may_i_say, "", {}, {});
  return guidance;
}

void Session::mark_verification() {
  if (!events_.empty()) events_.back().verification = true;
}

TokenSequence session_tokens(const std::vector<InteractionEvent>& events) {
  TokenSequence out;
  for (const auto& e : events) {
    if (e.verification) continue;
    out.insert(out.end(), e.tokens.begin(), e.tokens.end());
  }
  return out;
}

}  // namespace extempore
