#include "extempore/interaction_log.hpp"

#include "extempore/error.hpp"

namespace extempore {

using nlohmann::json;

json to_json(const InteractionEvent& event) {
  json aspects = json::array();
  for (const auto& a : event.aspects) {
    aspects.push_back(json{{"facet", a.term.facet}, {"value", a.term.value}, {"origin", to_string(a.origin)}});
  }
  json tokens = json::array();
  for (auto t : event.tokens) tokens.push_back(std::string(1, static_cast<char>(t)));
  json out{{"step", event.step},
           {"kind", to_string(event.kind)},
           {"payload", event.payload},
           {"aspects", std::move(aspects)},
           {"mode_tokens", std::move(tokens)},
           {"timestamp", event.timestamp_ms}};
  if (event.verification) out["verification"] = true;
  return out;
}

json to_json(const InteractionLog& log) {
  json events = json::array();
  for (const auto& e : log.events) events.push_back(to_json(e));
  json out{{"format", InteractionLog::kFormat}, {"events", std::move(events)}};
  if (!log.name.empty()) out["name"] = log.name;
  if (!log.site_id.empty()) out["site"] = log.site_id;
  if (log.task) out["task"] = to_json(*log.task);
  return out;
}

namespace {

InteractionEvent parse_event(const json& record, std::size_t position) {
  const auto where = "event " + std::to_string(position);
  if (!record.is_object()) throw Error(ErrorCode::parse_error, where + " must be an object");
  InteractionEvent e;
  e.step = record.value("step", position);
  if (!record.contains("kind") || !record["kind"].is_string()) {
    throw Error(ErrorCode::parse_error, where + " needs a string 'kind'");
  }
  e.kind = event_kind_from_string(record["kind"].get<std::string>());
  e.payload = record.value("payload", std::string());
  if ((e.kind == EventKind::click || e.kind == EventKind::utterance) && e.payload.empty()) {
    throw Error(ErrorCode::parse_error, where + " needs a 'payload'");
  }
  if (auto aspects = record.find("aspects"); aspects != record.end() && aspects->is_array()) {
    for (const auto& a : *aspects) {
      if (!a.is_object() || !a.contains("facet") || !a.contains("value")) {
        throw Error(ErrorCode::parse_error, where + ": aspects need 'facet' and 'value'");
      }
      e.aspects.push_back(AspectTerm{TermValue{a["facet"].get<std::string>(), a["value"].get<std::string>()},
                                     aspect_origin_from_string(a.value("origin", std::string("literal"))),
                                     a.value("token", std::string())});
    }
  }
  if (auto tokens = record.find("mode_tokens"); tokens != record.end() && tokens->is_array()) {
    std::string joined;
    for (const auto& t : *tokens) joined += t.get<std::string>();
    e.tokens = parse_tokens(joined);
  }
  e.timestamp_ms = record.value("timestamp", std::int64_t{0});
  e.verification = record.value("verification", false);
  return e;
}

}  // namespace

InteractionLog parse_log(const json& doc) {
  InteractionLog log;
  const json* events = &doc;
  if (doc.is_object()) {
    if (auto it = doc.find("format"); it != doc.end() && *it != InteractionLog::kFormat) {
      throw Error(ErrorCode::parse_error, "unsupported log format, expected extempore-log/1");
    }
    log.name = doc.value("name", std::string());
    log.site_id = doc.value("site", std::string());
    if (auto task = doc.find("task"); task != doc.end() && !task->is_null()) log.task = parse_task(*task);
    auto it = doc.find("events");
    if (it == doc.end()) throw Error(ErrorCode::parse_error, "log document needs an 'events' list");
    events = &*it;
  }
  if (!events->is_array()) throw Error(ErrorCode::parse_error, "log events must be a list");
  for (std::size_t i = 0; i < events->size(); ++i) log.events.push_back(parse_event((*events)[i], i + 1));
  return log;
}

InteractionLog parse_log(std::string_view text) {
  try {
    return parse_log(json::parse(text));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse_error, std::string("malformed log document: ") + e.what());
  }
}

InteractionLog log_of(const Session& session, std::optional<TaskSpec> task) {
  InteractionLog log;
  log.site_id = session.site().id();
  log.task = std::move(task);
  log.events = session.events();
  return log;
}

Session replay(std::shared_ptr<const SiteTree> site, const Vocabulary& vocabulary, const InteractionLog& log) {
  auto now = std::make_shared<std::int64_t>(0);
  Session session(std::move(site), [now] { return *now; });
  for (const auto& e : log.events) {
    *now = e.timestamp_ms;
    try {
      switch (e.kind) {
        case EventKind::click: session.click(e.payload); break;
        case EventKind::utterance:
          if (e.aspects.empty()) session.utter(e.payload, vocabulary);
          else session.apply_utterance(e.payload, e.aspects);
          break;
        case EventKind::back: session.back(); break;
        case EventKind::what_may_i_say: session.what_may_i_say(vocabulary.lexicon); break;
      }
    } catch (const Error& err) {
      throw Error(ErrorCode::replay_error, "replay failed at step " + std::to_string(e.step) + ": " + err.what(),
                  {{"step", e.step}, {"cause", err.to_json()}});
    }
    if (e.verification) session.mark_verification();
  }
  return session;
}

}  // namespace extempore
