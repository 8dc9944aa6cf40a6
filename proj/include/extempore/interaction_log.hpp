#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "extempore/session.hpp"
#include "extempore/task.hpp"
#include "extempore/vocabulary.hpp"

namespace extempore {

/// An extempore-log/1 document: ordered event records, optionally tagged with a task.
struct InteractionLog {
  static constexpr std::string_view kFormat = "extempore-log/1";

  std::string name;
  std::string site_id;
  std::optional<TaskSpec> task;
  std::vector<InteractionEvent> events;
};

nlohmann::json to_json(const InteractionEvent& event);
nlohmann::json to_json(const InteractionLog& log);

/// Accepts the full document or a bare list of event records.
/// Records only need `kind` and, for clicks and utterances, `payload`.
InteractionLog parse_log(const nlohmann::json& document);
InteractionLog parse_log(std::string_view text);

InteractionLog log_of(const Session& session, std::optional<TaskSpec> task = std::nullopt);

/// Re-drives a session through the log's events. Utterance records carrying
/// aspects are applied as recorded; others are resolved with `vocabulary`.
/// Tokens are recomputed. Throws Error(replay_error) naming the failing step.
Session replay(std::shared_ptr<const SiteTree> site, const Vocabulary& vocabulary, const InteractionLog& log);

}  // namespace extempore
