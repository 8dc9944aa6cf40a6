#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "extempore/counting.hpp"
#include "extempore/interaction_log.hpp"
#include "extempore/site.hpp"
#include "extempore/task.hpp"
#include "extempore/vocabulary.hpp"

namespace extempore {

enum class Regime { in_turn_only, out_of_turn_allowed };

std::string_view to_string(Regime regime);

/// Fewest interactions that complete `task`, one aspect per step, back clicks free.
///
/// In-turn only, the site is browsed as a plain hierarchy: a single-leaf task costs
/// the depth of its leaf, and a top-level-set task is a depth-first audit where each
/// top-level value is clicked into until a reached page decides it (every leaf below
/// satisfies the task, or none does).
///
/// With out-of-turn input the session engine is searched exhaustively over constraint
/// sets. A single-leaf task completes at its leaf, and a final in-turn input that lands
/// there is free. A top-level-set task completes when every task aspect has been
/// supplied, the frontier is the top-level page and its links equal the answer; the
/// in-turn audit remains available as a strategy.
///
/// Throws Error(unsatisfiable_task) or Error(invalid_task).
std::size_t min_interactions(const TaskSpec& task, const SiteTree& site, Regime regime);

enum class Orientation { non_oriented, out_of_turn_oriented };

std::string_view to_string(Orientation orientation);

/// Out-of-turn-oriented iff the in-turn minimum exceeds the site's maximum depth.
Orientation orientation(const TaskSpec& task, const SiteTree& site);

struct CurvePoint {
  std::size_t step;
  std::size_t remaining;

  bool operator==(const CurvePoint&) const = default;
};

using NarrowingCurve = std::vector<CurvePoint>;

/// Remaining-leaf count along the log's current interaction path: one point per
/// click or utterance, a back removes the point of the event it undoes, and
/// what-may-i-say requests add nothing. Starts at (0, total leaves).
NarrowingCurve narrowing_curve(const InteractionLog& log, std::shared_ptr<const SiteTree> site,
                               const Vocabulary& vocabulary);

struct ReportEntry {
  std::string name;
  Orientation orientation;
  TokenSequence tokens;
  SequenceClass sequence_class;
};

/// Orientation x {I} vs {O, IO, OI, M} table with per-class counts.
struct AggregateReport {
  struct Row {
    std::size_t browsing = 0;  // class I
    std::size_t other = 0;     // classes O, IO, OI, M
    std::size_t total() const { return browsing + other; }
  };
  Row non_oriented;
  Row out_of_turn_oriented;
  std::map<SequenceClassKind, std::size_t> per_class;
  std::map<std::string, std::size_t> mixed_patterns;
  std::vector<ReportEntry> entries;
  std::vector<std::string> notices;

  Row totals() const {
    return Row{non_oriented.browsing + out_of_turn_oriented.browsing, non_oriented.other + out_of_turn_oriented.other};
  }
};

/// Logs without a task (and no `default_task`) or that fail to replay are excluded with a notice.
AggregateReport aggregate_report(std::span<const InteractionLog> logs, std::shared_ptr<const SiteTree> site,
                                 const Vocabulary& vocabulary, const TaskSpec* default_task = nullptr);

std::string to_text(const AggregateReport& report);
/// One JSON record per entry, then one per table row and class.
std::vector<nlohmann::json> to_records(const AggregateReport& report);

}  // namespace extempore
