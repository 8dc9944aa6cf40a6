#include "extempore/analysis.hpp"

#include <iomanip>
#include <sstream>

#include "extempore/error.hpp"

namespace extempore {

using nlohmann::json;

NarrowingCurve narrowing_curve(const InteractionLog& log, std::shared_ptr<const SiteTree> site,
                               const Vocabulary& vocabulary) {
  const auto session = replay(site, vocabulary, log);
  NarrowingCurve curve{{0, site->leaf_count()}};

  // Walk the replayed events against a shadow session to read counts after each one.
  Session shadow(site, [] { return std::int64_t{0}; });
  for (const auto& e : session.events()) {
    switch (e.kind) {
      case EventKind::click:
        shadow.click(e.payload);
        curve.push_back({curve.size(), shadow.remaining_leaf_count()});
        break;
      case EventKind::utterance:
        shadow.apply_utterance(e.payload, e.aspects);
        curve.push_back({curve.size(), shadow.remaining_leaf_count()});
        break;
      case EventKind::back:
        shadow.back();
        if (curve.size() > 1) curve.pop_back();
        break;
      case EventKind::what_may_i_say: break;
    }
  }
  return curve;
}

namespace {

std::string task_key(const TaskSpec& task) { return to_json(task).dump(); }

}  // namespace

AggregateReport aggregate_report(std::span<const InteractionLog> logs, std::shared_ptr<const SiteTree> site,
                                 const Vocabulary& vocabulary, const TaskSpec* default_task) {
  AggregateReport report;
  for (auto kind : {SequenceClassKind::I, SequenceClassKind::O, SequenceClassKind::IO, SequenceClassKind::OI,
                    SequenceClassKind::M}) {
    report.per_class[kind] = 0;
  }
  std::map<std::string, Orientation> orientations;

  for (std::size_t i = 0; i < logs.size(); ++i) {
    const auto& log = logs[i];
    const auto name = log.name.empty() ? "log " + std::to_string(i + 1) : log.name;
    const TaskSpec* task = log.task ? &*log.task : default_task;
    if (!task) {
      report.notices.push_back(name + ": excluded, no task attached");
      continue;
    }
    try {
      const auto key = task_key(*task);
      auto it = orientations.find(key);
      if (it == orientations.end()) it = orientations.emplace(key, orientation(*task, *site)).first;

      const auto session = replay(site, vocabulary, log);
      auto tokens = session_tokens(session.events());
      auto cls = classify_sequence(tokens);

      auto& row = it->second == Orientation::non_oriented ? report.non_oriented : report.out_of_turn_oriented;
      if (cls.kind == SequenceClassKind::I) ++row.browsing;
      else ++row.other;
      ++report.per_class[cls.kind];
      if (cls.kind == SequenceClassKind::M) ++report.mixed_patterns[cls.pattern];
      report.entries.push_back(ReportEntry{name, it->second, std::move(tokens), std::move(cls)});
    } catch (const Error& e) {
      report.notices.push_back(name + ": excluded, " + e.what());
    }
  }
  return report;
}

std::string to_text(const AggregateReport& report) {
  std::ostringstream out;
  auto row = [&](const char* label, const AggregateReport::Row& r) {
    out << std::left << std::setw(22) << label << std::right << std::setw(6) << r.browsing << std::setw(14)
        << r.other << std::setw(8) << r.total() << '\n';
  };
  out << std::left << std::setw(22) << "" << std::right << std::setw(6) << "I" << std::setw(14) << "{O,IO,OI,M}"
      << std::setw(8) << "total" << '\n';
  row("non-oriented", report.non_oriented);
  row("out-of-turn-oriented", report.out_of_turn_oriented);
  row("total", report.totals());
  out << '\n';
  for (const auto& [kind, count] : report.per_class) {
    out << std::left << std::setw(6) << to_string(kind) << count << '\n';
  }
  for (const auto& [pattern, count] : report.mixed_patterns) {
    out << "  M/" << pattern << ' ' << count << '\n';
  }
  for (const auto& notice : report.notices) out << "notice: " << notice << '\n';
  return out.str();
}

std::vector<json> to_records(const AggregateReport& report) {
  std::vector<json> out;
  for (const auto& e : report.entries) {
    out.push_back(json{{"record", "sequence"},
                       {"name", e.name},
                       {"orientation", to_string(e.orientation)},
                       {"tokens", to_string(e.tokens)},
                       {"class", to_string(e.sequence_class.kind)},
                       {"pattern", e.sequence_class.pattern}});
  }
  auto row = [&](const char* label, const AggregateReport::Row& r) {
    out.push_back(json{{"record", "table"}, {"row", label}, {"I", r.browsing}, {"other", r.other}, {"total", r.total()}});
  };
  row("non-oriented", report.non_oriented);
  row("out-of-turn-oriented", report.out_of_turn_oriented);
  row("total", report.totals());
  for (const auto& [kind, count] : report.per_class) {
    out.push_back(json{{"record", "class"}, {"class", to_string(kind)}, {"count", count}});
  }
  for (const auto& [pattern, count] : report.mixed_patterns) {
    out.push_back(json{{"record", "pattern"}, {"pattern", pattern}, {"count", count}});
  }
  for (const auto& notice : report.notices) out.push_back(json{{"record", "notice"}, {"message", notice}});
  return out;
}

}  // namespace extempore
