// Command-line front end: validate, serve, interact, replay, classify, mincount, orient, curve, report.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "extempore/analysis.hpp"
#include "extempore/counting.hpp"
#include "extempore/error.hpp"
#include "extempore/fixtures.hpp"
#include "extempore/interaction_log.hpp"
#include "extempore/service.hpp"
#include "extempore/session.hpp"
#include "extempore/task.hpp"

namespace {

using namespace extempore;
using nlohmann::json;

enum Exit { ok = 0, usage = 1, parse = 2, validation = 3, domain = 4 };

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::parse_error, "cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::shared_ptr<const SiteTree> load_site_ref(const std::string& ref) {
  if (fixtures::is_builtin(ref)) return std::make_shared<const SiteTree>(fixtures::builtin_site(ref));
  return std::make_shared<const SiteTree>(load_site_file(ref));
}

/// An explicit --vocab wins; a builtin site brings its own; otherwise labels only.
Vocabulary load_vocab_ref(const SiteTree& site, const std::string& site_ref, const std::string& vocab_ref) {
  if (!vocab_ref.empty()) {
    if (fixtures::is_builtin(vocab_ref)) return make_vocabulary(site, parse_vocabulary(fixtures::builtin_vocabulary(vocab_ref)));
    return make_vocabulary(site, parse_vocabulary(std::string_view(read_file(vocab_ref))));
  }
  if (fixtures::is_builtin(site_ref)) return make_vocabulary(site, parse_vocabulary(fixtures::builtin_vocabulary(site_ref)));
  return make_vocabulary(site);
}

TaskSpec load_task(const std::string& path) { return parse_task(std::string_view(read_file(path))); }

InteractionLog load_log(const std::string& path) {
  auto log = parse_log(std::string_view(read_file(path)));
  if (log.name.empty()) log.name = path;
  return log;
}

struct Options {
  std::string site = "builtin:mini-congress";
  std::string vocab;
  std::string task;
  std::vector<std::string> logs;
  std::string tokens;
  std::string format = "text";
  std::string save;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::vector<std::string> serve_sites;
  long idle_minutes = 30;

  bool records() const { return format == "records"; }
};

void print_summary(std::ostream& out, const StateSummary& s) {
  out << "  input so far: " << (s.input_so_far.empty() ? "(none)" : s.input_so_far_label()) << '\n';
  if (s.terminal && s.leaf) {
    out << "  leaf: " << s.leaf->id << " \"" << s.leaf->title << "\" " << s.leaf->url << '\n';
  } else {
    out << "  solicits: " << s.solicits.value_or("-") << '\n';
    out << "  links:";
    for (std::size_t i = 0; i < s.links.size(); ++i) out << (i ? " | " : " ") << s.links[i];
    out << '\n';
  }
  out << "  remaining: " << s.remaining_leaf_count << '\n';
}

int cmd_validate(const Options& o) {
  auto site = load_site_ref(o.site);
  const auto vocab = load_vocab_ref(*site, o.site, o.vocab);
  if (o.records()) {
    std::cout << json{{"record", "validation"}, {"site", site->id()}, {"valid", true}, {"leaves", site->leaf_count()},
                      {"max_depth", site->max_depth()}, {"facets", site->facets()},
                      {"tokens", vocab.lexicon.entries().size()}, {"dependencies", vocab.fds.size()}}
                     .dump()
              << '\n';
    return ok;
  }
  std::cout << "valid: " << site->id() << " \"" << site->title() << "\"\n"
            << "  leaves: " << site->leaf_count() << '\n'
            << "  max depth: " << site->max_depth() << '\n'
            << "  facets:";
  for (const auto& f : site->facets()) std::cout << ' ' << f;
  std::cout << "\n  vocabulary: " << vocab.lexicon.entries().size() << " tokens, " << vocab.fds.size()
            << " dependencies\n";
  return ok;
}

int cmd_serve(const Options& o) {
  std::map<std::string, SiteEntry> sites;
  auto refs = o.serve_sites.empty() ? std::vector<std::string>{"builtin:mini-congress", "builtin:full-congress"} : o.serve_sites;
  for (const auto& ref : refs) {
    auto site = load_site_ref(ref);
    auto vocab = std::make_shared<const Vocabulary>(load_vocab_ref(*site, ref, refs.size() == 1 ? o.vocab : ""));
    const auto id = site->id();
    sites[id] = SiteEntry{std::move(site), std::move(vocab)};
  }
  ServiceConfig config;
  config.idle_expiry = std::chrono::minutes(o.idle_minutes);
  Service service(std::move(sites), config);
  std::cerr << "listening on http://" << o.host << ':' << o.port << '\n';
  if (!service.listen(o.host, o.port)) {
    std::cerr << "error: cannot listen on " << o.host << ':' << o.port << '\n';
    return domain;
  }
  return ok;
}

int cmd_interact(const Options& o) {
  if (o.logs.size() != 1) throw CLI::ValidationError("--log", "interact takes exactly one event script");
  auto site = load_site_ref(o.site);
  const auto vocab = load_vocab_ref(*site, o.site, o.vocab);
  const auto script = load_log(o.logs.front());
  Session session(site);
  int status = ok;

  auto emit = [&](const InteractionEvent& request, const json* error) {
    if (o.records()) {
      json r{{"record", "step"}, {"kind", to_string(request.kind)}, {"payload", request.payload}};
      if (error) r["error"] = *error;
      else r["summary"] = to_json(session.summary());
      std::cout << r.dump() << '\n';
      return;
    }
    std::cout << to_string(request.kind);
    if (!request.payload.empty()) std::cout << " \"" << request.payload << '"';
    if (error) {
      std::cout << "\n  error " << (*error)["code"].get<std::string>() << ": " << (*error)["message"].get<std::string>()
                << '\n';
      return;
    }
    if (!session.events().empty() && session.events().back().kind == request.kind &&
        !session.events().back().tokens.empty()) {
      std::cout << " [" << to_string(session.events().back().tokens) << ']';
    }
    std::cout << '\n';
    if (request.kind == EventKind::what_may_i_say) return;
    print_summary(std::cout, session.summary());
  };

  for (const auto& e : script.events) {
    try {
      switch (e.kind) {
        case EventKind::click: session.click(e.payload); break;
        case EventKind::utterance: session.utter(e.payload, vocab); break;
        case EventKind::back: session.back(); break;
        case EventKind::what_may_i_say: {
          const auto guidance = session.what_may_i_say(vocab.lexicon);
          if (o.records()) {
            std::cout << json{{"record", "what-may-i-say"}, {"guidance", to_json(guidance)}}.dump() << '\n';
            continue;
          }
          emit(e, nullptr);
          for (const auto& [facet, values] : guidance) {
            std::cout << "  " << facet << ':';
            for (std::size_t i = 0; i < values.size(); ++i) std::cout << (i ? " | " : " ") << values[i];
            std::cout << '\n';
          }
          continue;
        }
      }
      emit(e, nullptr);
    } catch (const Error& err) {
      const auto j = err.to_json();
      emit(e, &j);
      status = domain;
    }
  }
  if (!o.save.empty()) {
    std::ofstream out(o.save);
    out << to_json(log_of(session, script.task)).dump(2) << '\n';
  }
  return status;
}

int cmd_replay(const Options& o) {
  auto site = load_site_ref(o.site);
  const auto vocab = load_vocab_ref(*site, o.site, o.vocab);
  for (const auto& path : o.logs) {
    const auto log = load_log(path);
    const auto session = replay(site, vocab, log);
    const auto tokens = session_tokens(session.events());
    if (o.records()) {
      std::cout << json{{"record", "replay"}, {"log", log.name}, {"tokens", to_string(tokens)},
                        {"events", to_json(log_of(session, log.task))["events"]},
                        {"summary", to_json(session.summary())}}
                       .dump()
                << '\n';
    } else {
      std::cout << to_string(tokens) << '\n';
    }
  }
  return ok;
}

int cmd_classify(const Options& o) {
  std::vector<std::pair<std::string, TokenSequence>> inputs;
  if (!o.tokens.empty()) inputs.emplace_back(o.tokens, parse_tokens(o.tokens));
  if (!o.logs.empty()) {
    auto site = load_site_ref(o.site);
    const auto vocab = load_vocab_ref(*site, o.site, o.vocab);
    for (const auto& path : o.logs) {
      const auto log = load_log(path);
      inputs.emplace_back(log.name, session_tokens(replay(site, vocab, log).events()));
    }
  }
  if (inputs.empty()) throw CLI::ValidationError("classify", "needs --tokens or --log");
  for (const auto& [name, tokens] : inputs) {
    const auto cls = classify_sequence(tokens);
    if (o.records()) {
      std::cout << json{{"record", "class"}, {"input", name}, {"tokens", to_string(tokens)},
                        {"class", to_string(cls.kind)}, {"pattern", cls.pattern}}
                       .dump()
                << '\n';
    } else if (cls.kind == SequenceClassKind::M) {
      std::cout << "M " << cls.pattern << '\n';
    } else {
      std::cout << to_string(cls.kind) << '\n';
    }
  }
  return ok;
}

TaskSpec required_task(const Options& o) {
  if (o.task.empty()) throw CLI::ValidationError("--task", "this command needs --task");
  return load_task(o.task);
}

int cmd_mincount(const Options& o) {
  auto site = load_site_ref(o.site);
  const auto task = required_task(o);
  const auto in_turn = min_interactions(task, *site, Regime::in_turn_only);
  const auto out_of_turn = min_interactions(task, *site, Regime::out_of_turn_allowed);
  if (o.records()) {
    std::cout << json{{"record", "mincount"}, {"task", to_json(task)}, {"in-turn-only", in_turn},
                      {"out-of-turn-allowed", out_of_turn}, {"max_depth", site->max_depth()}}
                     .dump()
              << '\n';
  } else {
    std::cout << "in-turn-only " << in_turn << "\nout-of-turn-allowed " << out_of_turn << '\n';
  }
  return ok;
}

int cmd_orient(const Options& o) {
  auto site = load_site_ref(o.site);
  const auto task = required_task(o);
  const auto result = orientation(task, *site);
  if (o.records()) {
    std::cout << json{{"record", "orientation"}, {"task", to_json(task)}, {"orientation", to_string(result)},
                      {"in-turn-only", min_interactions(task, *site, Regime::in_turn_only)},
                      {"max_depth", site->max_depth()}}
                     .dump()
              << '\n';
  } else {
    std::cout << to_string(result) << '\n';
  }
  return ok;
}

int cmd_curve(const Options& o) {
  auto site = load_site_ref(o.site);
  const auto vocab = load_vocab_ref(*site, o.site, o.vocab);
  for (const auto& path : o.logs) {
    const auto log = load_log(path);
    for (const auto& p : narrowing_curve(log, site, vocab)) {
      if (o.records()) {
        std::cout << json{{"record", "point"}, {"log", log.name}, {"step", p.step}, {"remaining", p.remaining}}.dump()
                  << '\n';
      } else {
        std::cout << p.step << ' ' << p.remaining << '\n';
      }
    }
  }
  return ok;
}

int cmd_report(const Options& o) {
  auto site = load_site_ref(o.site);
  const auto vocab = load_vocab_ref(*site, o.site, o.vocab);
  std::vector<InteractionLog> logs;
  for (const auto& path : o.logs) {
    try {
      logs.push_back(load_log(path));
    } catch (const Error& e) {
      std::cerr << "notice: " << path << ": excluded, " << e.what() << '\n';
    }
  }
  std::optional<TaskSpec> task;
  if (!o.task.empty()) task = load_task(o.task);
  const auto report = aggregate_report(logs, site, vocab, task ? &*task : nullptr);
  if (o.records()) {
    for (const auto& r : to_records(report)) std::cout << r.dump() << '\n';
  } else {
    std::cout << to_text(report);
  }
  return ok;
}

int exit_for(const Error& e) {
  switch (category_of(e.code())) {
    case ErrorCategory::parse: return parse;
    case ErrorCategory::validation: return validation;
    default: return domain;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Out-of-turn interaction toolkit for hierarchical sites"};
  app.require_subcommand(1);
  Options o;

  auto add_site = [&](CLI::App* cmd) {
    cmd->add_option("--site", o.site, "Site document, or builtin:mini-congress / builtin:full-congress")
        ->capture_default_str();
    cmd->add_option("--vocab", o.vocab, "Vocabulary document");
  };
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "records"}))->capture_default_str();
  };
  auto add_logs = [&](CLI::App* cmd, bool required) {
    auto opt = cmd->add_option("--log", o.logs, "Interaction log (repeatable)");
    if (required) opt->required();
  };

  auto validate = app.add_subcommand("validate", "Check a site and its vocabulary");
  add_site(validate);
  add_format(validate);

  auto serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--site", o.serve_sites, "Site document (repeatable; default: both builtin sites)");
  serve->add_option("--vocab", o.vocab, "Vocabulary document (with a single --site)");
  serve->add_option("--host", o.host)->capture_default_str();
  serve->add_option("--port", o.port)->capture_default_str()->check(CLI::Range(0, 65535));
  serve->add_option("--idle-minutes", o.idle_minutes, "Idle session expiry")->capture_default_str();

  auto interact = app.add_subcommand("interact", "Run a scripted session and print each state");
  add_site(interact);
  add_logs(interact, true);
  add_format(interact);
  interact->add_option("--save", o.save, "Write the resulting log here");

  auto replay_cmd = app.add_subcommand("replay", "Replay logs and print their token sequences");
  add_site(replay_cmd);
  add_logs(replay_cmd, true);
  add_format(replay_cmd);

  auto classify = app.add_subcommand("classify", "Classify a token sequence or a log");
  add_site(classify);
  add_logs(classify, false);
  classify->add_option("--tokens", o.tokens, "Token string such as OOI");
  add_format(classify);

  auto mincount = app.add_subcommand("mincount", "Minimum interactions in both regimes");
  add_site(mincount);
  mincount->add_option("--task", o.task, "Task document")->required();
  add_format(mincount);

  auto orient = app.add_subcommand("orient", "Task orientation");
  add_site(orient);
  orient->add_option("--task", o.task, "Task document")->required();
  add_format(orient);

  auto curve = app.add_subcommand("curve", "Narrowing curve of a log");
  add_site(curve);
  add_logs(curve, true);
  add_format(curve);

  auto report = app.add_subcommand("report", "Aggregate table over logs");
  add_site(report);
  add_logs(report, false);
  report->add_option("--task", o.task, "Task for logs that carry none");
  add_format(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : usage;
  }

  try {
    if (*validate) return cmd_validate(o);
    if (*serve) return cmd_serve(o);
    if (*interact) return cmd_interact(o);
    if (*replay_cmd) return cmd_replay(o);
    if (*classify) return cmd_classify(o);
    if (*mincount) return cmd_mincount(o);
    if (*orient) return cmd_orient(o);
    if (*curve) return cmd_curve(o);
    if (*report) return cmd_report(o);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    if (!e.details().empty() && !e.details().is_null()) std::cerr << "  details: " << e.details().dump() << '\n';
    return exit_for(e);
  }
  return usage;
}
