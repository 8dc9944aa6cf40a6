#include "extempore/vocabulary.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

#include "extempore/error.hpp"
#include "extempore/session.hpp"

namespace extempore {

using nlohmann::json;

std::string_view to_string(TokenSource source) {
  switch (source) {
    case TokenSource::label: return "label";
    case TokenSource::synonym: return "synonym";
    case TokenSource::abbreviation: return "abbreviation";
  }
  return "?";
}

std::string_view to_string(AspectOrigin origin) {
  return origin == AspectOrigin::literal ? "literal" : "fd-implied";
}

AspectOrigin aspect_origin_from_string(std::string_view text) {
  if (text == "literal") return AspectOrigin::literal;
  if (text == "fd-implied") return AspectOrigin::fd_implied;
  throw Error(ErrorCode::parse_error, "unknown aspect origin '" + std::string(text) + "'");
}

namespace {

bool kept(unsigned char c) {
  return std::isalnum(c) || c >= 0x80 || c == '-' || c == '\'' || c == '&' || c == '/';
}

std::vector<std::string> words_of(std::string_view normalized) {
  std::vector<std::string> words;
  std::size_t start = 0;
  while (start < normalized.size()) {
    auto end = normalized.find(' ', start);
    if (end == std::string_view::npos) end = normalized.size();
    words.emplace_back(normalized.substr(start, end - start));
    start = end + 1;
  }
  return words;
}

std::string join(const std::vector<std::string>& words, std::size_t from, std::size_t to) {
  std::string out;
  for (auto i = from; i < to; ++i) {
    if (i > from) out += ' ';
    out += words[i];
  }
  return out;
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const auto above = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diagonal + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diagonal = above;
    }
  }
  return row[b.size()];
}

}  // namespace

std::string normalize(std::string_view text) {
  std::string out;
  bool pending_space = false;
  for (unsigned char c : text) {
    if (!kept(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += static_cast<char>(std::tolower(c));
  }
  return out;
}

void Lexicon::add(std::string_view token, TermValue term, TokenSource source) {
  auto key = normalize(token);
  if (key.empty()) return;
  auto& bucket = entries_[key];
  for (const auto& e : bucket) {
    if (e.term == term) return;
  }
  bucket.push_back(LexiconEntry{std::move(term), source});
  longest_words_ = std::max(longest_words_, words_of(key).size());
}

const std::vector<LexiconEntry>& Lexicon::lookup(std::string_view normalized_token) const {
  static const std::vector<LexiconEntry> none;
  auto it = entries_.find(normalized_token);
  return it == entries_.end() ? none : it->second;
}

std::vector<std::string> Lexicon::near_matches(std::string_view token, std::size_t limit) const {
  const auto key = normalize(token);
  const auto threshold = std::max<std::size_t>(2, (key.size() + 1) / 2);
  std::vector<std::pair<std::size_t, std::string>> scored;
  for (const auto& [candidate, _] : entries_) {
    const auto d = edit_distance(key, candidate);
    if (d <= threshold) scored.emplace_back(d, candidate);
  }
  std::sort(scored.begin(), scored.end());
  std::vector<std::string> out;
  for (std::size_t i = 0; i < scored.size() && i < limit; ++i) out.push_back(scored[i].second);
  return out;
}

namespace {

std::string field(const json& object, const char* key, const std::string& where) {
  auto it = object.find(key);
  if (it == object.end() || !it->is_string()) {
    throw Error(ErrorCode::parse_error, where + ": missing string field '" + key + "'");
  }
  return it->get<std::string>();
}

std::vector<VocabularyDocument::Entry> parse_entries(const json& doc, const char* key) {
  std::vector<VocabularyDocument::Entry> out;
  auto it = doc.find(key);
  if (it == doc.end()) return out;
  if (!it->is_array()) throw Error(ErrorCode::parse_error, std::string("'") + key + "' must be a list");
  for (std::size_t i = 0; i < it->size(); ++i) {
    const auto& e = (*it)[i];
    const auto where = std::string(key) + "[" + std::to_string(i) + "]";
    if (!e.is_object()) throw Error(ErrorCode::parse_error, where + " must be an object");
    out.push_back({field(e, "token", where), TermValue{field(e, "facet", where), field(e, "value", where)}});
  }
  return out;
}

}  // namespace

VocabularyDocument parse_vocabulary(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::parse_error, "vocabulary document must be an object");
  if (auto it = doc.find("format"); it != doc.end() && *it != "extempore-vocab/1") {
    throw Error(ErrorCode::parse_error, "unsupported vocabulary format, expected extempore-vocab/1");
  }
  VocabularyDocument out;
  out.synonyms = parse_entries(doc, "synonyms");
  out.abbreviations = parse_entries(doc, "abbreviations");
  if (auto it = doc.find("fds"); it != doc.end()) {
    if (!it->is_array()) throw Error(ErrorCode::parse_error, "'fds' must be a list");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const auto& e = (*it)[i];
      const auto where = "fds[" + std::to_string(i) + "]";
      if (!e.is_object()) throw Error(ErrorCode::parse_error, where + " must be an object");
      FunctionalDependency fd{TermValue{field(e, "facet", where), field(e, "value", where)}, {}};
      auto implies = e.find("implies");
      if (implies == e.end() || !implies->is_array()) throw Error(ErrorCode::parse_error, where + ": 'implies' must be a list");
      for (const auto& t : *implies) {
        if (!t.is_object()) throw Error(ErrorCode::parse_error, where + ": implied terms must be objects");
        fd.implied.push_back(TermValue{field(t, "facet", where), field(t, "value", where)});
      }
      out.fds.push_back(std::move(fd));
    }
  }
  return out;
}

VocabularyDocument parse_vocabulary(std::string_view text) {
  try {
    return parse_vocabulary(json::parse(text));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse_error, std::string("malformed vocabulary document: ") + e.what());
  }
}

Lexicon build_lexicon(const SiteTree& tree, const VocabularyDocument& document) {
  Lexicon lexicon;
  for (const auto& term : tree.term_values()) lexicon.add(term.value, term, TokenSource::label);

  auto add_all = [&](const std::vector<VocabularyDocument::Entry>& entries, TokenSource source, const char* kind) {
    for (const auto& e : entries) {
      if (!tree.has_term(e.term)) {
        throw Error(ErrorCode::vocabulary_error,
                    std::string(kind) + " '" + e.token + "' refers to unknown term " + to_string(e.term),
                    {{"token", e.token}, {"facet", e.term.facet}, {"value", e.term.value}});
      }
      if (normalize(e.token).empty()) {
        throw Error(ErrorCode::vocabulary_error, std::string(kind) + " has an empty token", {{"token", e.token}});
      }
      lexicon.add(e.token, e.term, source);
    }
  };
  add_all(document.synonyms, TokenSource::synonym, "synonym");
  add_all(document.abbreviations, TokenSource::abbreviation, "abbreviation");
  return lexicon;
}

std::vector<FunctionalDependency> build_dependencies(const SiteTree& tree, const VocabularyDocument& document) {
  std::map<TermValue, std::vector<TermValue>> graph;
  for (const auto& fd : document.fds) {
    if (!tree.has_term(fd.antecedent)) {
      throw Error(ErrorCode::vocabulary_error, "dependency on unknown term " + to_string(fd.antecedent),
                  {{"facet", fd.antecedent.facet}, {"value", fd.antecedent.value}});
    }
    for (const auto& t : fd.implied) {
      if (!tree.has_term(t)) {
        throw Error(ErrorCode::vocabulary_error,
                    "dependency " + to_string(fd.antecedent) + " implies unknown term " + to_string(t),
                    {{"facet", t.facet}, {"value", t.value}});
      }
      if (t.facet == fd.antecedent.facet) {
        throw Error(ErrorCode::vocabulary_error,
                    "dependency " + to_string(fd.antecedent) + " implies a term on its own facet",
                    {{"facet", t.facet}});
      }
      graph[fd.antecedent].push_back(t);
    }
  }

  enum class Mark { unseen, active, done };
  std::map<TermValue, Mark> marks;
  std::function<void(const TermValue&)> visit = [&](const TermValue& term) {
    auto& mark = marks[term];
    if (mark == Mark::done) return;
    if (mark == Mark::active) {
      throw Error(ErrorCode::vocabulary_error, "functional dependencies form a cycle through " + to_string(term),
                  {{"facet", term.facet}, {"value", term.value}});
    }
    mark = Mark::active;
    if (auto it = graph.find(term); it != graph.end()) {
      for (const auto& next : it->second) visit(next);
    }
    marks[term] = Mark::done;
  };
  for (const auto& [term, _] : graph) visit(term);
  return document.fds;
}

Vocabulary make_vocabulary(const SiteTree& tree, const VocabularyDocument& document) {
  return Vocabulary{build_lexicon(tree, document), build_dependencies(tree, document)};
}

Vocabulary make_vocabulary(const SiteTree& tree) { return make_vocabulary(tree, VocabularyDocument{}); }

std::vector<AspectTerm> resolve(std::string_view utterance, const Lexicon& lexicon) {
  std::vector<AspectTerm> out;
  std::size_t start = 0;
  while (start <= utterance.size()) {
    auto end = utterance.find(',', start);
    if (end == std::string_view::npos) end = utterance.size();
    const auto segment = utterance.substr(start, end - start);
    start = end + 1;

    const auto words = words_of(normalize(segment));
    std::size_t i = 0;
    while (i < words.size()) {
      bool matched = false;
      for (auto len = std::min(lexicon.longest_token_words(), words.size() - i); len > 0; --len) {
        auto token = join(words, i, i + len);
        const auto& entries = lexicon.lookup(token);
        if (entries.empty()) continue;
        if (entries.size() > 1) {
          json candidates = json::array();
          for (const auto& e : entries) candidates.push_back({{"facet", e.term.facet}, {"value", e.term.value}});
          throw Error(ErrorCode::ambiguous_term, "'" + token + "' is ambiguous",
                      {{"token", token}, {"candidates", std::move(candidates)}});
        }
        out.push_back(AspectTerm{entries.front().term, AspectOrigin::literal, token});
        i += len;
        matched = true;
        break;
      }
      if (!matched) {
        const auto unmatched = join(words, i, words.size());
        throw Error(ErrorCode::unknown_term, "unknown term '" + words[i] + "'",
                    {{"segment", normalize(segment)},
                     {"token", words[i]},
                     {"near_matches", lexicon.near_matches(words[i])},
                     {"unmatched", unmatched}});
      }
    }
  }
  if (out.empty()) {
    throw Error(ErrorCode::unknown_term, "empty utterance",
                {{"segment", ""}, {"token", ""}, {"near_matches", json::array()}});
  }
  return out;
}

std::vector<AspectTerm> expand(const std::vector<AspectTerm>& terms, const std::vector<FunctionalDependency>& fds) {
  std::vector<AspectTerm> out;
  std::set<TermValue> seen;
  std::function<void(const TermValue&, AspectOrigin, const std::string&)> visit =
      [&](const TermValue& term, AspectOrigin origin, const std::string& raw) {
        if (!seen.insert(term).second) return;
        out.push_back(AspectTerm{term, origin, raw});
        for (const auto& fd : fds) {
          if (fd.antecedent != term) continue;
          for (const auto& implied : fd.implied) visit(implied, AspectOrigin::fd_implied, raw);
        }
      };
  for (const auto& t : terms) visit(t.term, t.origin, t.raw_token);

  std::map<std::string, std::string> by_facet;
  for (const auto& a : out) {
    auto [it, inserted] = by_facet.emplace(a.term.facet, a.term.value);
    if (!inserted && it->second != a.term.value) {
      throw Error(ErrorCode::conflict,
                  "conflicting values for facet '" + a.term.facet + "': " + it->second + " and " + a.term.value,
                  {{"facet", a.term.facet}, {"values", {it->second, a.term.value}}});
    }
  }
  return out;
}

Guidance what_may_i_say(const Session& session, const Lexicon& /*lexicon*/) {
  Guidance out;
  const auto& view = session.view();
  if (view.terminal()) return out;
  const auto& site = session.site();
  const auto& remaining = view.remaining();
  for (const auto& facet : site.facets()) {
    if (view.is_constrained(facet)) continue;
    std::vector<std::string> values;
    for (auto i = remaining.find_first(); i != LeafSet::npos; i = remaining.find_next(i)) {
      const auto& attrs = site.leaves()[i].attributes;
      auto it = attrs.find(facet);
      if (it == attrs.end()) continue;
      if (std::find(values.begin(), values.end(), it->second) == values.end()) values.push_back(it->second);
    }
    if (!values.empty()) out.emplace_back(facet, std::move(values));
  }
  return out;
}

json to_json(const Guidance& guidance) {
  json out = json::object();
  for (const auto& [facet, values] : guidance) out[facet] = values;
  return out;
}

}  // namespace extempore
