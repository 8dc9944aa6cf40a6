#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "extempore/site.hpp"

namespace extempore {

class Session;

enum class TokenSource { label, synonym, abbreviation };
enum class AspectOrigin { literal, fd_implied };

std::string_view to_string(TokenSource source);
std::string_view to_string(AspectOrigin origin);
AspectOrigin aspect_origin_from_string(std::string_view text);

/// Case-folds, trims, collapses whitespace and strips punctuation other than
/// hyphens, apostrophes, ampersands and slashes. Idempotent.
std::string normalize(std::string_view text);

struct LexiconEntry {
  TermValue term;
  TokenSource source;
};

/// Utterable tokens (normalized) mapped to the aspect terms they denote.
class Lexicon {
 public:
  void add(std::string_view token, TermValue term, TokenSource source);

  /// Entries for an already-normalized token; empty when unknown.
  const std::vector<LexiconEntry>& lookup(std::string_view normalized_token) const;
  bool contains(std::string_view normalized_token) const { return entries_.contains(normalized_token); }

  const std::map<std::string, std::vector<LexiconEntry>, std::less<>>& entries() const { return entries_; }
  std::size_t longest_token_words() const { return longest_words_; }

  /// Known tokens closest to `token` by edit distance, best first.
  std::vector<std::string> near_matches(std::string_view token, std::size_t limit = 5) const;

 private:
  std::map<std::string, std::vector<LexiconEntry>, std::less<>> entries_;
  std::size_t longest_words_ = 1;
};

struct FunctionalDependency {
  TermValue antecedent;
  std::vector<TermValue> implied;
};

struct AspectTerm {
  TermValue term;
  AspectOrigin origin = AspectOrigin::literal;
  std::string raw_token;

  bool operator==(const AspectTerm&) const = default;
};

/// Parsed extempore-vocab/1 document, before it is checked against a site.
struct VocabularyDocument {
  struct Entry {
    std::string token;
    TermValue term;
  };
  std::vector<Entry> synonyms;
  std::vector<Entry> abbreviations;
  std::vector<FunctionalDependency> fds;
};

VocabularyDocument parse_vocabulary(const nlohmann::json& document);
VocabularyDocument parse_vocabulary(std::string_view text);

/// Labels of `tree` plus the document's synonyms and abbreviations.
/// Throws Error(vocabulary_error) naming an entry that references an unknown term.
Lexicon build_lexicon(const SiteTree& tree, const VocabularyDocument& document);

/// Validates the document's dependencies against `tree` and checks the graph is acyclic.
std::vector<FunctionalDependency> build_dependencies(const SiteTree& tree, const VocabularyDocument& document);

/// Lexicon and dependencies of one site.
struct Vocabulary {
  Lexicon lexicon;
  std::vector<FunctionalDependency> fds;
};

Vocabulary make_vocabulary(const SiteTree& tree, const VocabularyDocument& document);
Vocabulary make_vocabulary(const SiteTree& tree);  // labels only, no dependencies

/// Segments on commas, then greedy longest match within each segment.
/// Throws Error(unknown_term) or Error(ambiguous_term); never returns a partial result.
std::vector<AspectTerm> resolve(std::string_view utterance, const Lexicon& lexicon);

/// Closure of `terms` under `fds`: implied terms follow their antecedent, first occurrence wins.
/// Throws Error(conflict) when two values end up on one facet.
std::vector<AspectTerm> expand(const std::vector<AspectTerm>& terms, const std::vector<FunctionalDependency>& fds);

/// Facet -> values still utterable with a non-empty result, in document order.
using Guidance = std::vector<std::pair<std::string, std::vector<std::string>>>;

Guidance what_may_i_say(const Session& session, const Lexicon& lexicon);

nlohmann::json to_json(const Guidance& guidance);

}  // namespace extempore
