#pragma once

#include <map>
#include <memory>
#include <random>
#include <string>

#include <json.hpp>

#include "extempore/error.hpp"
#include "extempore/fixtures.hpp"
#include "extempore/session.hpp"
#include "extempore/site.hpp"
#include "extempore/vocabulary.hpp"

#include "oracle.hpp"

namespace testing_support {

struct Fixture {
  nlohmann::json document;
  std::shared_ptr<const extempore::SiteTree> site;
  extempore::Vocabulary vocabulary;
  oracle::Site model;
};

inline Fixture make_fixture(nlohmann::json document, const nlohmann::json* vocabulary = nullptr) {
  Fixture f;
  f.document = std::move(document);
  f.site = std::make_shared<const extempore::SiteTree>(extempore::site_from_json(f.document));
  f.vocabulary = vocabulary ? extempore::make_vocabulary(*f.site, extempore::parse_vocabulary(*vocabulary))
                            : extempore::make_vocabulary(*f.site);
  f.model = oracle::parse(f.document);
  return f;
}

inline const Fixture& mini() {
  static const Fixture f = [] {
    auto vocab = nlohmann::json::parse(extempore::fixtures::mini_congress_vocabulary_document());
    return make_fixture(nlohmann::json::parse(extempore::fixtures::mini_congress_document()), &vocab);
  }();
  return f;
}

inline const Fixture& full() {
  static const Fixture f = [] {
    auto vocab = extempore::fixtures::full_congress_vocabulary_document();
    return make_fixture(extempore::fixtures::full_congress_document(), &vocab);
  }();
  return f;
}

inline oracle::Constraints constraints_of(const extempore::View& view) {
  oracle::Constraints out;
  for (const auto& c : view.constraints()) out[c.term.facet] = c.term.value;
  return out;
}

inline extempore::Session fixed_clock_session(std::shared_ptr<const extempore::SiteTree> site) {
  return extempore::Session(std::move(site), [] { return std::int64_t{0}; });
}

enum class Action { click, aspect, utterance, back };

/// Drives one random event. Invalid choices are allowed and surface as Error;
/// the caller decides what to check. Returns the action attempted.
inline Action random_event(std::mt19937& rng, extempore::Session& session, const extempore::Vocabulary& vocabulary) {
  using namespace extempore;
  std::uniform_int_distribution<int> pick(0, 9);
  const int roll = pick(rng);
  const auto& terms = session.site().term_values();
  if (roll < 1) {
    session.back();
    return Action::back;
  }
  if (roll < 5 && !session.terminal()) {
    auto labels = session.view().available_labels();
    std::uniform_int_distribution<std::size_t> at(0, labels.size() - 1);
    session.click(labels[at(rng)]);
    return Action::click;
  }
  std::uniform_int_distribution<std::size_t> at(0, terms.size() - 1);
  const auto& term = terms[at(rng)];
  if (roll < 8) {
    session.apply_aspect(term);
    return Action::aspect;
  }
  session.utter(term.value, vocabulary);
  return Action::utterance;
}

}  // namespace testing_support
