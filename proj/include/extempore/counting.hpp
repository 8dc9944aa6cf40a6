#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "extempore/view.hpp"
#include "extempore/vocabulary.hpp"

namespace extempore {

enum class Token : char { I = 'I', O = 'O' };

using TokenSequence = std::vector<Token>;

std::string to_string(const TokenSequence& tokens);

/// Accepts "OOI", "O,O,I" or "O O I".
TokenSequence parse_tokens(std::string_view text);

/// Counts an utterance's aspects as in-turn or out-of-turn inputs.
///
/// Every ordering of the aspects is simulated from `before`; an aspect counts as
/// in-turn when, at that point of the ordering, the frontier solicits its facet and
/// links its value. The ordering with the most in-turn inputs wins, which never
/// credits an out-of-turn input that some reordering would have made in-turn.
/// Ties go to the ordering whose tokens put I first, then to the earliest ordering
/// by original position. Aspects already in force in `before` produce no token.
TokenSequence tokenize_event(const std::vector<AspectTerm>& aspects, const View& before);

enum class SequenceClassKind { I, O, IO, OI, M };

std::string_view to_string(SequenceClassKind kind);

struct SequenceClass {
  SequenceClassKind kind;
  /// Run-collapsed token string, e.g. "OIO".
  std::string pattern;

  bool operator==(const SequenceClass&) const = default;
};

/// Collapses runs: IIOOI -> IOI.
std::string run_collapse(const TokenSequence& tokens);

/// Throws Error(empty_sequence) on an empty input.
SequenceClass classify_sequence(const TokenSequence& tokens);

}  // namespace extempore
