#include "extempore/counting.hpp"

#include <algorithm>
#include <numeric>

#include "extempore/error.hpp"

namespace extempore {

std::string to_string(const TokenSequence& tokens) {
  std::string out;
  for (auto t : tokens) out += static_cast<char>(t);
  return out;
}

TokenSequence parse_tokens(std::string_view text) {
  TokenSequence out;
  for (char c : text) {
    if (c == 'I' || c == 'i') {
      out.push_back(Token::I);
    } else if (c == 'O' || c == 'o') {
      out.push_back(Token::O);
    } else if (c != ',' && c != ' ' && c != '\t' && c != '[' && c != ']' && c != '"') {
      throw Error(ErrorCode::parse_error, std::string("invalid token character '") + c + "'");
    }
  }
  return out;
}

TokenSequence tokenize_event(const std::vector<AspectTerm>& aspects, const View& before) {
  std::vector<TermValue> terms;
  for (const auto& a : aspects) {
    if (before.redundant(a.term)) continue;
    if (std::find(terms.begin(), terms.end(), a.term) != terms.end()) continue;
    terms.push_back(a.term);
  }

  std::vector<std::size_t> order(terms.size());
  std::iota(order.begin(), order.end(), 0);

  TokenSequence best;
  std::ptrdiff_t best_in_turn = -1;
  do {
    TokenSequence labels;
    View view = before;
    for (auto i : order) {
      labels.push_back(view.mode_for(terms[i]) == Mode::in_turn ? Token::I : Token::O);
      view = view.with(terms[i], 0);
    }
    const auto in_turn = std::count(labels.begin(), labels.end(), Token::I);
    // 'I' < 'O', so the lexicographically smaller label string front-loads in-turn inputs.
    if (in_turn > best_in_turn || (in_turn == best_in_turn && labels < best)) {
      best_in_turn = in_turn;
      best = std::move(labels);
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

std::string_view to_string(SequenceClassKind kind) {
  switch (kind) {
    case SequenceClassKind::I: return "I";
    case SequenceClassKind::O: return "O";
    case SequenceClassKind::IO: return "IO";
    case SequenceClassKind::OI: return "OI";
    case SequenceClassKind::M: return "M";
  }
  return "?";
}

std::string run_collapse(const TokenSequence& tokens) {
  std::string out;
  for (auto t : tokens) {
    const char c = static_cast<char>(t);
    if (out.empty() || out.back() != c) out += c;
  }
  return out;
}

SequenceClass classify_sequence(const TokenSequence& tokens) {
  if (tokens.empty()) throw Error(ErrorCode::empty_sequence, "cannot classify an empty interaction sequence");
  auto pattern = run_collapse(tokens);
  SequenceClassKind kind = SequenceClassKind::M;
  if (pattern == "I") kind = SequenceClassKind::I;
  else if (pattern == "O") kind = SequenceClassKind::O;
  else if (pattern == "IO") kind = SequenceClassKind::IO;
  else if (pattern == "OI") kind = SequenceClassKind::OI;
  return SequenceClass{kind, std::move(pattern)};
}

}  // namespace extempore
