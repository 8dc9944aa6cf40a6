#include "extempore/fixtures.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>

#include "extempore/error.hpp"

namespace extempore::fixtures {

namespace data {
extern const std::string_view kMiniCongressSite;
extern const std::string_view kMiniCongressVocab;
}  // namespace data

using nlohmann::json;

std::string_view mini_congress_document() { return data::kMiniCongressSite; }
std::string_view mini_congress_vocabulary_document() { return data::kMiniCongressVocab; }

SiteTree mini_congress() { return load_site(mini_congress_document(), "mini-congress"); }

namespace {

enum class Party { D, R, I };

struct State {
  const char* name;
  const char* code;
  int districts;  // 0 for territories (one non-voting delegate)
  Party senior;
  Party junior;
};

constexpr Party D = Party::D;
constexpr Party R = Party::R;
constexpr Party I = Party::I;

// House apportionment after the 2000 census; Senate party split of the 108th Congress.
constexpr std::array kStates{
    State{"Alabama", "AL", 7, R, R},         State{"Alaska", "AK", 1, R, R},
    State{"American Samoa", "AS", 0, D, D},  State{"Arizona", "AZ", 8, R, R},
    State{"Arkansas", "AR", 4, D, D},        State{"California", "CA", 53, D, D},
    State{"Colorado", "CO", 7, R, R},        State{"Connecticut", "CT", 5, D, D},
    State{"Delaware", "DE", 1, D, D},        State{"District of Columbia", "DC", 0, D, D},
    State{"Florida", "FL", 25, D, D},        State{"Georgia", "GA", 13, D, R},
    State{"Guam", "GU", 0, D, D},            State{"Hawaii", "HI", 2, D, D},
    State{"Idaho", "ID", 2, R, R},           State{"Illinois", "IL", 19, D, R},
    State{"Indiana", "IN", 9, R, D},         State{"Iowa", "IA", 5, R, D},
    State{"Kansas", "KS", 4, R, R},          State{"Kentucky", "KY", 6, R, R},
    State{"Louisiana", "LA", 7, D, D},       State{"Maine", "ME", 2, R, R},
    State{"Maryland", "MD", 8, D, D},        State{"Massachusetts", "MA", 10, D, D},
    State{"Michigan", "MI", 15, D, D},       State{"Minnesota", "MN", 8, D, R},
    State{"Mississippi", "MS", 4, R, R},     State{"Missouri", "MO", 9, R, R},
    State{"Montana", "MT", 1, D, R},         State{"Nebraska", "NE", 3, R, D},
    State{"Nevada", "NV", 3, D, R},          State{"New Hampshire", "NH", 2, R, R},
    State{"New Jersey", "NJ", 13, D, D},     State{"New Mexico", "NM", 3, R, D},
    State{"New York", "NY", 29, D, D},       State{"North Carolina", "NC", 13, D, R},
    State{"North Dakota", "ND", 1, D, D},    State{"Ohio", "OH", 18, R, R},
    State{"Oklahoma", "OK", 5, R, R},        State{"Oregon", "OR", 5, D, R},
    State{"Pennsylvania", "PA", 19, R, R},   State{"Puerto Rico", "PR", 0, D, D},
    State{"Rhode Island", "RI", 2, D, R},    State{"South Carolina", "SC", 6, D, R},
    State{"South Dakota", "SD", 1, D, D},    State{"Tennessee", "TN", 9, R, R},
    State{"Texas", "TX", 32, R, R},          State{"Utah", "UT", 3, R, R},
    State{"Vermont", "VT", 1, D, I},         State{"Virgin Islands", "VI", 0, D, D},
    State{"Virginia", "VA", 11, R, R},       State{"Washington", "WA", 9, D, D},
    State{"West Virginia", "WV", 3, D, D},   State{"Wisconsin", "WI", 8, D, D},
    State{"Wyoming", "WY", 1, R, R},
};

const char* party_label(Party p) {
  switch (p) {
    case Party::D: return "Democrat";
    case Party::R: return "Republican";
    case Party::I: return "Independent";
  }
  return "";
}

std::uint32_t fnv1a(std::string_view text) {
  std::uint32_t h = 2166136261u;
  for (unsigned char c : text) {
    h ^= c;
    h *= 16777619u;
  }
  return h;
}

// Synthetic but deterministic House delegation; a few seats pinned to the real members.
Party house_party(const State& state, int district) {
  const std::string code = state.code;
  if (code == "VT") return Party::I;
  if (code == "FL" && district == 17) return Party::D;
  if (code == "RI" && district == 2) return Party::D;
  return fnv1a(code + "-" + std::to_string(district)) % 100 < 47 ? Party::D : Party::R;
}

json leaf(const std::string& id, const std::string& title) {
  return json{{"leaf", {{"id", id}, {"title", title}, {"url", "https://congress.example.org/members/" + id}}}};
}

struct Seat {
  std::string label;
  json page;
};

json party_level(const std::vector<std::pair<Party, Seat>>& seats) {
  json edges = json::array();
  for (Party p : {Party::D, Party::R, Party::I}) {
    json seat_edges = json::array();
    for (const auto& [party, seat] : seats) {
      if (party == p) seat_edges.push_back(json{{"label", seat.label}, {"child", seat.page}});
    }
    if (!seat_edges.empty()) {
      edges.push_back(json{{"label", party_label(p)}, {"child", {{"solicits", "seat"}, {"edges", seat_edges}}}});
    }
  }
  return json{{"solicits", "party"}, {"edges", edges}};
}

json state_node(const State& s) {
  const std::string code = s.code;
  const std::string name = s.name;
  json branches = json::array();
  if (s.districts == 0) {
    std::vector<std::pair<Party, Seat>> seats{
        {Party::D, Seat{"Delegate", leaf(code + "-H1", "Delegate from " + name)}}};
    branches.push_back(json{{"label", "House"}, {"child", party_level(seats)}});
    return json{{"solicits", "branch"}, {"edges", branches}};
  }

  std::vector<std::pair<Party, Seat>> senate{
      {s.senior, Seat{"Senior", leaf(code + "-SS", "Senior Senator from " + name)}},
      {s.junior, Seat{"Junior", leaf(code + "-JS", "Junior Senator from " + name)}}};
  branches.push_back(json{{"label", "Senate"}, {"child", party_level(senate)}});

  std::vector<std::pair<Party, Seat>> house;
  if (s.districts == 1) {
    house.push_back({house_party(s, 1), Seat{"At-large", leaf(code + "-H1", "Representative, " + name + " At-large")}});
  } else {
    for (int d = 1; d <= s.districts; ++d) {
      const auto label = "District " + std::to_string(d);
      house.push_back({house_party(s, d), Seat{label, leaf(code + "-H" + std::to_string(d),
                                                           "Representative, " + name + " " + label)}});
    }
  }
  branches.push_back(json{{"label", "House"}, {"child", party_level(house)}});
  return json{{"solicits", "branch"}, {"edges", branches}};
}

}  // namespace

json full_congress_document() {
  json edges = json::array();
  for (const auto& s : kStates) edges.push_back(json{{"label", s.name}, {"child", state_node(s)}});
  return json{{"format", SiteTree::kFormat},
              {"id", "full-congress"},
              {"title", "US Congress (108th)"},
              {"facets", {"state", "branch", "party", "seat"}},
              {"root", {{"solicits", "state"}, {"edges", edges}}}};
}

SiteTree full_congress() { return site_from_json(full_congress_document(), "full-congress"); }

json full_congress_vocabulary_document() {
  auto vocab = json::parse(mini_congress_vocabulary_document());
  json abbreviations = json::array();
  for (const auto& s : kStates) {
    abbreviations.push_back(json{{"token", s.code}, {"facet", "state"}, {"value", s.name}});
  }
  vocab["abbreviations"] = abbreviations;
  vocab["synonyms"].push_back(json{{"token", "Independents"}, {"facet", "party"}, {"value", "Independent"}});

  json fds = json::array();
  for (const char* seat : {"Senior", "Junior"}) {
    fds.push_back(json{{"facet", "seat"}, {"value", seat}, {"implies", {{{"facet", "branch"}, {"value", "Senate"}}}}});
  }
  int max_districts = 0;
  for (const auto& s : kStates) max_districts = std::max(max_districts, s.districts);
  std::vector<std::string> house_seats{"At-large", "Delegate"};
  for (int d = 1; d <= max_districts; ++d) house_seats.push_back("District " + std::to_string(d));
  for (const auto& seat : house_seats) {
    fds.push_back(json{{"facet", "seat"}, {"value", seat}, {"implies", {{{"facet", "branch"}, {"value", "House"}}}}});
  }
  vocab["fds"] = fds;
  return vocab;
}

bool is_builtin(std::string_view reference) { return reference.starts_with("builtin:"); }

SiteTree builtin_site(std::string_view reference) {
  if (reference == "builtin:mini-congress") return mini_congress();
  if (reference == "builtin:full-congress") return full_congress();
  throw Error(ErrorCode::parse_error, "unknown builtin site '" + std::string(reference) + "'");
}

json builtin_vocabulary(std::string_view reference) {
  if (reference == "builtin:mini-congress") return json::parse(mini_congress_vocabulary_document());
  if (reference == "builtin:full-congress") return full_congress_vocabulary_document();
  throw Error(ErrorCode::parse_error, "unknown builtin vocabulary '" + std::string(reference) + "'");
}

}  // namespace extempore::fixtures
