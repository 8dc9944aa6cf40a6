#include <doctest.h>

#include <algorithm>
#include <set>

#include "extempore/error.hpp"
#include "extempore/fixtures.hpp"
#include "extempore/site.hpp"

#include "../support/common.hpp"
#include "../support/random_site.hpp"

using namespace extempore;
using nlohmann::json;

namespace {

std::vector<std::string> ids(const std::vector<const LeafPage*>& pages) {
  std::vector<std::string> out;
  for (const auto* p : pages) out.push_back(p->id);
  return out;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::parse_error;
}

json two_level(json edges) {
  return {{"facets", {"state", "branch"}}, {"root", {{"solicits", "state"}, {"edges", std::move(edges)}}}};
}

json leaf(const std::string& id) { return {{"leaf", {{"id", id}, {"title", id}, {"url", "https://example.org/" + id}}}}; }

}  // namespace

TEST_SUITE("site") {
  TEST_CASE("mini-congress shape") {
    const auto site = fixtures::mini_congress();
    CHECK(site.id() == "mini-congress");
    CHECK(site.node(site.root()).edges.size() == 3);
    CHECK(site.leaf_count() == 8);
    CHECK(site.max_depth() == 4);
    CHECK(max_depth(site) == 4);
    CHECK(site.facets() == std::vector<std::string>{"state", "branch", "party", "seat"});
  }

  TEST_CASE("leaf sets") {
    const auto site = fixtures::mini_congress();
    CHECK(leaf_set(site, site.root()).size() == 8);
    const auto alaska = site.child(site.root(), "Alaska");
    CHECK(ids(leaf_set(site, alaska)) == std::vector<std::string>{"AK-SS", "AK-JS", "AK-H1"});
    const auto ga_dem = site.child(site.child(site.child(site.root(), "Georgia"), "Senate"), "Democrat");
    CHECK(ids(leaf_set(site, ga_dem)) == std::vector<std::string>{"GA-SS"});
  }

  TEST_CASE("leaf attributes follow the path") {
    const auto site = fixtures::mini_congress();
    const auto* ga = site.find_leaf("GA-H2");
    REQUIRE(ga);
    CHECK(ga->attributes.at("state") == "Georgia");
    CHECK(ga->attributes.at("branch") == "House");
    CHECK(ga->attributes.at("party") == "Democrat");
    CHECK(ga->attributes.at("seat") == "District 2");
    CHECK(site.path_of(site.leaf_node(*site.leaf_index_of("GA-H2"))) == "root/Georgia/House/Democrat/District 2");
  }

  TEST_CASE("duplicate sibling labels name the node") {
    const auto doc = two_level(json::array({{{"label", "Georgia"}, {"child", leaf("a")}},
                                            {{"label", "Georgia"}, {"child", leaf("b")}}}));
    try {
      site_from_json(doc);
      FAIL("accepted duplicate labels");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::validation_error);
      CHECK(e.details()["path"] == "root");
      CHECK(std::string(e.what()).find("Georgia") != std::string::npos);
    }
  }

  TEST_CASE("facet repeated on a path") {
    const auto doc = two_level(json::array(
        {{{"label", "Georgia"},
          {"child", {{"solicits", "state"}, {"edges", json::array({{{"label", "Alaska"}, {"child", leaf("x")}}})}}}}}));
    CHECK(code_of([&] { site_from_json(doc); }) == ErrorCode::validation_error);
  }

  TEST_CASE("leaf attribute mismatch") {
    auto bad = leaf("x");
    bad["leaf"]["attributes"] = {{"state", "Alaska"}};
    const auto doc = two_level(json::array({{{"label", "Georgia"}, {"child", bad}}}));
    CHECK(code_of([&] { site_from_json(doc); }) == ErrorCode::validation_error);
  }

  TEST_CASE("unknown facet, empty node, duplicate leaf id") {
    CHECK(code_of([&] {
            site_from_json(two_level(json::array(
                {{{"label", "G"}, {"child", {{"solicits", "colour"}, {"edges", json::array({{{"label", "x"}, {"child", leaf("x")}}})}}}}})));
          }) == ErrorCode::validation_error);
    CHECK(code_of([&] {
            site_from_json(two_level(json::array({{{"label", "G"}, {"child", {{"solicits", "branch"}, {"edges", json::array()}}}}})));
          }) == ErrorCode::validation_error);
    CHECK(code_of([&] {
            site_from_json(two_level(json::array({{{"label", "G"}, {"child", leaf("x")}}, {{"label", "H"}, {"child", leaf("x")}}})));
          }) == ErrorCode::validation_error);
  }

  TEST_CASE("malformed documents") {
    CHECK(code_of([] { load_site("{not json"); }) == ErrorCode::parse_error);
    CHECK(code_of([] { load_site(R"({"facets": ["a"]})"); }) == ErrorCode::parse_error);
    CHECK(code_of([] { load_site(R"({"format": "other/2", "facets": ["a"], "root": {}})"); }) == ErrorCode::parse_error);
  }

  TEST_CASE("single leaf under root") {
    const auto site = site_from_json(two_level(json::array({{{"label", "Georgia"}, {"child", leaf("only")}}})));
    CHECK(site.max_depth() == 1);
    CHECK(site.leaf_count() == 1);
  }

  TEST_CASE("full-congress fixture") {
    const auto& f = testing_support::full();
    const auto& site = *f.site;
    CHECK(site.leaf_count() == 540);
    CHECK(site.max_depth() == 4);
    CHECK(site.node(site.root()).edges.size() == 55);

    // Counts straight from the leaf attributes.
    std::size_t senators = 0, representatives = 0, delegates = 0;
    std::set<std::string> dem_senate_states, district_20_states;
    for (const auto& leaf : site.leaves()) {
      const auto& a = leaf.attributes;
      if (a.at("branch") == "Senate") {
        ++senators;
        if (a.at("party") == "Democrat") dem_senate_states.insert(a.at("state"));
      } else if (a.at("seat") == "Delegate") {
        ++delegates;
      } else {
        ++representatives;
      }
      if (a.at("seat") == "District 20") district_20_states.insert(a.at("state"));
    }
    CHECK(senators == 100);
    CHECK(representatives == 435);
    CHECK(delegates == 5);
    CHECK(dem_senate_states.size() == 31);
    CHECK(district_20_states == std::set<std::string>{"California", "Florida", "New York", "Texas"});
    CHECK(site.find_leaf("FL-H17")->attributes.at("party") == "Democrat");
  }

  TEST_CASE("serialization round trip") {
    for (unsigned seed : {1u, 2u, 3u, 4u, 5u}) {
      const auto doc = testing_support::random_site(seed);
      const auto site = site_from_json(doc);
      const auto again = site_from_json(to_json(site));
      CHECK(to_json(again) == to_json(site));
      CHECK(again.leaf_count() == site.leaf_count());
      const auto model = oracle::parse(doc);
      CHECK(leaf_ids(site, site.all_leaves()) == oracle::filter(model, {}));
      CHECK(static_cast<int>(site.max_depth()) == model.max_depth());
    }
    const auto mini = fixtures::mini_congress();
    CHECK(to_json(site_from_json(to_json(mini))) == to_json(mini));
  }

  TEST_CASE("leaves_with partitions by value") {
    const auto& f = testing_support::full();
    for (const auto& facet : f.site->facets()) {
      auto seen = f.site->no_leaves();
      for (const auto& term : f.site->term_values()) {
        if (term.facet != facet) continue;
        const auto set = f.site->leaves_with(term);
        CHECK_FALSE(set.intersects(seen));
        seen |= set;
      }
      CHECK(seen == f.site->all_leaves());
    }
  }
}
