#pragma once

#include <string_view>

#include <json.hpp>

#include "extempore/site.hpp"

namespace extempore::fixtures {

/// Eight-leaf congressional site: Alaska, American Samoa and Georgia.
std::string_view mini_congress_document();
std::string_view mini_congress_vocabulary_document();
SiteTree mini_congress();

/// 540 members: 100 senators, 435 representatives and 5 territorial delegates, depth 4.
nlohmann::json full_congress_document();
nlohmann::json full_congress_vocabulary_document();
SiteTree full_congress();

/// Resolves "builtin:<name>" site references; returns false when `name` is not builtin.
bool is_builtin(std::string_view reference);
SiteTree builtin_site(std::string_view reference);
nlohmann::json builtin_vocabulary(std::string_view reference);

}  // namespace extempore::fixtures
