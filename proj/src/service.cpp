#include "extempore/service.hpp"

#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>

#include <httplib.h>

#include "extempore/error.hpp"
#include "extempore/interaction_log.hpp"

namespace extempore {

using nlohmann::json;

SessionStore::SessionStore(std::chrono::milliseconds idle_expiry, Clock clock)
    : idle_expiry_(idle_expiry),
      clock_(clock ? std::move(clock) : Clock([] { return std::chrono::steady_clock::now(); })),
      salt_(std::random_device{}()) {}

std::string SessionStore::next_id() {
  ++counter_;
  std::mt19937_64 mix(salt_ ^ (counter_ * 0x9E3779B97F4A7C15ull));
  std::ostringstream out;
  out << 's' << std::hex << counter_ << '-' << std::setw(16) << std::setfill('0') << mix();
  return out.str();
}

SessionHandle SessionStore::create(const std::string& site_id, std::shared_ptr<const SiteTree> site) {
  std::lock_guard lock(mutex_);
  sweep_locked();
  SessionHandle handle{next_id(), std::chrono::system_clock::now(), site_id};
  auto entry = std::make_shared<Entry>(handle, std::move(site));
  entry->last_used = clock_();
  sessions_.emplace(handle.id, std::move(entry));
  return handle;
}

std::shared_ptr<SessionStore::Entry> SessionStore::find(const std::string& id) {
  std::lock_guard lock(mutex_);
  sweep_locked();
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw std::out_of_range("unknown session " + id);
  it->second->last_used = clock_();
  return it->second;
}

std::size_t SessionStore::size() const {
  std::lock_guard lock(mutex_);
  return sessions_.size();
}

std::size_t SessionStore::sweep() {
  std::lock_guard lock(mutex_);
  return sweep_locked();
}

std::size_t SessionStore::sweep_locked() {
  const auto now = clock_();
  std::size_t dropped = 0;
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    if (now - it->second->last_used > idle_expiry_) {
      it = sessions_.erase(it);
      ++dropped;
    } else {
      ++it;
    }
  }
  return dropped;
}

namespace {

Service::Response error_response(int status, std::string_view code, const std::string& message,
                                 json details = json::object()) {
  return {status, json{{"error", {{"code", code}, {"message", message}, {"details", std::move(details)}}}}};
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::unknown_term:
    case ErrorCode::ambiguous_term:
    case ErrorCode::conflict:
    case ErrorCode::no_results:
    case ErrorCode::unknown_label:
    case ErrorCode::terminal:
    case ErrorCode::at_start: return 422;
    case ErrorCode::parse_error: return 400;
    default: return 500;
  }
}

std::string required_string(const json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end() || !it->is_string()) {
    throw Error(ErrorCode::parse_error, std::string("request body needs a string '") + key + "'");
  }
  return it->get<std::string>();
}

}  // namespace

Service::Service(std::map<std::string, SiteEntry> sites, ServiceConfig config)
    : sites_(std::move(sites)), store_(config.idle_expiry), server_(std::make_unique<httplib::Server>()) {
  auto route = [this](const httplib::Request& req, httplib::Response& res) {
    auto out = handle(req.method, req.path, req.body);
    res.status = out.status;
    res.set_content(out.body.dump(), "application/json");
  };
  server_->Get(R"(/sites)", route);
  server_->Post(R"(/sessions)", route);
  server_->Get(R"(/sessions/[^/]+)", route);
  server_->Get(R"(/sessions/[^/]+/[a-z-]+)", route);
  server_->Post(R"(/sessions/[^/]+/[a-z-]+)", route);
}

Service::~Service() { stop(); }

Service::Response Service::handle(std::string_view method, std::string_view path, std::string_view body_text) {
  json body = json::object();
  if (!body_text.empty()) {
    try {
      body = json::parse(body_text);
    } catch (const json::parse_error&) {
      return error_response(400, "bad-request", "request body is not valid JSON");
    }
    if (!body.is_object()) return error_response(400, "bad-request", "request body must be an object");
  }

  try {
    if (path == "/sites" && method == "GET") return list_sites();
    if (path == "/sessions" && method == "POST") return create_session(body);

    constexpr std::string_view prefix = "/sessions/";
    if (path.starts_with(prefix)) {
      auto rest = path.substr(prefix.size());
      const auto slash = rest.find('/');
      const std::string id(rest.substr(0, slash));
      const auto action = slash == std::string_view::npos ? std::string_view() : rest.substr(slash + 1);
      if (!id.empty()) return session_call(id, action, method, body);
    }
    return error_response(404, "not-found", "no route for " + std::string(method) + " " + std::string(path));
  } catch (const Error& e) {
    const auto status = status_for(e.code());
    if (status == 400) return error_response(400, "bad-request", e.what());
    return {status, json{{"error", e.to_json()}}};
  }
}

Service::Response Service::list_sites() const {
  json out = json::array();
  for (const auto& [id, entry] : sites_) {
    out.push_back(json{{"id", id},
                       {"title", entry.site->title()},
                       {"facets", entry.site->facets()},
                       {"leafCount", entry.site->leaf_count()}});
  }
  return {200, out};
}

Service::Response Service::create_session(const json& body) {
  const auto site_id = required_string(body, "siteId");
  auto it = sites_.find(site_id);
  if (it == sites_.end()) return error_response(404, "unknown-site", "no site '" + site_id + "'", {{"siteId", site_id}});
  const auto handle = store_.create(site_id, it->second.site);
  auto summary = store_.with_session(handle.id, [](Session& s) { return s.summary(); });
  return {201, json{{"sessionId", handle.id}, {"siteId", site_id}, {"summary", to_json(summary)}}};
}

Service::Response Service::session_call(const std::string& id, std::string_view action, std::string_view method,
                                        const json& body) {
  try {
    return store_.with_session(id, [&](Session& session) -> Response {
      const auto& vocabulary = *sites_.at(session.site().id()).vocabulary;
      if (method == "GET") {
        if (action.empty()) return {200, to_json(session.summary())};
        if (action == "what-may-i-say") return {200, to_json(what_may_i_say(session, vocabulary.lexicon))};
        if (action == "log") return {200, to_json(log_of(session))};
      } else if (method == "POST") {
        if (action == "click") {
          session.click(required_string(body, "label"));
          return {200, to_json(session.summary())};
        }
        if (action == "utterance") {
          const auto& event = session.utter(required_string(body, "text"), vocabulary);
          auto out = to_json(session.summary());
          json tokens = json::array();
          for (auto t : event.tokens) tokens.push_back(std::string(1, static_cast<char>(t)));
          out["tokens"] = std::move(tokens);
          return {200, out};
        }
        if (action == "back") {
          session.back();
          return {200, to_json(session.summary())};
        }
      }
      return error_response(404, "not-found", "no route for " + std::string(method) + " session " + std::string(action));
    });
  } catch (const std::out_of_range&) {
    return error_response(404, "unknown-session", "no session '" + id + "'", {{"sessionId", id}});
  }
}

int Service::bind_to_any_port(const std::string& host) { return server_->bind_to_any_port(host); }

bool Service::listen_after_bind() { return server_->listen_after_bind(); }

bool Service::listen(const std::string& host, int port) { return server_->listen(host, port); }

void Service::stop() {
  if (server_ && server_->is_running()) server_->stop();
}

void Service::wait_until_ready() const { server_->wait_until_ready(); }

}  // namespace extempore
