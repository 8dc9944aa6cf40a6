#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include <json.hpp>

#include "extempore/session.hpp"
#include "extempore/site.hpp"
#include "extempore/vocabulary.hpp"

namespace httplib {
class Server;
}

namespace extempore {

struct SiteEntry {
  std::shared_ptr<const SiteTree> site;
  std::shared_ptr<const Vocabulary> vocabulary;
};

struct SessionHandle {
  std::string id;
  std::chrono::system_clock::time_point created;
  std::string site_id;
};

/// In-memory sessions with idle expiry. Creation and expiry are atomic under the
/// store lock; calls on one session are serialized by that session's own lock.
class SessionStore {
 public:
  using Clock = std::function<std::chrono::steady_clock::time_point()>;

  explicit SessionStore(std::chrono::milliseconds idle_expiry = std::chrono::minutes(30), Clock clock = {});

  SessionHandle create(const std::string& site_id, std::shared_ptr<const SiteTree> site);

  /// Runs `fn(Session&)` under the session's lock. Throws std::out_of_range for unknown ids.
  template <typename Fn>
  auto with_session(const std::string& id, Fn&& fn) {
    auto entry = find(id);
    std::lock_guard lock(entry->mutex);
    return fn(entry->session);
  }

  std::size_t size() const;
  /// Drops sessions idle for longer than the expiry; returns how many went.
  std::size_t sweep();

 private:
  struct Entry {
    Entry(SessionHandle h, std::shared_ptr<const SiteTree> site) : handle(std::move(h)), session(std::move(site)) {}
    SessionHandle handle;
    std::mutex mutex;
    Session session;
    std::chrono::steady_clock::time_point last_used;
  };

  std::shared_ptr<Entry> find(const std::string& id);
  std::size_t sweep_locked();
  std::string next_id();

  std::chrono::milliseconds idle_expiry_;
  Clock clock_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::uint64_t counter_ = 0;
  std::uint64_t salt_;
};

struct ServiceConfig {
  std::chrono::milliseconds idle_expiry = std::chrono::minutes(30);
};

/// HTTP front end over the dialog engine.
///
///   GET  /sites
///   POST /sessions                       {"siteId": ...}
///   GET  /sessions/{id}
///   POST /sessions/{id}/click            {"label": ...}
///   POST /sessions/{id}/utterance        {"text": ...}
///   POST /sessions/{id}/back
///   GET  /sessions/{id}/what-may-i-say
///   GET  /sessions/{id}/log
///
/// Domain errors answer 422 with {"error": {"code", "message", "details"}}.
class Service {
 public:
  struct Response {
    int status = 200;
    nlohmann::json body;
  };

  explicit Service(std::map<std::string, SiteEntry> sites, ServiceConfig config = {});
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Transport-independent dispatch; the HTTP routes call this.
  Response handle(std::string_view method, std::string_view path, std::string_view body);

  /// Binds to an ephemeral port on `host` and returns it; follow with listen_after_bind().
  int bind_to_any_port(const std::string& host = "127.0.0.1");
  bool listen_after_bind();
  bool listen(const std::string& host, int port);
  void stop();
  void wait_until_ready() const;

  SessionStore& store() { return store_; }

 private:
  Response list_sites() const;
  Response create_session(const nlohmann::json& body);
  Response session_call(const std::string& id, std::string_view action, std::string_view method,
                        const nlohmann::json& body);

  std::map<std::string, SiteEntry> sites_;
  SessionStore store_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace extempore
