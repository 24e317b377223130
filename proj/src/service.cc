// Copyright 2026 The IHVC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ihvc/service.h"

#include <atomic>
#include <random>

#include "httplib.h"
#include "ihvc/error.h"
#include "ihvc/image.h"

namespace ihvc {

struct SessionStore::Session {
  std::string id;
  SequenceHeader header;
  std::vector<SemanticVector> base;
  std::unique_ptr<const FrameSynthesizer> synth;

  mutable std::shared_mutex mu;
  std::map<std::uint32_t, std::vector<EditCommand>> overlay;  // guarded by mu
  std::uint64_t revision = 0;                                 // guarded by mu
  std::atomic<Clock::rep> last_access{0};

  void Touch() { last_access = Clock::now().time_since_epoch().count(); }

  void CheckFrame(std::uint32_t frame) const {
    if (frame >= base.size()) {
      throw Error(ErrorCode::kValidation,
                  "frame " + std::to_string(frame) + " out of range [0, " +
                      std::to_string(base.size()) + ")");
    }
  }

  // Caller holds mu.
  SemanticVector Effective(std::uint32_t frame) const {
    SemanticVector sem = base[frame];
    auto it = overlay.find(frame);
    if (it != overlay.end()) {
      for (const EditCommand& cmd : it->second) sem = ApplyEdit(sem, cmd);
    }
    return sem;
  }
};

Json SessionMetadata::ToJson() const {
  return Json{{"id", id},
              {"width", header.width},
              {"height", header.height},
              {"fps", header.fps()},
              {"fps_num", header.fps_num},
              {"fps_den", header.fps_den},
              {"frame_count", header.frame_count},
              {"steps", ihvc::ToJson(header.steps)}};
}

SessionStore::SessionStore(std::size_t cache_capacity,
                           Clock::duration idle_timeout)
    : cache_capacity_(cache_capacity), idle_timeout_(idle_timeout) {}

std::string SessionStore::NewId() {
  static thread_local std::mt19937_64 rng(std::random_device{}());
  static constexpr char kHex[] = "0123456789abcdef";
  std::string id;
  std::uint64_t words[2] = {rng(), rng() ^ ++id_counter_};
  for (std::uint64_t w : words) {
    for (int k = 0; k < 16; ++k, w >>= 4) id.push_back(kHex[w & 15]);
  }
  return id;
}

SessionMetadata SessionStore::Create(std::span<const std::uint8_t> bitstream) {
  auto session = std::make_shared<Session>();
  const DecodedSemantics decoded = DecodeSequence(Parse(bitstream));
  session->header = decoded.header;
  session->base = decoded.frames;
  session->synth = std::make_unique<const FrameSynthesizer>(
      decoded.key_params, DecodeKeyImage(decoded));
  session->Touch();

  std::lock_guard lock(sessions_mu_);
  do {
    session->id = NewId();
  } while (sessions_.count(session->id));
  sessions_[session->id] = session;
  return {session->id, session->header};
}

std::shared_ptr<SessionStore::Session> SessionStore::Find(
    const std::string& id) {
  std::shared_ptr<Session> session;
  {
    std::lock_guard lock(sessions_mu_);
    auto it = sessions_.find(id);
    if (it != sessions_.end()) session = it->second;
  }
  if (!session) throw Error(ErrorCode::kNotFound, "unknown session " + id);
  session->Touch();
  return session;
}

SessionMetadata SessionStore::Metadata(const std::string& id) {
  auto session = Find(id);
  return {session->id, session->header};
}

SemanticsSnapshot SessionStore::GetSemantics(const std::string& id,
                                             std::uint32_t frame) {
  auto session = Find(id);
  session->CheckFrame(frame);
  std::shared_lock lock(session->mu);
  return {session->Effective(frame), session->revision};
}

SemanticsSnapshot SessionStore::PostEdit(const std::string& id,
                                         std::uint32_t first,
                                         std::uint32_t last,
                                         const std::optional<EditCommand>& cmd) {
  auto session = Find(id);
  std::unique_lock lock(session->mu);
  if (!cmd) {
    if (!session->overlay.empty()) {
      session->overlay.clear();
      ++session->revision;
    }
    const std::uint32_t frame =
        first < session->base.size() ? first : 0;
    if (session->base.empty()) return {SemanticVector{}, session->revision};
    return {session->Effective(frame), session->revision};
  }
  if (first > last) {
    throw Error(ErrorCode::kValidation, "frame range is reversed");
  }
  session->CheckFrame(last);
  CheckEditCommand(*cmd);
  // Validate against every frame before committing anything.
  for (std::uint32_t f = first; f <= last; ++f) {
    ApplyEdit(session->Effective(f), *cmd);
  }
  for (std::uint32_t f = first; f <= last; ++f) {
    session->overlay[f].push_back(*cmd);
  }
  ++session->revision;
  return {session->Effective(first), session->revision};
}

RenderedFrame SessionStore::Render(const std::string& id,
                                   std::uint32_t frame) {
  auto session = Find(id);
  session->CheckFrame(frame);
  SemanticVector sem;
  std::uint64_t revision;
  {
    std::shared_lock lock(session->mu);
    sem = session->Effective(frame);
    revision = session->revision;
  }
  const CacheKey key{id, frame, revision};
  if (auto png = CacheGet(key)) return {png, revision};
  auto png = std::make_shared<const std::vector<std::uint8_t>>(
      EncodePng(session->synth->Render(sem)));
  CachePut(key, png);
  return {png, revision};
}

bool SessionStore::Delete(const std::string& id) {
  bool erased;
  {
    std::lock_guard lock(sessions_mu_);
    erased = sessions_.erase(id) > 0;
  }
  if (erased) CacheDropSession(id);
  return erased;
}

std::size_t SessionStore::ExpireIdle(Clock::time_point now) {
  std::vector<std::string> expired;
  {
    std::lock_guard lock(sessions_mu_);
    for (auto it = sessions_.begin(); it != sessions_.end();) {
      const Clock::time_point last(Clock::duration(it->second->last_access));
      if (now - last > idle_timeout_) {
        expired.push_back(it->first);
        it = sessions_.erase(it);
      } else {
        ++it;
      }
    }
  }
  for (const std::string& id : expired) CacheDropSession(id);
  return expired.size();
}

std::size_t SessionStore::size() const {
  std::lock_guard lock(sessions_mu_);
  return sessions_.size();
}

std::size_t SessionStore::cache_hits() const {
  std::lock_guard lock(cache_mu_);
  return cache_hits_;
}

std::shared_ptr<const std::vector<std::uint8_t>> SessionStore::CacheGet(
    const CacheKey& key) {
  std::lock_guard lock(cache_mu_);
  auto it = cache_index_.find(key);
  if (it == cache_index_.end()) return nullptr;
  lru_.splice(lru_.begin(), lru_, it->second);
  ++cache_hits_;
  return it->second->second;
}

void SessionStore::CachePut(
    const CacheKey& key, std::shared_ptr<const std::vector<std::uint8_t>> png) {
  if (cache_capacity_ == 0) return;
  std::lock_guard lock(cache_mu_);
  if (cache_index_.count(key)) return;
  lru_.emplace_front(key, std::move(png));
  cache_index_[key] = lru_.begin();
  while (lru_.size() > cache_capacity_) {
    cache_index_.erase(lru_.back().first);
    lru_.pop_back();
  }
}

void SessionStore::CacheDropSession(const std::string& id) {
  std::lock_guard lock(cache_mu_);
  for (auto it = lru_.begin(); it != lru_.end();) {
    if (std::get<0>(it->first) == id) {
      cache_index_.erase(it->first);
      it = lru_.erase(it);
    } else {
      ++it;
    }
  }
}

namespace {

void SendError(httplib::Response& res, int status, std::string_view code,
               const std::string& message) {
  res.status = status;
  res.set_content(Json{{"code", code}, {"message", message}}.dump(),
                   "application/json");
}

void SendJson(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

std::uint32_t ParseFrame(const std::string& text) {
  try {
    const unsigned long long v = std::stoull(text);
    if (v <= 0xFFFFFFFFull) return static_cast<std::uint32_t>(v);
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::kValidation, "frame index out of range");
}

// Runs a handler, mapping errors to {code, message} responses.
template <typename Fn>
httplib::Server::Handler Guarded(Fn fn) {
  return [fn](const httplib::Request& req, httplib::Response& res) {
    try {
      fn(req, res);
    } catch (const Error& e) {
      SendError(res, e.code() == ErrorCode::kNotFound ? 404 : 400,
                ErrorCodeName(e.code()), e.what());
    } catch (const Json::exception& e) {
      SendError(res, 400, "validation", e.what());
    } catch (const std::exception& e) {
      SendError(res, 500, "internal", e.what());
    }
  };
}

}  // namespace

Service::Service(ServiceOptions options)
    : options_(std::move(options)),
      store_(options_.cache_capacity, options_.idle_timeout),
      server_(std::make_unique<httplib::Server>()) {
  InstallRoutes();
}

Service::~Service() { Stop(); }

void Service::InstallRoutes() {
  httplib::Server& srv = *server_;
  SessionStore& store = store_;

  srv.set_pre_routing_handler(
      [&store](const httplib::Request&, httplib::Response&) {
        store.ExpireIdle(SessionStore::Clock::now());
        return httplib::Server::HandlerResponse::Unhandled;
      });

  // Requests that match no route still answer with {code, message}.
  srv.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (!res.body.empty()) return httplib::Server::HandlerResponse::Unhandled;
    SendError(res, res.status, res.status == 404 ? "not_found" : "http_error",
              httplib::status_message(res.status));
    return httplib::Server::HandlerResponse::Handled;
  });

  srv.Post("/api/sessions", Guarded([&store](const httplib::Request& req,
                                             httplib::Response& res) {
             const auto* data =
                 reinterpret_cast<const std::uint8_t*>(req.body.data());
             const SessionMetadata meta =
                 store.Create(std::span(data, req.body.size()));
             SendJson(res, 201, meta.ToJson());
           }));

  srv.Get(R"(/api/sessions/([0-9a-f]+))",
          Guarded([&store](const httplib::Request& req,
                           httplib::Response& res) {
            SendJson(res, 200, store.Metadata(req.matches[1]).ToJson());
          }));

  srv.Delete(R"(/api/sessions/([0-9a-f]+))",
             Guarded([&store](const httplib::Request& req,
                              httplib::Response& res) {
               if (!store.Delete(req.matches[1])) {
                 throw Error(ErrorCode::kNotFound,
                             "unknown session " + req.matches[1].str());
               }
               res.status = 204;
             }));

  srv.Get(R"(/api/sessions/([0-9a-f]+)/frames/(\d+)/semantics)",
          Guarded([&store](const httplib::Request& req,
                           httplib::Response& res) {
            const std::uint32_t frame = ParseFrame(req.matches[2]);
            const SemanticsSnapshot snap =
                store.GetSemantics(req.matches[1], frame);
            Json body = SemanticsToGroupedJson(snap.semantics);
            body["frame"] = frame;
            body["revision"] = snap.revision;
            res.set_header("X-Revision", std::to_string(snap.revision));
            SendJson(res, 200, body);
          }));

  srv.Post(R"(/api/sessions/([0-9a-f]+)/edits)",
           Guarded([&store](const httplib::Request& req,
                            httplib::Response& res) {
             const std::string id = req.matches[1];
             const Json body = Json::parse(req.body);
             if (!body.is_object() || !body.contains("command")) {
               throw Error(ErrorCode::kValidation, "missing field 'command'");
             }
             const Json& command = body.at("command");
             const bool reset = command.is_object() &&
                                command.value("target", "") == kResetTarget;
             std::uint32_t first = 0;
             std::uint32_t last = 0;
             if (body.contains("frames")) {
               const Json& frames = body.at("frames");
               if (!frames.is_array() || frames.size() != 2 ||
                   !frames[0].is_number_unsigned() ||
                   !frames[1].is_number_unsigned()) {
                 throw Error(ErrorCode::kValidation,
                             "frames must be [first, last]");
               }
               first = frames[0].get<std::uint32_t>();
               last = frames[1].get<std::uint32_t>();
             } else if (!reset) {
               throw Error(ErrorCode::kValidation, "missing field 'frames'");
             }
             std::optional<EditCommand> cmd;
             if (!reset) cmd = EditCommandFromJson(command);
             const SemanticsSnapshot snap = store.PostEdit(id, first, last, cmd);
             res.set_header("X-Revision", std::to_string(snap.revision));
             SendJson(res, 200,
                      Json{{"revision", snap.revision},
                           {"frame", first},
                           {"semantics", SemanticsToGroupedJson(snap.semantics)}});
           }));

  srv.Get(R"(/api/sessions/([0-9a-f]+)/frames/(\d+)/render)",
          Guarded([&store](const httplib::Request& req,
                           httplib::Response& res) {
            const RenderedFrame frame =
                store.Render(req.matches[1], ParseFrame(req.matches[2]));
            res.set_header("X-Revision", std::to_string(frame.revision));
            res.set_header("Cache-Control", "no-cache");
            res.set_content(
                std::string(frame.png->begin(), frame.png->end()),
                "image/png");
          }));

  if (!options_.ui_dir.empty()) {
    srv.set_mount_point("/", options_.ui_dir);
  }
}

int Service::Bind() {
  if (options_.port == 0) {
    port_ = server_->bind_to_any_port(options_.host);
  } else if (server_->bind_to_port(options_.host, options_.port)) {
    port_ = options_.port;
  } else {
    port_ = -1;
  }
  if (port_ < 0) {
    throw Error(ErrorCode::kIo, "cannot bind " + options_.host + ":" +
                                    std::to_string(options_.port));
  }
  return port_;
}

int Service::Start() {
  Bind();
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return port_;
}

void Service::Run() {
  Bind();
  server_->listen_after_bind();
}

void Service::Stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace ihvc
