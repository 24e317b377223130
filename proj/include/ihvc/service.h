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

#ifndef IHVC_SERVICE_H_
#define IHVC_SERVICE_H_

#include <chrono>
#include <cstdint>
#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "ihvc/json_io.h"
#include "ihvc/param_codec.h"
#include "ihvc/semantics.h"
#include "ihvc/warp_gen.h"

namespace httplib {
class Server;
}

namespace ihvc {

// Edit target name that clears a session's overlay instead of editing.
inline constexpr char kResetTarget[] = "Reset";

struct SessionMetadata {
  std::string id;
  SequenceHeader header;

  Json ToJson() const;
};

struct SemanticsSnapshot {
  SemanticVector semantics;
  std::uint64_t revision = 0;
};

struct RenderedFrame {
  std::shared_ptr<const std::vector<std::uint8_t>> png;
  std::uint64_t revision = 0;
};

// In-memory sessions keyed by an opaque id. Base semantics never change
// after load; edits accumulate in a per-frame overlay. All methods are
// thread-safe. Unknown ids throw Error(kNotFound), bad frames or commands
// Error(kValidation).
class SessionStore {
 public:
  using Clock = std::chrono::steady_clock;

  explicit SessionStore(std::size_t cache_capacity = 64,
                        Clock::duration idle_timeout = std::chrono::minutes(30));

  SessionMetadata Create(std::span<const std::uint8_t> bitstream);
  SessionMetadata Metadata(const std::string& id);
  SemanticsSnapshot GetSemantics(const std::string& id, std::uint32_t frame);
  // Applies cmd to frames first..last; nullopt resets the overlay.
  // Returns the semantics of `first` after the edit.
  SemanticsSnapshot PostEdit(const std::string& id, std::uint32_t first,
                             std::uint32_t last,
                             const std::optional<EditCommand>& cmd);
  RenderedFrame Render(const std::string& id, std::uint32_t frame);
  bool Delete(const std::string& id);

  // Drops sessions idle for longer than the timeout as of `now`.
  std::size_t ExpireIdle(Clock::time_point now);
  std::size_t size() const;
  std::size_t cache_hits() const;

 private:
  struct Session;
  using CacheKey = std::tuple<std::string, std::uint32_t, std::uint64_t>;

  std::shared_ptr<Session> Find(const std::string& id);
  std::shared_ptr<const std::vector<std::uint8_t>> CacheGet(const CacheKey& key);
  void CachePut(const CacheKey& key,
                std::shared_ptr<const std::vector<std::uint8_t>> png);
  void CacheDropSession(const std::string& id);
  std::string NewId();

  const std::size_t cache_capacity_;
  const Clock::duration idle_timeout_;

  mutable std::mutex sessions_mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t id_counter_ = 0;

  mutable std::mutex cache_mu_;
  std::list<std::pair<CacheKey,
                      std::shared_ptr<const std::vector<std::uint8_t>>>>
      lru_;
  std::map<CacheKey, decltype(lru_)::iterator> cache_index_;
  std::size_t cache_hits_ = 0;
};

struct ServiceOptions {
  std::string host = "127.0.0.1";
  int port = 8787;  // 0 picks a free port
  std::string ui_dir;  // static files served at / when set
  std::size_t cache_capacity = 64;
  std::chrono::steady_clock::duration idle_timeout = std::chrono::minutes(30);
};

// HTTP/JSON front end over a SessionStore.
//   POST   /api/sessions                          body: .ihvc bytes
//   GET    /api/sessions/{id}
//   GET    /api/sessions/{id}/frames/{i}/semantics
//   POST   /api/sessions/{id}/edits               {frames:[a,b], command}
//   GET    /api/sessions/{id}/frames/{i}/render   image/png, X-Revision
//   DELETE /api/sessions/{id}
// Errors are {"code", "message"} with status 400 or 404.
class Service {
 public:
  explicit Service(ServiceOptions options);
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Binds and serves on a background thread. Returns the bound port.
  int Start();
  // Binds and serves on the calling thread until Stop().
  void Run();
  void Stop();

  SessionStore& store() { return store_; }

 private:
  void InstallRoutes();
  int Bind();

  ServiceOptions options_;
  SessionStore store_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace ihvc

#endif  // IHVC_SERVICE_H_
