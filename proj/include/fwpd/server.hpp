// Copyright 2026 The fwpd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FWPD_SERVER_HPP_
#define FWPD_SERVER_HPP_

#include <cstdint>
#include <memory>

#include "fwpd/config.hpp"
#include "fwpd/scene.hpp"

namespace fwpd
{

/**
 * @brief WebSocket host: one Session per connection.
 *
 * All connections, tick timers and socket I/O run on one io thread, which
 * makes it the single writer of every session. Outbound frames are queued
 * and written in order per connection. Event logs are written to
 * log_directory() when a connection closes.
 */
class Server
{
public:
  /// Binds the listening socket. Throws std::system_error if the port is taken.
  Server(Config config, Scene scene);
  ~Server();

  Server(const Server &) = delete;
  Server & operator=(const Server &) = delete;

  /// Actual bound port (useful with port 0).
  [[nodiscard]] std::uint16_t port() const;

  /// Serves until stop() is called or SIGINT/SIGTERM arrives (when handle_signals).
  void run(bool handle_signals = true);

  /// Thread-safe.
  void stop();

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace fwpd

#endif  // FWPD_SERVER_HPP_
