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

#include "fwpd/server.hpp"

#include <chrono>
#include <deque>
#include <fstream>
#include <system_error>
#include <iostream>
#include <list>
#include <string>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include "fwpd/protocol.hpp"

namespace fwpd
{

namespace beast = boost::beast;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

namespace
{

void write_session_log(const Session & session)
{
  const std::filesystem::path dir = log_directory();
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const std::filesystem::path path = dir / (session.id() + ".jsonl");
  std::ofstream out(path);
  if (!out) {
    std::cerr << "fwpd: cannot write event log " << path << '\n';
    return;
  }
  session.write_log(out);
}

class Connection : public std::enable_shared_from_this<Connection>
{
public:
  Connection(tcp::socket socket, const Config & config, const Scene & scene, std::string id)
  : ws_(std::move(socket)), timer_(ws_.get_executor()), config_(config), scene_(scene),
    id_(std::move(id)) {}

  ~Connection() { close(); }

  void start()
  {
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept(beast::bind_front_handler(&Connection::on_accept, shared_from_this()));
  }

  /// Flushes the event log and drops the socket.
  void close()
  {
    if (closed_) {
      return;
    }
    closed_ = true;
    timer_.cancel();
    if (session_) {
      write_session_log(*session_);
    }
    beast::error_code ignored;
    beast::get_lowest_layer(ws_).socket().close(ignored);
  }

private:
  void on_accept(beast::error_code ec)
  {
    if (ec) {
      closed_ = true;
      return;
    }
    session_ = std::make_unique<Session>(id_, scene_, config_.model, config_.seed, config_.session);
    dispatcher_ = std::make_unique<Dispatcher>(
      *session_, [this](const nlohmann::json & message) {enqueue(message.dump());});
    dispatcher_->start();
    period_ = std::chrono::duration_cast<net::steady_timer::duration>(
      std::chrono::duration<double>(1.0 / config_.tick_hz));
    next_tick_ = net::steady_timer::clock_type::now() + period_;
    schedule_tick();
    read();
  }

  void read()
  {
    ws_.async_read(buffer_, beast::bind_front_handler(&Connection::on_read, shared_from_this()));
  }

  void on_read(beast::error_code ec, std::size_t)
  {
    if (ec) {
      close();
      return;
    }
    const std::string text = beast::buffers_to_string(buffer_.data());
    buffer_.consume(buffer_.size());
    dispatcher_->handle_text(text);
    read();
  }

  void enqueue(std::string frame)
  {
    if (closed_) {
      return;
    }
    queue_.push_back(std::move(frame));
    if (queue_.size() == 1) {
      write();
    }
  }

  void write()
  {
    ws_.text(true);
    ws_.async_write(
      net::buffer(queue_.front()),
      beast::bind_front_handler(&Connection::on_write, shared_from_this()));
  }

  void on_write(beast::error_code ec, std::size_t)
  {
    if (ec) {
      close();
      return;
    }
    queue_.pop_front();
    if (!queue_.empty() && !closed_) {
      write();
    }
  }

  void schedule_tick()
  {
    timer_.expires_at(next_tick_);
    timer_.async_wait(beast::bind_front_handler(&Connection::on_tick, shared_from_this()));
  }

  void on_tick(beast::error_code ec)
  {
    if (ec || closed_) {
      return;
    }
    dispatcher_->tick(1.0 / config_.tick_hz);
    next_tick_ += period_;
    const auto now = net::steady_timer::clock_type::now();
    if (next_tick_ < now) {
      // Fell behind (e.g. a planner result was awaited); resume from now.
      next_tick_ = now + period_;
    }
    schedule_tick();
  }

  websocket::stream<beast::tcp_stream> ws_;
  net::steady_timer timer_;
  const Config & config_;
  const Scene & scene_;
  std::string id_;
  std::unique_ptr<Session> session_;
  std::unique_ptr<Dispatcher> dispatcher_;
  beast::flat_buffer buffer_;
  std::deque<std::string> queue_;
  net::steady_timer::duration period_{};
  net::steady_timer::time_point next_tick_{};
  bool closed_{false};
};

}  // namespace

struct Server::Impl
{
  Impl(Config c, Scene s)
  : config(std::move(c)), scene(std::move(s)), acceptor(ioc), signals(ioc, SIGINT, SIGTERM)
  {
    const tcp::endpoint endpoint(net::ip::address_v4::any(), config.port);
    beast::error_code ec;
    acceptor.open(endpoint.protocol(), ec);
    if (!ec) {
      acceptor.set_option(net::socket_base::reuse_address(true), ec);
    }
    if (!ec) {
      acceptor.bind(endpoint, ec);
    }
    if (!ec) {
      acceptor.listen(net::socket_base::max_listen_connections, ec);
    }
    if (ec) {
      throw std::system_error(
        ec.value(), std::system_category(), "listen on port " + std::to_string(config.port));
    }
  }

  void accept()
  {
    acceptor.async_accept(
      net::make_strand(ioc), [this](beast::error_code ec, tcp::socket socket) {
        if (ec) {
          return;
        }
        auto conn = std::make_shared<Connection>(
          std::move(socket), config, scene, "session-" + std::to_string(++connection_count));
        connections.remove_if([](const auto & w) {return w.expired();});
        connections.push_back(conn);
        conn->start();
        accept();
      });
  }

  void shutdown()
  {
    beast::error_code ignored;
    acceptor.close(ignored);
    signals.cancel(ignored);
    for (auto & weak : connections) {
      if (auto conn = weak.lock()) {
        conn->close();
      }
    }
    connections.clear();
    ioc.stop();
  }

  Config config;
  Scene scene;
  net::io_context ioc{1};
  tcp::acceptor acceptor;
  net::signal_set signals;
  std::list<std::weak_ptr<Connection>> connections;
  std::uint64_t connection_count{0};
};

Server::Server(Config config, Scene scene)
: impl_(std::make_unique<Impl>(std::move(config), std::move(scene))) {}

Server::~Server() = default;

std::uint16_t Server::port() const
{
  return impl_->acceptor.local_endpoint().port();
}

void Server::run(bool handle_signals)
{
  if (handle_signals) {
    impl_->signals.async_wait([this](beast::error_code ec, int) {
        if (!ec) {
          impl_->shutdown();
        }
      });
  }
  impl_->accept();
  impl_->ioc.run();
}

void Server::stop()
{
  net::post(impl_->ioc, [this] {impl_->shutdown();});
}

}  // namespace fwpd
