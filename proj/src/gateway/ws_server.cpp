#include "reactorkit/gateway/ws_server.hpp"

#include <csignal>
#include <deque>
#include <map>
#include <mutex>
#include <thread>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include "reactorkit/log.hpp"

namespace reactorkit::gateway {

namespace net = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = net::ip::tcp;

namespace {

std::string_view mime_type(std::string_view path) {
  const auto dot = path.rfind('.');
  if (dot == std::string_view::npos) return "application/octet-stream";
  const auto ext = path.substr(dot);
  if (ext == ".html" || ext == ".htm") return "text/html";
  if (ext == ".js" || ext == ".mjs") return "application/javascript";
  if (ext == ".css") return "text/css";
  if (ext == ".json") return "application/json";
  if (ext == ".svg") return "image/svg+xml";
  if (ext == ".png") return "image/png";
  if (ext == ".ico") return "image/x-icon";
  if (ext == ".txt") return "text/plain";
  return "application/octet-stream";
}

struct ServerCore {
  ServerCore(Runtime& rt, WsServerOptions opts) : runtime(rt), options(std::move(opts)) {}

  Runtime& runtime;
  WsServerOptions options;
  net::io_context ioc{1};
  tcp::acceptor acceptor{ioc};

  std::mutex mutex;
  bool stopping = false;
  std::map<Runtime::ConnectionId, bool> live;

  void accept();
  void stop_serving();
};

class WsSession final : public Connection, public std::enable_shared_from_this<WsSession> {
 public:
  WsSession(ServerCore& server, tcp::socket socket)
      : m_server(server), m_ws(std::move(socket)) {}

  void accept(http::request<http::string_body> req) {
    m_ws.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    m_ws.async_accept(req, [self = shared_from_this()](beast::error_code ec) {
      if (!ec) self->on_open();
    });
  }

  void deliver(const Outbound& message) override {
    net::post(m_ws.get_executor(),
              [self = shared_from_this(), message] { self->enqueue(message); });
  }

 private:
  void on_open() {
    {
      std::lock_guard lock{m_server.mutex};
      if (m_server.stopping) return;
      m_id = m_server.runtime.attach(shared_from_this());
      m_server.live[m_id] = true;
    }
    m_attached = true;
    read();
  }

  void read() {
    m_ws.async_read(m_buffer, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) return self->finish();
      self->m_server.runtime.submit(self->m_id, beast::buffers_to_string(self->m_buffer.data()));
      self->m_buffer.consume(self->m_buffer.size());
      self->read();
    });
  }

  void enqueue(const Outbound& message) {
    if (m_closed) return;
    bool replaced = false;
    if (message.type == MessageType::view) {
      for (auto& queued : m_queue) {
        if (queued.type == MessageType::view && queued.app == message.app) {
          queued = message;
          replaced = true;
          break;
        }
      }
    }
    if (!replaced) m_queue.push_back(message);
    if (!m_writing) write_next();
  }

  void write_next() {
    if (m_queue.empty() || m_closed) {
      m_writing = false;
      return;
    }
    m_writing = true;
    m_out = encode(m_queue.front(), ++m_seq);
    m_queue.pop_front();
    m_ws.text(true);
    m_ws.async_write(net::buffer(m_out), [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) return self->finish();
      self->write_next();
    });
  }

  void finish() {
    if (m_closed) return;
    m_closed = true;
    m_queue.clear();
    if (!m_attached) return;
    std::lock_guard lock{m_server.mutex};
    if (m_server.live.erase(m_id)) m_server.runtime.detach(m_id);
  }

  ServerCore& m_server;
  websocket::stream<beast::tcp_stream> m_ws;
  beast::flat_buffer m_buffer;
  std::deque<Outbound> m_queue;
  std::string m_out;
  std::uint64_t m_seq = 0;
  Runtime::ConnectionId m_id = 0;
  bool m_attached = false;
  bool m_writing = false;
  bool m_closed = false;
};

class HttpSession final : public std::enable_shared_from_this<HttpSession> {
 public:
  HttpSession(ServerCore& server, tcp::socket socket)
      : m_server(server), m_stream(std::move(socket)) {}

  void read() {
    m_req = {};
    m_stream.expires_after(std::chrono::seconds(30));
    http::async_read(m_stream, m_buffer, m_req,
                     [self = shared_from_this()](beast::error_code ec, std::size_t) {
                       self->on_read(ec);
                     });
  }

 private:
  void on_read(beast::error_code ec) {
    if (ec) {
      beast::error_code ignored;
      m_stream.socket().shutdown(tcp::socket::shutdown_send, ignored);
      return;
    }
    if (websocket::is_upgrade(m_req)) {
      if (m_req.target() == "/ws") {
        m_stream.expires_never();
        std::make_shared<WsSession>(m_server, m_stream.release_socket())->accept(std::move(m_req));
        return;
      }
      return respond_text(http::status::not_found, "no websocket here\n");
    }
    serve_file();
  }

  void serve_file() {
    if (m_req.method() != http::verb::get && m_req.method() != http::verb::head) {
      return respond_text(http::status::method_not_allowed, "GET only\n");
    }
    std::string target{m_req.target()};
    if (const auto q = target.find('?'); q != std::string::npos) target.resize(q);
    if (m_server.options.web_root.empty() || target.empty() || target.front() != '/' ||
        target.find("..") != std::string::npos) {
      return respond_text(http::status::not_found, "not found\n");
    }
    if (target.back() == '/') target += "index.html";
    const std::string path = m_server.options.web_root + target;

    http::file_body::value_type body;
    beast::error_code ec;
    body.open(path.c_str(), beast::file_mode::scan, ec);
    if (ec) return respond_text(http::status::not_found, "not found\n");

    auto res = std::make_shared<http::response<http::file_body>>(
        std::piecewise_construct, std::make_tuple(std::move(body)),
        std::make_tuple(http::status::ok, m_req.version()));
    res->set(http::field::content_type, std::string(mime_type(path)));
    res->keep_alive(m_req.keep_alive());
    res->prepare_payload();
    if (m_req.method() == http::verb::head) res->body().close();
    send(std::move(res));
  }

  void respond_text(http::status status, std::string text) {
    auto res = std::make_shared<http::response<http::string_body>>(status, m_req.version());
    res->set(http::field::content_type, "text/plain");
    res->keep_alive(m_req.keep_alive());
    res->body() = std::move(text);
    res->prepare_payload();
    send(std::move(res));
  }

  template <typename Response>
  void send(std::shared_ptr<Response> res) {
    http::async_write(m_stream, *res,
                      [self = shared_from_this(), res](beast::error_code ec, std::size_t) {
                        if (ec || !res->keep_alive()) {
                          beast::error_code ignored;
                          self->m_stream.socket().shutdown(tcp::socket::shutdown_send, ignored);
                          return;
                        }
                        self->read();
                      });
  }

  ServerCore& m_server;
  beast::tcp_stream m_stream;
  beast::flat_buffer m_buffer;
  http::request<http::string_body> m_req;
};

}  // namespace

struct WsServer::Impl : ServerCore {
  using ServerCore::ServerCore;
  std::thread thread;
};

void ServerCore::accept() {
  acceptor.async_accept(ioc, [this](beast::error_code ec, tcp::socket socket) {
    if (ec) {
      if (ec != net::error::operation_aborted) {
        log(LogLevel::warn, "accept failed: " + ec.message());
        accept();
      }
      return;
    }
    std::make_shared<HttpSession>(*this, std::move(socket))->read();
    accept();
  });
}

void ServerCore::stop_serving() {
  {
    std::lock_guard lock{mutex};
    if (stopping) return;
    stopping = true;
    for (const auto& [id, _] : live) runtime.detach(id);
    live.clear();
  }
  runtime.loop().drain();
  ioc.stop();
}

WsServer::WsServer(Runtime& runtime, WsServerOptions options)
    : m_impl(std::make_unique<Impl>(runtime, std::move(options))) {
  try {
    const tcp::endpoint endpoint{net::ip::make_address(m_impl->options.address),
                                 static_cast<unsigned short>(m_impl->options.port)};
    m_impl->acceptor.open(endpoint.protocol());
    m_impl->acceptor.set_option(net::socket_base::reuse_address(true));
    m_impl->acceptor.bind(endpoint);
    m_impl->acceptor.listen(net::socket_base::max_listen_connections);
  } catch (const boost::system::system_error& e) {
    throw BindFailure("cannot listen on " + m_impl->options.address + ":" +
                      std::to_string(m_impl->options.port) + ": " + e.code().message());
  }
  m_impl->accept();
}

WsServer::~WsServer() { stop(); }

int WsServer::port() const noexcept { return m_impl->acceptor.local_endpoint().port(); }

void WsServer::start() {
  m_impl->thread = std::thread([impl = m_impl.get()] { impl->ioc.run(); });
}

void WsServer::run(bool until_signal) {
  net::signal_set signals{m_impl->ioc};
  if (until_signal) {
    signals.add(SIGINT);
    signals.add(SIGTERM);
    signals.async_wait([impl = m_impl.get()](beast::error_code ec, int) {
      if (!ec) impl->stop_serving();
    });
  }
  m_impl->ioc.run();
}

void WsServer::stop() {
  m_impl->stop_serving();
  if (m_impl->thread.joinable() && m_impl->thread.get_id() != std::this_thread::get_id()) {
    m_impl->thread.join();
  }
}

}  // namespace reactorkit::gateway
