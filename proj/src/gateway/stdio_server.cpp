#include "reactorkit/gateway/stdio_server.hpp"

#include <istream>
#include <mutex>
#include <ostream>
#include <string>

namespace reactorkit::gateway {

namespace {

class StreamConnection final : public Connection {
 public:
  explicit StreamConnection(std::ostream& out) : m_out(out) {}

  void deliver(const Outbound& message) override {
    std::lock_guard lock{m_mutex};
    m_out << encode(message, ++m_seq) << '\n' << std::flush;
  }

 private:
  std::mutex m_mutex;
  std::ostream& m_out;
  std::uint64_t m_seq = 0;
};

}  // namespace

void serve_stdio(Runtime& runtime, std::istream& in, std::ostream& out, StdioOptions options) {
  const auto id = runtime.attach(std::make_shared<StreamConnection>(out));
  if (options.lockstep) runtime.settle();
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    runtime.submit(id, line);
    if (options.lockstep) runtime.settle();
  }
  runtime.settle();
  runtime.detach(id);
  runtime.loop().drain();
}

}  // namespace reactorkit::gateway
