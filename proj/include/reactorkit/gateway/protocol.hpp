#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "reactorkit/counter/bounded_counter.hpp"
#include "reactorkit/prime/prime_checker.hpp"
#include "reactorkit/timer/timer_adapter.hpp"

namespace reactorkit::gateway {

using Json = nlohmann::json;

/// {"app": id, "event": name, "args": {...}}. args is optional and defaults to {}.
struct Inbound {
  std::string app;
  std::string event;
  Json args = Json::object();
};

enum class MessageType { view, error, info };

std::string_view to_string(MessageType type);

/// {"app": id, "type": view|error|info, "body": {...}, "seq": n}. seq is stamped per
/// connection when the message is encoded.
struct Outbound {
  std::string app;
  MessageType type = MessageType::view;
  Json body = Json::object();

  bool operator==(const Outbound&) const = default;
};

/// A message the gateway could not accept. `app` is the best guess at its target.
class ProtocolError : public std::runtime_error {
 public:
  ProtocolError(std::string app, const std::string& what)
      : std::runtime_error(what), m_app(std::move(app)) {}
  const std::string& app() const noexcept { return m_app; }

 private:
  std::string m_app;
};

/// App id used for errors that cannot be attributed to an app.
inline constexpr std::string_view gateway_app = "gateway";

Inbound parse_inbound(std::string_view text);

/// One compact JSON object with keys in canonical (sorted) order.
std::string encode(const Outbound& message, std::uint64_t seq);

Outbound error_message(std::string app, std::string message);
Outbound info_message(std::string app, Json body);

Json counter_body(const counter::CounterViewState& view);
Json timer_body(const timer::TimerViewState& view);
Json prime_body(const prime::PrimeViewState& view);

/// Accepts a JSON integer or a string of decimal digits with an optional sign.
/// Throws ProtocolError("invalid number") otherwise.
std::int64_t parse_number(const std::string& app, const Json& value);

}  // namespace reactorkit::gateway
