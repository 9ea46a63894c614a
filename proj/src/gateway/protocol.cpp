#include "reactorkit/gateway/protocol.hpp"

#include <charconv>

namespace reactorkit::gateway {

std::string_view to_string(MessageType type) {
  switch (type) {
    case MessageType::view: return "view";
    case MessageType::error: return "error";
    case MessageType::info: return "info";
  }
  return "?";
}

Inbound parse_inbound(std::string_view text) {
  Json doc = Json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw ProtocolError(std::string(gateway_app), "malformed message");
  }
  Inbound in;
  const auto app = doc.find("app");
  if (app == doc.end() || !app->is_string()) {
    throw ProtocolError(std::string(gateway_app), "missing app");
  }
  in.app = app->get<std::string>();
  const auto event = doc.find("event");
  if (event == doc.end() || !event->is_string()) throw ProtocolError(in.app, "missing event");
  in.event = event->get<std::string>();
  if (const auto args = doc.find("args"); args != doc.end() && !args->is_null()) {
    if (!args->is_object()) throw ProtocolError(in.app, "args must be an object");
    in.args = *args;
  }
  return in;
}

std::string encode(const Outbound& message, std::uint64_t seq) {
  Json doc = {{"app", message.app},
              {"type", to_string(message.type)},
              {"body", message.body},
              {"seq", seq}};
  return doc.dump();
}

Outbound error_message(std::string app, std::string message) {
  return Outbound{std::move(app), MessageType::error, Json{{"message", std::move(message)}}};
}

Outbound info_message(std::string app, Json body) {
  return Outbound{std::move(app), MessageType::info, std::move(body)};
}

Json counter_body(const counter::CounterViewState& v) {
  return {{"value", v.displayed},
          {"inc", v.inc_enabled},
          {"dec", v.dec_enabled},
          {"reset", v.reset_enabled}};
}

Json timer_body(const timer::TimerViewState& v) {
  return {{"display", v.display()},
          {"state", to_string(v.state)},
          {"ringing", v.ringing},
          {"button_label", v.label()}};
}

Json prime_body(const prime::PrimeViewState& v) {
  Json slots = Json::array();
  for (const auto& s : v.slots) {
    slots.push_back({{"n", s.n}, {"percent", s.percent}, {"status", to_string(s.status)}});
  }
  return {{"slots", std::move(slots)}};
}

std::int64_t parse_number(const std::string& app, const Json& value) {
  if (value.is_number_integer()) return value.get<std::int64_t>();
  if (value.is_string()) {
    const auto& text = value.get_ref<const std::string&>();
    std::int64_t n = 0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    if (begin != end && *begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, n);
    if (begin != end && ec == std::errc{} && ptr == end) return n;
  }
  throw ProtocolError(app, "invalid number");
}

}  // namespace reactorkit::gateway
