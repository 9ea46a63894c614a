#pragma once

#include <iosfwd>

#include "reactorkit/gateway/runtime.hpp"

namespace reactorkit::gateway {

struct StdioOptions {
  /// Wait for the runtime to settle after the snapshot and after every inbound line, so
  /// the output is a pure function of the input when the timer runs on a fake clock.
  bool lockstep = false;
};

/// Serves one connection over line-delimited JSON: inbound messages from `in`, outbound
/// messages to `out`. Returns at end of input, once the runtime has settled.
void serve_stdio(Runtime& runtime, std::istream& in, std::ostream& out, StdioOptions options = {});

}  // namespace reactorkit::gateway
