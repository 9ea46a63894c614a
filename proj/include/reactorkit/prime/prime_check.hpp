#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>

namespace reactorkit::prime {

enum class PrimeOutcome { prime, composite, cancelled };

std::string_view to_string(PrimeOutcome outcome);

using CancelProbe = std::function<bool()>;
using ProgressSink = std::function<void(int percent)>;

/// Brute-force trial division by every k in [2, n/2], resumable in slices.
///
/// Each iteration polls the cancel probe, tests k, then reports floor(k * 100 / half) to
/// the progress sink whenever that integer percent changes. A prime n therefore takes
/// exactly n/2 - 1 iterations.
class PrimeCheck {
 public:
  explicit PrimeCheck(std::int64_t n);

  /// Runs at most `budget` iterations. Returns the outcome once decided, nullopt otherwise.
  std::optional<PrimeOutcome> step(std::uint64_t budget, const CancelProbe& cancelled = {},
                                   const ProgressSink& progress = {});

  std::int64_t candidate() const noexcept { return m_n; }
  std::int64_t half() const noexcept { return m_half; }
  std::uint64_t iterations() const noexcept { return m_iterations; }
  /// Last percent handed to the sink, if any.
  std::optional<int> last_percent() const noexcept { return m_last_percent; }
  std::optional<PrimeOutcome> outcome() const noexcept { return m_outcome; }

 private:
  std::int64_t m_n;
  std::int64_t m_half;
  std::int64_t m_k = 2;
  std::int64_t m_next_report = 2;
  std::uint64_t m_iterations = 0;
  std::optional<int> m_last_percent;
  std::optional<PrimeOutcome> m_outcome;
};

struct PrimeCheckResult {
  PrimeOutcome outcome;
  std::uint64_t iterations;
};

/// The whole check in one call. n < 2 is never prime.
PrimeCheckResult is_prime(std::int64_t n, const CancelProbe& cancelled = {},
                          const ProgressSink& progress = {});

}  // namespace reactorkit::prime
