#include "reactorkit/prime/prime_check.hpp"

#include <limits>

namespace reactorkit::prime {

std::string_view to_string(PrimeOutcome outcome) {
  switch (outcome) {
    case PrimeOutcome::prime: return "prime";
    case PrimeOutcome::composite: return "composite";
    case PrimeOutcome::cancelled: return "cancelled";
  }
  return "?";
}

namespace {

int percent_at(std::int64_t k, std::int64_t half) {
  return static_cast<int>(static_cast<__int128>(k) * 100 / half);
}

/// Smallest k whose percent exceeds `percent`.
std::int64_t threshold_after(int percent, std::int64_t half) {
  const __int128 num = static_cast<__int128>(percent + 1) * half;
  return static_cast<std::int64_t>((num + 99) / 100);
}

}  // namespace

PrimeCheck::PrimeCheck(std::int64_t n) : m_n(n), m_half(n / 2) {
  if (n < 2) m_outcome = PrimeOutcome::composite;
}

std::optional<PrimeOutcome> PrimeCheck::step(std::uint64_t budget, const CancelProbe& cancelled,
                                             const ProgressSink& progress) {
  if (m_outcome) return m_outcome;
  for (std::uint64_t done = 0; done < budget && m_k <= m_half; ++done) {
    if (cancelled && cancelled()) {
      m_outcome = PrimeOutcome::cancelled;
      return m_outcome;
    }
    ++m_iterations;
    if (m_n % m_k == 0) {
      m_outcome = PrimeOutcome::composite;
      return m_outcome;
    }
    if (m_k >= m_next_report) {
      const int percent = percent_at(m_k, m_half);
      m_last_percent = percent;
      m_next_report = threshold_after(percent, m_half);
      if (progress) progress(percent);
    }
    ++m_k;
  }
  if (m_k > m_half) m_outcome = PrimeOutcome::prime;
  return m_outcome;
}

PrimeCheckResult is_prime(std::int64_t n, const CancelProbe& cancelled,
                          const ProgressSink& progress) {
  PrimeCheck check{n};
  const auto outcome = check.step(std::numeric_limits<std::uint64_t>::max(), cancelled, progress);
  return {*outcome, check.iterations()};
}

}  // namespace reactorkit::prime
