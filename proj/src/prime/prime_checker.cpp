#include "reactorkit/prime/prime_checker.hpp"

#include "reactorkit/confined.hpp"

namespace reactorkit::prime {

std::string_view to_string(PrimeRunMode mode) {
  switch (mode) {
    case PrimeRunMode::foreground: return "foreground";
    case PrimeRunMode::chunked: return "chunked";
    case PrimeRunMode::async: return "async";
  }
  return "?";
}

PrimeRunMode parse_run_mode(std::string_view text) {
  if (text == "foreground") return PrimeRunMode::foreground;
  if (text == "chunked") return PrimeRunMode::chunked;
  if (text == "async") return PrimeRunMode::async;
  throw std::invalid_argument("unknown mode: " + std::string(text));
}

std::string_view to_string(SlotStatus status) {
  switch (status) {
    case SlotStatus::neutral: return "neutral";
    case SlotStatus::checking: return "checking";
    case SlotStatus::prime: return "prime";
    case SlotStatus::composite: return "composite";
  }
  return "?";
}

taskkit::AsyncTaskSpec<std::int64_t, int, bool> lifecycle_bindings(SlotBindings bindings) {
  taskkit::AsyncTaskSpec<std::int64_t, int, bool> spec;
  spec.on_pre = std::move(bindings.on_pre);
  spec.background = [](const std::int64_t& n, taskkit::TaskContext<int>& ctx) {
    const auto result = is_prime(
        n, [&ctx] { return ctx.is_cancelled(); }, [&ctx](int p) { ctx.publish_progress(p); });
    return result.outcome == PrimeOutcome::prime;
  };
  spec.on_progress = std::move(bindings.on_progress);
  spec.on_post = std::move(bindings.on_post);
  spec.on_cancelled = [cancelled = std::move(bindings.on_cancelled)](const std::optional<bool>&) {
    if (cancelled) cancelled();
  };
  return spec;
}

struct PrimeChecker::State {
  State(LoopHandle loop, std::size_t slots, ViewSink s)
      : view(std::move(loop), PrimeViewState{std::vector<SlotView>(slots)}),
        generations(slots, 0),
        handles(slots),
        sink(std::move(s)) {}

  ConfinedCell<PrimeViewState> view;
  std::vector<std::uint64_t> generations;
  std::vector<taskkit::TaskHandle> handles;
  ViewSink sink;

  void emit() {
    if (sink) sink(view.get());
  }

  /// Applies `change` to slot `i` only while the check that reserved it still owns it.
  template <typename F>
  void update(std::size_t i, std::uint64_t generation, F&& change) {
    if (generations[i] != generation) return;
    view.with([&](PrimeViewState& v) { change(v.slots[i]); });
    emit();
  }
};

PrimeChecker::PrimeChecker(LoopHandle loop, std::shared_ptr<taskkit::Executor> executor,
                           ViewSink sink, PrimeCheckerConfig config)
    : m_loop(loop),
      m_executor(std::move(executor)),
      m_config(config),
      m_state(std::make_shared<State>(std::move(loop), config.slots, std::move(sink))) {
  if (config.slots == 0) throw std::invalid_argument("prime checker needs at least one slot");
  if (config.chunk_budget == 0) throw std::invalid_argument("chunk budget must be positive");
}

PrimeChecker::~PrimeChecker() {
  for (auto& h : m_state->handles) {
    if (h) h.cancel();
  }
}

taskkit::TaskHandle PrimeChecker::check(std::int64_t n, PrimeRunMode mode) {
  m_loop.assert_on_loop();
  if (n < 0) throw std::invalid_argument("candidate must be non-negative");
  if (mode == PrimeRunMode::async && !m_executor) {
    throw std::logic_error("async mode needs an executor");
  }

  const auto& slots = m_state->view.get().slots;
  std::size_t slot = slots.size();
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].status != SlotStatus::checking) {
      slot = i;
      break;
    }
  }
  if (slot == slots.size()) throw NoFreeSlot{};

  const std::uint64_t gen = ++m_state->generations[slot];
  std::weak_ptr<State> weak = m_state;
  auto slot_update = [weak, slot, gen](auto change) {
    if (auto s = weak.lock()) s->update(slot, gen, change);
  };
  SlotBindings b;
  b.on_pre = [slot_update, n] {
    slot_update([n](SlotView& v) { v = SlotView{n, 0, SlotStatus::checking}; });
  };
  b.on_progress = [slot_update](int percent) {
    slot_update([percent](SlotView& v) { v.percent = percent; });
  };
  b.on_post = [slot_update](bool prime) {
    slot_update([prime](SlotView& v) {
      v.status = prime ? SlotStatus::prime : SlotStatus::composite;
    });
  };
  b.on_cancelled = [slot_update] {
    slot_update([](SlotView& v) { v.status = SlotStatus::neutral; });
  };

  taskkit::TaskHandle handle;
  switch (mode) {
    case PrimeRunMode::foreground: {
      auto control = std::make_shared<taskkit::TaskControl>();
      control->mark_executed();
      control->try_start();
      handle = taskkit::TaskHandle{control};
      m_state->handles[slot] = handle;
      b.on_pre();
      auto loop = m_loop;
      auto progress = b.on_progress;
      const auto result = is_prime(n, {}, [&loop, &progress](int p) {
        loop.post([progress, p] { progress(p); });
      });
      control->finish();
      b.on_post(result.outcome == PrimeOutcome::prime);
      break;
    }
    case PrimeRunMode::chunked: {
      b.on_pre();
      auto check = std::make_shared<PrimeCheck>(n);
      taskkit::WorkChunker<bool> chunker;
      chunker.budget = m_config.chunk_budget;
      chunker.unit = [check, progress = b.on_progress](std::size_t budget) -> std::optional<bool> {
        const auto outcome = check->step(budget, {}, progress);
        if (!outcome) return std::nullopt;
        return *outcome == PrimeOutcome::prime;
      };
      chunker.on_done = b.on_post;
      chunker.on_cancelled = b.on_cancelled;
      handle = taskkit::run_chunked(std::move(chunker), m_loop);
      m_state->handles[slot] = handle;
      break;
    }
    case PrimeRunMode::async: {
      taskkit::AsyncTask<std::int64_t, int, bool> task{lifecycle_bindings(std::move(b))};
      handle = task.handle();
      m_state->handles[slot] = handle;
      task.execute_on(*m_executor, n, m_loop);
      break;
    }
  }
  return handle;
}

std::size_t PrimeChecker::cancel_all() {
  m_loop.assert_on_loop();
  std::size_t asked = 0;
  for (auto& h : m_state->handles) {
    if (h && h.cancel()) ++asked;
  }
  return asked;
}

PrimeViewState PrimeChecker::view() const { return m_state->view.get(); }

}  // namespace reactorkit::prime
