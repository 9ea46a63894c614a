#pragma once

#include <exception>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>

#include "reactorkit/event_loop.hpp"
#include "reactorkit/log.hpp"
#include "reactorkit/taskkit/executor.hpp"
#include "reactorkit/taskkit/task_handle.hpp"

namespace reactorkit::taskkit {

/// The background body's view of its own task.
template <typename Progress>
class TaskContext {
 public:
  virtual ~TaskContext() = default;
  virtual bool is_cancelled() const = 0;
  /// Posts `value` to the loop. Dropped once cancellation has been requested.
  virtual void publish_progress(Progress value) = 0;
};

/// Callbacks for one asynchronous task. Only `background` runs off the loop thread.
template <typename Params, typename Progress, typename Result>
struct AsyncTaskSpec {
  std::function<void()> on_pre;
  std::function<Result(const Params&, TaskContext<Progress>&)> background;
  std::function<void(const Progress&)> on_progress;
  std::function<void(const Result&)> on_post;
  std::function<void(const std::optional<Result>&)> on_cancelled;
  /// Deliver only the latest pending progress value instead of every publication.
  bool coalesce_progress = false;
};

/// pre on the loop, body on an executor, progress and exactly one terminal callback
/// (post or cancelled) back on the loop.
///
/// A body that throws ends in on_cancelled(nullopt); the exception is then rethrown on the
/// loop so the loop's error hook reports it.
template <typename Params, typename Progress, typename Result>
class AsyncTask {
 public:
  using Spec = AsyncTaskSpec<Params, Progress, Result>;

  explicit AsyncTask(Spec spec) : m_shared(std::make_shared<Shared>(std::move(spec))) {}

  TaskHandle handle() const { return TaskHandle{m_shared->control}; }

  /// Must be called on `loop`'s thread. Throws AlreadyExecuted on a second call and
  /// ExecutorShutDown if the executor no longer accepts work.
  TaskHandle execute_on(Executor& executor, Params params, LoopHandle loop) {
    loop.assert_on_loop();
    if (!executor.accepting()) throw ExecutorShutDown{};
    if (!m_shared->control->mark_executed()) throw AlreadyExecuted{};
    m_shared->loop = loop;

    const auto& spec = m_shared->spec;
    if (spec.on_pre) spec.on_pre();

    auto shared = m_shared;
    if (shared->control->cancel_requested() && shared->control->cancel_pending()) {
      shared->post_cancelled(std::nullopt);
      return handle();
    }
    shared->control->set_pending_canceller([shared] { shared->post_cancelled(std::nullopt); });
    try {
      executor.submit(Job{
          [shared, params = std::move(params)] { shared->run_background(params); },
          [shared] {
            if (shared->control->cancel_pending()) shared->post_cancelled(std::nullopt);
          }});
    } catch (const ExecutorShutDown&) {
      if (shared->control->cancel_pending()) shared->post_cancelled(std::nullopt);
      throw;
    }
    return handle();
  }

 private:
  struct Shared final : TaskContext<Progress>, std::enable_shared_from_this<Shared> {
    explicit Shared(Spec s) : spec(std::move(s)) {}

    Spec spec;
    std::shared_ptr<TaskControl> control = std::make_shared<TaskControl>();
    LoopHandle loop;

    std::mutex progress_mutex;
    std::optional<Progress> latest;
    bool drain_posted = false;

    bool is_cancelled() const override { return control->cancel_requested(); }

    void publish_progress(Progress value) override {
      if (control->cancel_requested()) return;
      auto self = this->shared_from_this();
      if (spec.coalesce_progress) {
        {
          std::lock_guard lock{progress_mutex};
          latest = std::move(value);
          if (drain_posted) return;
          drain_posted = true;
        }
        safe_post([self] {
          std::optional<Progress> pending;
          {
            std::lock_guard lock{self->progress_mutex};
            pending.swap(self->latest);
            self->drain_posted = false;
          }
          if (pending) self->deliver_progress(*pending);
        });
        return;
      }
      safe_post([self, value = std::move(value)] { self->deliver_progress(value); });
    }

    void deliver_progress(const Progress& value) {
      if (control->cancel_requested() || !spec.on_progress) return;
      spec.on_progress(value);
    }

    void run_background(const Params& params) {
      switch (control->try_start()) {
        case TaskControl::Start::skip: return;
        case TaskControl::Start::cancel: post_cancelled(std::nullopt); return;
        case TaskControl::Start::run: break;
      }
      std::optional<Result> result;
      std::exception_ptr failure;
      try {
        result.emplace(spec.background(params, *this));
      } catch (...) {
        failure = std::current_exception();
      }
      auto self = this->shared_from_this();
      safe_post([self, result = std::move(result), failure] {
        const TaskState state = self->control->finish(failure != nullptr);
        if (state == TaskState::done) {
          if (self->spec.on_post) self->spec.on_post(*result);
        } else if (self->spec.on_cancelled) {
          self->spec.on_cancelled(result);
        }
        if (failure) std::rethrow_exception(failure);
      });
    }

    void post_cancelled(std::optional<Result> result) {
      auto self = this->shared_from_this();
      safe_post([self, result = std::move(result)] {
        if (self->spec.on_cancelled) self->spec.on_cancelled(result);
      });
    }

    void safe_post(Action action) {
      try {
        loop.post(std::move(action));
      } catch (const EnqueueOnClosed&) {
        log(LogLevel::debug, "task callback dropped: loop is closed");
      }
    }
  };

  std::shared_ptr<Shared> m_shared;
};

/// One loop-thread slice of a chunked computation. Returning a value ends the job.
template <typename Result>
struct WorkChunker {
  std::function<std::optional<Result>(std::size_t budget)> unit;
  std::function<void(const Result&)> on_done;
  std::function<void()> on_cancelled;
  std::size_t budget = 1000;
};

/// Runs `chunker` as a sequence of loop events. Each unit first checks for cancellation,
/// then does up to `budget` iterations of work, then posts its successor, so other queued
/// events interleave between units. Must be called on the loop thread.
template <typename Result>
TaskHandle run_chunked(WorkChunker<Result> chunker, LoopHandle loop) {
  loop.assert_on_loop();
  struct ChunkJob : std::enable_shared_from_this<ChunkJob> {
    WorkChunker<Result> chunker;
    std::shared_ptr<TaskControl> control = std::make_shared<TaskControl>();
    LoopHandle loop;

    void step() {
      if (control->cancel_requested()) {
        control->finish();
        if (chunker.on_cancelled) chunker.on_cancelled();
        return;
      }
      std::optional<Result> outcome;
      try {
        outcome = chunker.unit(chunker.budget);
      } catch (...) {
        control->finish(true);
        if (chunker.on_cancelled) chunker.on_cancelled();
        throw;
      }
      if (outcome) {
        if (control->finish() == TaskState::done) {
          if (chunker.on_done) chunker.on_done(*outcome);
        } else if (chunker.on_cancelled) {
          chunker.on_cancelled();
        }
        return;
      }
      schedule();
    }

    void schedule() {
      auto self = this->shared_from_this();
      try {
        loop.post([self] { self->step(); });
      } catch (const EnqueueOnClosed&) {
        control->finish(true);
      }
    }
  };
  auto job = std::make_shared<ChunkJob>();
  job->chunker = std::move(chunker);
  job->loop = std::move(loop);
  job->control->mark_executed();
  job->control->try_start();
  job->schedule();
  return TaskHandle{job->control};
}

}  // namespace reactorkit::taskkit
