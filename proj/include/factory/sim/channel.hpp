#pragma once

#include <condition_variable>
#include <deque>
#include <mutex>
#include <optional>

#include "factory/ia/metamodel.hpp"

namespace factory::sim {

// Ordered single-producer/single-consumer hand-off of events between a simulator
// run and a concurrently running consumer. Pops return events in push order.
class EventChannel {
 public:
  void push(ia::PhysicalEvent event) {
    {
      std::lock_guard lock(mutex_);
      if (closed_) return;
      queue_.push_back(std::move(event));
    }
    ready_.notify_one();
  }

  // No more pushes are accepted; pending events remain poppable.
  void close() {
    {
      std::lock_guard lock(mutex_);
      closed_ = true;
    }
    ready_.notify_all();
  }

  // Blocks until an event is available; nullopt once closed and drained.
  std::optional<ia::PhysicalEvent> pop() {
    std::unique_lock lock(mutex_);
    ready_.wait(lock, [&] { return closed_ || !queue_.empty(); });
    if (queue_.empty()) return std::nullopt;
    ia::PhysicalEvent e = std::move(queue_.front());
    queue_.pop_front();
    return e;
  }

 private:
  std::mutex mutex_;
  std::condition_variable ready_;
  std::deque<ia::PhysicalEvent> queue_;
  bool closed_ = false;
};

}  // namespace factory::sim
