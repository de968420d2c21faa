#include "acgraph/event_log.hpp"

#include <chrono>
#include <ostream>

#include <nlohmann/json.hpp>

namespace acgraph {

std::uint64_t EventLog::now_ns() const {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(
          std::chrono::steady_clock::now().time_since_epoch())
          .count());
}

void EventLog::transition(std::uint32_t block, BlockState from,
                          BlockState to) {
  std::lock_guard lock(mu_);
  events_.push_back({Kind::Transition, now_ns(), block,
                     static_cast<std::uint32_t>(from),
                     static_cast<std::uint32_t>(to)});
}

void EventLog::activated(VertexId v, std::uint32_t round) {
  std::lock_guard lock(mu_);
  events_.push_back({Kind::Activated, now_ns(), v, round, 0});
}

void EventLog::processed(VertexId v, std::uint32_t round) {
  std::lock_guard lock(mu_);
  events_.push_back({Kind::Processed, now_ns(), v, round, 0});
}

std::vector<EventLog::Event> EventLog::snapshot() const {
  std::lock_guard lock(mu_);
  return events_;
}

void EventLog::clear() {
  std::lock_guard lock(mu_);
  events_.clear();
}

void EventLog::dump_json_lines(std::ostream& out) const {
  const auto events = snapshot();
  for (const Event& e : events) {
    nlohmann::json j;
    j["t_ns"] = e.t_ns;
    switch (e.kind) {
      case Kind::Transition:
        j["kind"] = "transition";
        j["block"] = e.subject;
        j["from"] = to_string(static_cast<BlockState>(e.a));
        j["to"] = to_string(static_cast<BlockState>(e.b));
        break;
      case Kind::Activated:
        j["kind"] = "activated";
        j["vertex"] = e.subject;
        j["round"] = e.a;
        break;
      case Kind::Processed:
        j["kind"] = "processed";
        j["vertex"] = e.subject;
        j["round"] = e.a;
        break;
    }
    out << j.dump() << '\n';
  }
}

}  // namespace acgraph
