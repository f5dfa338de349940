#ifndef SCHEDSIM_ENGINE_HPP
#define SCHEDSIM_ENGINE_HPP

#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "schedsim/cluster.hpp"
#include "schedsim/debug_log.hpp"
#include "schedsim/job_queue.hpp"
#include "schedsim/metrics.hpp"
#include "schedsim/policy.hpp"
#include "schedsim/result_writer.hpp"
#include "schedsim/swf.hpp"

namespace schedsim {

enum class EventKind : int {
    End = 0,     // releases resources first,
    Submit = 1,  // then arrivals become visible,
    Invoke = 2,  // then the scheduler runs once per timestamp
};

struct Event {
    Seconds time = 0;
    EventKind kind = EventKind::Invoke;
    JobId job_id = 0;        // unused for Invoke
    std::uint64_t seq = 0;   // insertion order, breaks remaining ties
};

// Ordering key (time, kind rank, seq); the queue pops the smallest.
struct EventAfter {
    bool operator()(const Event& a, const Event& b) const {
        if (a.time != b.time) return a.time > b.time;
        if (a.kind != b.kind) return static_cast<int>(a.kind) > static_cast<int>(b.kind);
        return a.seq > b.seq;
    }
};

class EventQueue {
  public:
    void push(Seconds time, EventKind kind, JobId job_id);
    std::optional<Event> pop();
    bool empty() const { return heap_.empty(); }

  private:
    std::priority_queue<Event, std::vector<Event>, EventAfter> heap_;
    std::uint64_t next_seq_ = 0;
};

enum class RunMode { Heuristic, RlTrain, RlInfer };

struct EngineConfig {
    RunMode mode = RunMode::Heuristic;
    std::uint64_t seed = 0;
    std::string policy;  // identifier, for logging only
};

struct SimulationSummary {
    std::vector<Job> finished;     // event order; metrics use canonical order
    std::size_t jobs_read = 0;
    std::size_t discarded = 0;
    Seconds final_time = 0;
    Metrics metrics;
};

// Event-driven core. Owns the clock and event queue, drives jobs through
// submit -> start -> end, and invokes the policy exactly once per timestamp
// with new information. Strictly single-threaded and deterministic:
// identical (trace, config, seed) means identical outputs.
class Engine {
  public:
    Engine(TraceReader& trace, ClusterState& cluster, SchedulingPolicy& policy,
           EngineConfig config, DebugLog* log = nullptr, ResultWriter* results = nullptr,
           Seconds slowdown_threshold = kDefaultSlowdownThreshold);

    SimulationSummary run();

  private:
    void dispatch(const Event& ev);
    void on_submit(const Event& ev);
    void on_end(const Event& ev);
    void on_invoke(const Event& ev);
    // Returns how many jobs from the decision were started.
    std::size_t apply_decision(const ScheduleDecision& decision, Seconds now);
    void pull_next_submit();
    void schedule_invoke(Seconds at);
    void start_job(const Job& job, Seconds now);
    std::vector<Reservation> running_reservations(Seconds now) const;
    void check_conservation() const;
    void log(int level, const std::string& msg);

    TraceReader& trace_;
    ClusterState& cluster_;
    SchedulingPolicy& policy_;
    EngineConfig config_;
    DebugLog* log_;
    ResultWriter* results_;
    Seconds slowdown_threshold_;

    EventQueue events_;
    JobQueue queue_;
    Seconds clock_ = 0;
    std::optional<JobRecord> pending_submit_;       // at most one trace record in flight
    std::optional<Seconds> pending_invoke_;         // coalescing marker
    std::vector<JobId> running_ids_;                // insertion order
    SimulationSummary summary_;
};

}  // namespace schedsim

#endif
