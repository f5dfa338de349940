#ifndef SCHEDSIM_HEURISTICS_HPP
#define SCHEDSIM_HEURISTICS_HPP

#include <memory>
#include <optional>

#include "schedsim/policy.hpp"

namespace schedsim {

// Strict first-come-first-serve: walk the queue in arrival order, start
// everything that fits, stop at the first job that does not. No skipping.
class FcfsPolicy : public SchedulingPolicy {
  public:
    ScheduleDecision select(const ScheduleContext& ctx) override;
    std::string name() const override { return "fcfs"; }
};

// Shortest job first by requested time (ties: submit time, then job id).
class SjfPolicy : public SchedulingPolicy {
  public:
    ScheduleDecision select(const ScheduleContext& ctx) override;
    std::string name() const override { return "sjf"; }
};

// Longest job first by requested time.
class LjfPolicy : public SchedulingPolicy {
  public:
    ScheduleDecision select(const ScheduleContext& ctx) override;
    std::string name() const override { return "ljf"; }
};

// EASY backfilling: start head-of-queue jobs until one blocks, reserve a
// shadow start for the blocked job, then backfill later arrivals that fit
// now and cannot push that shadow start back.
class EasyBackfillPolicy : public SchedulingPolicy {
  public:
    ScheduleDecision select(const ScheduleContext& ctx) override;
    std::string name() const override { return "easy"; }
};

// Earliest time `needed` nodes are guaranteed free, given current free
// nodes and the requested-time bounds of the running jobs. nullopt when the
// reservations can never cover the request.
std::optional<Seconds> shadow_start_time(int needed, int free_nodes,
                                         const std::vector<Reservation>& running);

// Factory for the heuristic policies; returns nullptr for unknown names
// (the RL policies are built elsewhere, they need an agent).
std::unique_ptr<SchedulingPolicy> make_heuristic_policy(const std::string& name);

}  // namespace schedsim

#endif
