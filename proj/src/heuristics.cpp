#include "schedsim/heuristics.hpp"

#include <algorithm>

namespace schedsim {

namespace {

// Shared walk: take jobs in the given order while they fit, stop at the
// first one that does not.
ScheduleDecision walk_until_blocked(const std::vector<const Job*>& order, int free_nodes) {
    ScheduleDecision decision;
    for (const Job* job : order) {
        if (job->record.requested_nodes > free_nodes) break;
        free_nodes -= job->record.requested_nodes;
        decision.push_back(job->record.job_id);
    }
    return decision;
}

std::vector<const Job*> sorted_by_requested_time(const QueueView& queue, bool ascending) {
    std::vector<const Job*> order(queue.begin(), queue.end());
    std::stable_sort(order.begin(), order.end(), [ascending](const Job* a, const Job* b) {
        if (a->record.requested_time != b->record.requested_time)
            return ascending ? a->record.requested_time < b->record.requested_time
                             : a->record.requested_time > b->record.requested_time;
        if (a->record.submit_time != b->record.submit_time)
            return a->record.submit_time < b->record.submit_time;
        return a->record.job_id < b->record.job_id;
    });
    return order;
}

}  // namespace

ScheduleDecision FcfsPolicy::select(const ScheduleContext& ctx) {
    return walk_until_blocked({ctx.queue.begin(), ctx.queue.end()}, ctx.free_nodes);
}

ScheduleDecision SjfPolicy::select(const ScheduleContext& ctx) {
    return walk_until_blocked(sorted_by_requested_time(ctx.queue, true), ctx.free_nodes);
}

ScheduleDecision LjfPolicy::select(const ScheduleContext& ctx) {
    return walk_until_blocked(sorted_by_requested_time(ctx.queue, false), ctx.free_nodes);
}

std::optional<Seconds> shadow_start_time(int needed, int free_nodes,
                                         const std::vector<Reservation>& running) {
    if (free_nodes >= needed) return std::nullopt;  // not blocked at all
    std::vector<Reservation> by_end(running.begin(), running.end());
    std::sort(by_end.begin(), by_end.end(), [](const Reservation& a, const Reservation& b) {
        if (a.end_bound != b.end_bound) return a.end_bound < b.end_bound;
        return a.job_id < b.job_id;
    });
    int free = free_nodes;
    for (const Reservation& r : by_end) {
        free += r.nodes;
        if (free >= needed) return r.end_bound;
    }
    return std::nullopt;
}

ScheduleDecision EasyBackfillPolicy::select(const ScheduleContext& ctx) {
    ScheduleDecision decision;
    int free = ctx.free_nodes;

    // Head-of-queue phase, identical to FCFS. Jobs started here count as
    // reservations below: they hold their nodes until now + requested_time.
    std::vector<Reservation> reserved(ctx.running.begin(), ctx.running.end());
    std::size_t head = 0;
    while (head < ctx.queue.size() && ctx.queue[head]->record.requested_nodes <= free) {
        const JobRecord& rec = ctx.queue[head]->record;
        free -= rec.requested_nodes;
        decision.push_back(rec.job_id);
        reserved.push_back({rec.job_id, ctx.now + rec.requested_time, rec.requested_nodes});
        ++head;
    }
    if (head >= ctx.queue.size()) return decision;

    const Job* blocked = ctx.queue[head];
    int needed = blocked->record.requested_nodes;
    auto shadow = shadow_start_time(needed, free, reserved);
    if (!shadow) return decision;  // nothing running can ever free enough

    // Backfill phase: a later job is admitted only if starting it now
    // provably leaves the blocked job's shadow start unchanged.
    for (std::size_t i = head + 1; i < ctx.queue.size(); ++i) {
        const Job* cand = ctx.queue[i];
        if (cand->record.requested_nodes > free) continue;
        Reservation hypothetical{cand->record.job_id, ctx.now + cand->record.requested_time,
                                 cand->record.requested_nodes};
        reserved.push_back(hypothetical);
        auto new_shadow = shadow_start_time(needed, free - cand->record.requested_nodes, reserved);
        if (new_shadow && *new_shadow <= *shadow) {
            free -= cand->record.requested_nodes;
            decision.push_back(cand->record.job_id);
        } else {
            reserved.pop_back();
        }
    }
    return decision;
}

std::unique_ptr<SchedulingPolicy> make_heuristic_policy(const std::string& name) {
    if (name == "fcfs") return std::make_unique<FcfsPolicy>();
    if (name == "sjf") return std::make_unique<SjfPolicy>();
    if (name == "ljf") return std::make_unique<LjfPolicy>();
    if (name == "easy") return std::make_unique<EasyBackfillPolicy>();
    return nullptr;
}

}  // namespace schedsim
