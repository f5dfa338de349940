#include "schedsim/engine.hpp"

#include <algorithm>
#include <sstream>

#include "schedsim/errors.hpp"

namespace schedsim {

void EventQueue::push(Seconds time, EventKind kind, JobId job_id) {
    heap_.push(Event{time, kind, job_id, next_seq_++});
}

std::optional<Event> EventQueue::pop() {
    if (heap_.empty()) return std::nullopt;
    Event ev = heap_.top();
    heap_.pop();
    return ev;
}

Engine::Engine(TraceReader& trace, ClusterState& cluster, SchedulingPolicy& policy,
               EngineConfig config, DebugLog* log, ResultWriter* results,
               Seconds slowdown_threshold)
    : trace_(trace),
      cluster_(cluster),
      policy_(policy),
      config_(std::move(config)),
      log_(log),
      results_(results),
      slowdown_threshold_(slowdown_threshold) {}

void Engine::log(int level, const std::string& msg) {
    if (log_) log_->log(level, clock_, msg);
}

void Engine::pull_next_submit() {
    auto rec = trace_.next();
    if (!rec) return;
    pending_submit_ = *rec;
    events_.push(rec->submit_time, EventKind::Submit, rec->job_id);
}

void Engine::schedule_invoke(Seconds at) {
    if (pending_invoke_ == at) return;  // one scheduler pass per timestamp
    pending_invoke_ = at;
    events_.push(at, EventKind::Invoke, 0);
}

SimulationSummary Engine::run() {
    pull_next_submit();
    while (auto ev = events_.pop()) {
        if (ev->time < clock_)
            throw InternalError("event queue popped t=" + std::to_string(ev->time) +
                                " after t=" + std::to_string(clock_));
        clock_ = ev->time;
        dispatch(*ev);
        check_conservation();
    }

    if (queue_.queued_count() != 0 || queue_.running_count() != 0)
        throw InternalError("simulation drained with " + std::to_string(queue_.queued_count()) +
                            " queued and " + std::to_string(queue_.running_count()) +
                            " running jobs");

    if (results_) results_->flush();
    summary_.final_time = clock_;
    summary_.metrics =
        compute_metrics(summary_.finished, cluster_.busy_node_seconds(clock_),
                        cluster_.total_nodes(), summary_.discarded, slowdown_threshold_);
    return std::move(summary_);
}

void Engine::dispatch(const Event& ev) {
    switch (ev.kind) {
        case EventKind::Submit: on_submit(ev); break;
        case EventKind::End: on_end(ev); break;
        case EventKind::Invoke: on_invoke(ev); break;
    }
}

void Engine::on_submit(const Event& ev) {
    if (!pending_submit_ || pending_submit_->job_id != ev.job_id)
        throw InternalError("submit event for job " + std::to_string(ev.job_id) +
                            " does not match the pending trace record");
    JobRecord rec = *pending_submit_;
    pending_submit_.reset();
    ++summary_.jobs_read;

    if (rec.requested_nodes > cluster_.total_nodes()) {
        ++summary_.discarded;
        log(kLogWarn, "discarding job " + std::to_string(rec.job_id) + ": requests " +
                          std::to_string(rec.requested_nodes) + " nodes, cluster has " +
                          std::to_string(cluster_.total_nodes()));
    } else {
        queue_.enqueue(rec, clock_);
        log(kLogEvent, "submit job " + std::to_string(rec.job_id) + " (" +
                           std::to_string(rec.requested_nodes) + " nodes, " +
                           std::to_string(rec.requested_time) + "s requested)");
        schedule_invoke(clock_);
    }
    pull_next_submit();
}

void Engine::on_end(const Event& ev) {
    cluster_.release(ev.job_id, clock_);
    Job finished = queue_.mark_finished(ev.job_id, clock_);
    running_ids_.erase(std::remove(running_ids_.begin(), running_ids_.end(), ev.job_id),
                       running_ids_.end());
    log(kLogEvent, "end job " + std::to_string(ev.job_id) + " (waited " +
                       std::to_string(finished.wait_time()) + "s)");
    if (results_) results_->append(finished);
    summary_.finished.push_back(std::move(finished));
    schedule_invoke(clock_);
}

void Engine::on_invoke(const Event& ev) {
    if (pending_invoke_ == ev.time) pending_invoke_.reset();

    QueueView view = queue_.queue_view();
    auto running = running_reservations(clock_);
    ScheduleContext ctx{view, cluster_.free_count(), cluster_.total_nodes(), clock_, running};
    ScheduleDecision decision = policy_.select(ctx);
    std::size_t started = apply_decision(decision, clock_);

    if (log_ && log_->level() >= kLogDecision) {
        std::ostringstream os;
        os << "policy " << policy_.name() << " started " << started << " of "
           << view.size() << " queued:";
        for (JobId id : decision) os << ' ' << id;
        log(kLogDecision, os.str());
    }

    // Liveness guard: a policy may legally start nothing, but if the
    // cluster is idle, the queue is non-empty and no event will ever fire
    // again, the simulation would stall. Start the head job; it always
    // fits because oversized jobs were discarded at submit.
    if (started == 0 && queue_.queued_count() > 0 && queue_.running_count() == 0 &&
        events_.empty() && !pending_submit_) {
        QueueView fresh = queue_.queue_view();
        log(kLogDecision,
            "idle cluster with no pending events; forcing head job " +
                std::to_string(fresh.front()->record.job_id));
        start_job(*fresh.front(), clock_);
    }
}

std::vector<Reservation> Engine::running_reservations(Seconds now) const {
    std::vector<Reservation> out;
    out.reserve(running_ids_.size());
    for (JobId id : running_ids_) {
        const Job* job = queue_.find(id);
        Seconds bound = *job->start_time + job->record.requested_time;
        out.push_back({id, std::max(bound, now), job->record.requested_nodes});
    }
    return out;
}

void Engine::start_job(const Job& job, Seconds now) {
    auto nodes = cluster_.allocate(job.record.job_id, job.record.requested_nodes, now);
    if (!nodes)
        throw PolicyContractError("job " + std::to_string(job.record.job_id) + " needs " +
                                  std::to_string(job.record.requested_nodes) + " nodes but only " +
                                  std::to_string(cluster_.free_count()) + " are free at t=" +
                                  std::to_string(now));
    Seconds end = now + job.record.actual_runtime;
    queue_.mark_started(job.record.job_id, now, *nodes);
    running_ids_.push_back(job.record.job_id);
    events_.push(end, EventKind::End, job.record.job_id);
    log(kLogEvent, "start job " + std::to_string(job.record.job_id) + " on " +
                       std::to_string(nodes->size()) + " nodes, ends at t=" + std::to_string(end));
}

std::size_t Engine::apply_decision(const ScheduleDecision& decision, Seconds now) {
    std::size_t started = 0;
    for (JobId id : decision) {
        const Job* job = queue_.find(id);
        if (!job)
            throw PolicyContractError("decision names unknown job " + std::to_string(id));
        if (job->status != JobStatus::Queued)
            throw PolicyContractError("decision names job " + std::to_string(id) +
                                      " which is not queued");
        start_job(*job, now);
        ++started;
    }
    return started;
}

void Engine::check_conservation() const {
    std::size_t accounted = queue_.queued_count() + queue_.running_count() +
                            queue_.finished_count() + summary_.discarded;
    if (accounted != summary_.jobs_read)
        throw InternalError("job conservation violated: read " +
                            std::to_string(summary_.jobs_read) + ", accounted " +
                            std::to_string(accounted));
}

}  // namespace schedsim
