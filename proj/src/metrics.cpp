#include "schedsim/metrics.hpp"

#include <algorithm>
#include <charconv>

#include "schedsim/errors.hpp"

namespace schedsim {

double bounded_slowdown(Seconds wait, Seconds runtime, Seconds threshold) {
    double sd = static_cast<double>(wait + runtime) /
                static_cast<double>(std::max(runtime, threshold));
    return std::max(1.0, sd);
}

Metrics compute_metrics(std::vector<Job> finished, std::int64_t busy_node_seconds,
                        int total_nodes, std::size_t discarded_count,
                        Seconds slowdown_threshold) {
    Metrics m;
    m.discarded_count = discarded_count;
    m.finished_count = finished.size();
    if (finished.empty()) return m;

    std::sort(finished.begin(), finished.end(), [](const Job& a, const Job& b) {
        if (*a.end_time != *b.end_time) return *a.end_time < *b.end_time;
        return a.record.job_id < b.record.job_id;
    });

    std::int64_t wait_sum = 0;
    double slowdown_sum = 0.0;
    Seconds min_submit = finished.front().record.submit_time;
    Seconds max_end = 0;
    for (const Job& job : finished) {
        if (job.status != JobStatus::Finished)
            throw InternalError("metrics over a job that is not finished: " +
                                std::to_string(job.record.job_id));
        wait_sum += job.wait_time();
        slowdown_sum +=
            bounded_slowdown(job.wait_time(), job.record.actual_runtime, slowdown_threshold);
        min_submit = std::min(min_submit, job.record.submit_time);
        max_end = std::max(max_end, *job.end_time);
    }

    auto n = static_cast<double>(finished.size());
    m.avg_wait = static_cast<double>(wait_sum) / n;
    m.avg_bounded_slowdown = slowdown_sum / n;
    m.makespan = max_end - min_submit;
    if (m.makespan > 0) {
        m.utilization = static_cast<double>(busy_node_seconds) /
                        (static_cast<double>(total_nodes) * static_cast<double>(m.makespan));
    }
    return m;
}

std::string format_double(double value) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc()) throw InternalError("double formatting failed");
    return std::string(buf, p);
}

}  // namespace schedsim
