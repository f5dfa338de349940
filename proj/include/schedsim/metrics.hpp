#ifndef SCHEDSIM_METRICS_HPP
#define SCHEDSIM_METRICS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "schedsim/job.hpp"

namespace schedsim {

struct Metrics {
    double avg_wait = 0.0;              // seconds
    double avg_bounded_slowdown = 0.0;  // >= 1 when finished_count > 0
    double utilization = 0.0;           // in [0, 1]
    Seconds makespan = 0;               // max end - min submit
    std::size_t finished_count = 0;
    std::size_t discarded_count = 0;
};

inline constexpr Seconds kDefaultSlowdownThreshold = 10;

// (wait + runtime) / max(runtime, threshold), clamped below at 1.
double bounded_slowdown(Seconds wait, Seconds runtime, Seconds threshold);

// Aggregates over finished jobs. Jobs are summed in canonical
// (end_time, job_id) order so the same numbers fall out when the metrics
// are recomputed from a results file. Empty input gives all-zero metrics.
Metrics compute_metrics(std::vector<Job> finished, std::int64_t busy_node_seconds,
                        int total_nodes, std::size_t discarded_count,
                        Seconds slowdown_threshold = kDefaultSlowdownThreshold);

// Shortest-round-trip decimal rendering; reparses to the identical double.
std::string format_double(double value);

}  // namespace schedsim

#endif
