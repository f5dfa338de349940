#ifndef SCHEDSIM_CLUSTER_HPP
#define SCHEDSIM_CLUSTER_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "schedsim/job.hpp"

namespace schedsim {

struct Node {
    int node_id = 0;
    std::optional<JobId> running_job;  // set iff busy

    bool busy() const { return running_job.has_value(); }
};

// Node inventory with count-based allocation. Assignment is lowest index
// first, which keeps runs reproducible; there is no topology model.
class ClusterState {
  public:
    explicit ClusterState(int total_nodes);

    // Marks the n lowest-indexed free nodes busy and returns them, or
    // nullopt (mutating nothing) when fewer than n are free. Throws
    // InternalError if n can never be satisfied (n > total_nodes); such
    // jobs are discarded upstream.
    std::optional<std::vector<int>> allocate(JobId job_id, int n, Seconds now);

    // Frees every node held by job_id and returns how many there were.
    int release(JobId job_id, Seconds now);

    // busy node-seconds / (total_nodes * makespan); 0 with a warning flag
    // when the makespan is degenerate.
    double utilization(Seconds makespan) const;

    int total_nodes() const { return static_cast<int>(nodes_.size()); }
    int free_count() const { return free_count_; }
    int busy_count() const { return total_nodes() - free_count_; }
    std::int64_t busy_node_seconds(Seconds now);
    const std::vector<Node>& nodes() const { return nodes_; }

  private:
    void accrue(Seconds now);

    std::vector<Node> nodes_;
    int free_count_;
    std::int64_t busy_node_seconds_ = 0;
    Seconds last_update_ = 0;
};

}  // namespace schedsim

#endif
