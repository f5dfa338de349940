#include "schedsim/cluster.hpp"

#include <string>

#include "schedsim/errors.hpp"

namespace schedsim {

ClusterState::ClusterState(int total_nodes) : free_count_(total_nodes) {
    if (total_nodes < 1) throw ConfigError("cluster must have at least one node");
    nodes_.resize(static_cast<std::size_t>(total_nodes));
    for (int i = 0; i < total_nodes; ++i) nodes_[static_cast<std::size_t>(i)].node_id = i;
}

void ClusterState::accrue(Seconds now) {
    if (now < last_update_)
        throw InternalError("cluster clock moved backward: " + std::to_string(now) + " < " +
                            std::to_string(last_update_));
    busy_node_seconds_ += static_cast<std::int64_t>(busy_count()) * (now - last_update_);
    last_update_ = now;
}

std::optional<std::vector<int>> ClusterState::allocate(JobId job_id, int n, Seconds now) {
    if (n < 1) throw InternalError("allocation size must be >= 1");
    if (n > total_nodes())
        throw InternalError("job " + std::to_string(job_id) + " requests " + std::to_string(n) +
                            " nodes on a " + std::to_string(total_nodes()) + "-node cluster");
    accrue(now);
    if (free_count_ < n) return std::nullopt;

    std::vector<int> picked;
    picked.reserve(static_cast<std::size_t>(n));
    for (Node& node : nodes_) {
        if (node.busy()) continue;
        node.running_job = job_id;
        picked.push_back(node.node_id);
        if (static_cast<int>(picked.size()) == n) break;
    }
    free_count_ -= n;
    return picked;
}

int ClusterState::release(JobId job_id, Seconds now) {
    accrue(now);
    int freed = 0;
    for (Node& node : nodes_) {
        if (node.running_job == job_id) {
            node.running_job.reset();
            ++freed;
        }
    }
    if (freed == 0)
        throw InternalError("release of job " + std::to_string(job_id) + " which holds no nodes");
    free_count_ += freed;
    return freed;
}

std::int64_t ClusterState::busy_node_seconds(Seconds now) {
    accrue(now);
    return busy_node_seconds_;
}

double ClusterState::utilization(Seconds makespan) const {
    if (makespan <= 0) return 0.0;
    return static_cast<double>(busy_node_seconds_) /
           (static_cast<double>(total_nodes()) * static_cast<double>(makespan));
}

}  // namespace schedsim
