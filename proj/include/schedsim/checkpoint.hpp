#ifndef SCHEDSIM_CHECKPOINT_HPP
#define SCHEDSIM_CHECKPOINT_HPP

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "schedsim/hyperparameters.hpp"
#include "schedsim/rl_agent.hpp"

namespace schedsim {

inline constexpr const char* kCheckpointVersion = "v1";

// Everything a checkpoint file carries: enough to rebuild the agent that
// wrote it and continue or evaluate without the original command line.
struct Checkpoint {
    std::string agent_kind;  // "dqn" or "pg"
    Hyperparameters hp;
    double exploration = 0.0;        // epsilon at save time (0 for pg)
    std::vector<double> parameters;  // policy-net weights, flatten() order
};

// Versioned text format: a header (version, agent kind, layer dims, every
// hyperparameter, exploration rate, parameter count), then one decimal
// parameter per line in shortest round-trip form, then an `end` trailer
// that guards against truncation.
void save_checkpoint(const RlAgent& agent, const std::filesystem::path& path);

// Throws CheckpointError on a missing, truncated, or inconsistent file;
// a version mismatch is reported with both versions named.
Checkpoint load_checkpoint(const std::filesystem::path& path);

// Builds a fresh agent from a loaded checkpoint: constructs it with the
// stored hyperparameters, installs the parameters, restores the
// exploration rate, and lets the agent rebuild derived state.
std::unique_ptr<RlAgent> restore_agent(const Checkpoint& checkpoint, std::uint64_t seed);

}  // namespace schedsim

#endif
