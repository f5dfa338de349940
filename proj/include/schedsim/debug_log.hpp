#ifndef SCHEDSIM_DEBUG_LOG_HPP
#define SCHEDSIM_DEBUG_LOG_HPP

#include <fstream>
#include <memory>
#include <ostream>
#include <string>

#include "schedsim/job.hpp"

namespace schedsim {

// Five debug levels; level L emits everything at levels <= L.
//   1  errors and the end-of-run summary
//   2  + warnings (malformed lines, discarded jobs, ignored keys)
//   3  + scheduler decisions
//   4  + event lifecycle (submit/start/end)
//   5  + RL internals (losses, epsilon, chosen actions)
enum DebugLevel : int {
    kLogError = 1,
    kLogWarn = 2,
    kLogDecision = 3,
    kLogEvent = 4,
    kLogRl = 5,
};

// Leveled append-only log. Lines are stamped with simulation time, never
// wall-clock time, so logs are reproducible. Logging must never influence
// simulation behavior; the engine treats the logger as write-only.
class DebugLog {
  public:
    DebugLog() = default;                          // disabled (level 0)
    DebugLog(std::ostream& sink, int level);       // borrowed sink
    static DebugLog open_file(const std::string& path, int level);

    void log(int level, Seconds sim_time, const std::string& message);
    // Same gating, explicit tag: the end-of-run summary ships at level 1
    // but is not an error.
    void log_tagged(int level, const char* tag, Seconds sim_time, const std::string& message);
    int level() const { return level_; }

  private:
    std::ostream* sink_ = nullptr;
    std::unique_ptr<std::ofstream> owned_;
    int level_ = 0;
};

}  // namespace schedsim

#endif
