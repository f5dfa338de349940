#include "schedsim/debug_log.hpp"

#include "schedsim/errors.hpp"

namespace schedsim {

namespace {
const char* tag_for(int level) {
    switch (level) {
        case kLogError: return "error";
        case kLogWarn: return "warn";
        case kLogDecision: return "sched";
        case kLogEvent: return "event";
        default: return "rl";
    }
}
}  // namespace

DebugLog::DebugLog(std::ostream& sink, int level) : sink_(&sink), level_(level) {}

DebugLog DebugLog::open_file(const std::string& path, int level) {
    auto file = std::make_unique<std::ofstream>(path, std::ios::trunc);
    if (!*file) throw IoError("cannot open debug log: " + path);
    DebugLog log;
    log.sink_ = file.get();
    log.owned_ = std::move(file);
    log.level_ = level;
    return log;
}

void DebugLog::log(int level, Seconds sim_time, const std::string& message) {
    log_tagged(level, tag_for(level), sim_time, message);
}

void DebugLog::log_tagged(int level, const char* tag, Seconds sim_time,
                          const std::string& message) {
    if (!sink_ || level > level_) return;
    *sink_ << "[t=" << sim_time << "] [" << tag << "] " << message << '\n';
    if (!*sink_) throw IoError("write to debug log failed");
}

}  // namespace schedsim
