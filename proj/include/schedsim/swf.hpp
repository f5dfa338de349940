#ifndef SCHEDSIM_SWF_HPP
#define SCHEDSIM_SWF_HPP

#include <deque>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "schedsim/job.hpp"

namespace schedsim {

// Standard Workload Format: `;`-prefixed header comments, then one job per
// line with 18 whitespace-separated numeric fields:
//
//    1 job number          7 used memory        13 group id
//    2 submit time         8 requested procs    14 executable id
//    3 wait time           9 requested time     15 queue id
//    4 run time           10 requested memory   16 partition id
//    5 allocated procs    11 completed status   17 preceding job
//    6 average cpu time   12 user id            18 think time
//
// Only fields 1, 2, 4, 5, 8 and 9 are consumed here. Missing estimates are
// common in archive traces, hence the 8->5 and 9->4 fallbacks.

struct SwfComment {};
struct SwfMalformed {
    std::size_t line_no;
    std::string reason;
};

using ParsedLine = std::variant<JobRecord, SwfComment, SwfMalformed>;

// Classifies one trace line. Never throws: bad rows become SwfMalformed so
// that real traces with sentinel -1 rows keep parsing.
ParsedLine parse_swf_line(std::string_view line, std::size_t line_no);

// Renders a record back to an 18-field SWF line; unused fields are -1.
std::string to_swf_line(const JobRecord& rec);

struct ClusterConfig {
    int total_nodes = 0;
    std::string name;
};

// Reads `; MaxNodes: N` (or `; MaxProcs: N` when MaxNodes is absent) from a
// node-structure file written in SWF header syntax.
ClusterConfig parse_node_structure(const std::string& path);

// Streaming cursor over a trace file. Jobs come out in nondecreasing
// submit order; at most `window` parsed-but-unconsumed records are buffered
// regardless of trace length. Single reader, not shareable across threads.
class TraceReader {
  public:
    using WarnFn = std::function<void(std::size_t line_no, const std::string& reason)>;

    TraceReader(const std::string& path, std::size_t window, WarnFn on_warn = nullptr);

    const JobRecord* peek();               // nullptr at end of trace
    std::optional<JobRecord> next();

    std::size_t malformed_count() const { return malformed_count_; }
    std::size_t comment_count() const { return comment_count_; }
    std::size_t record_count() const { return record_count_; }
    // High-water mark of buffered records, for the streaming-bound contract.
    std::size_t peak_buffered() const { return peak_buffered_; }

  private:
    void refill();

    std::ifstream in_;
    std::string path_;
    std::size_t window_;
    WarnFn on_warn_;
    std::deque<JobRecord> buffer_;
    std::size_t line_no_ = 0;
    Seconds last_submit_ = -1;
    bool eof_ = false;
    std::size_t malformed_count_ = 0;
    std::size_t comment_count_ = 0;
    std::size_t record_count_ = 0;
    std::size_t peak_buffered_ = 0;
};

}  // namespace schedsim

#endif
