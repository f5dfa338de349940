#ifndef SCHEDSIM_RESULT_WRITER_HPP
#define SCHEDSIM_RESULT_WRITER_HPP

#include <fstream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "schedsim/job.hpp"

namespace schedsim {

// One finished job per line:
//   job_id;submit;start;end;requested_nodes;requested_time;actual_runtime
// Enough to recompute every scheduling metric offline. The format is the
// same for every policy so runs can be compared file against file.
std::string format_result_line(const Job& job);

// Inverse of format_result_line, for offline metric recomputation.
Job parse_result_line(const std::string& line);

// Streams finished jobs out in nondecreasing end-time order with job-id
// tie-break. The engine hands jobs over in event order; records sharing an
// end time are held back and flushed sorted once the clock moves past them,
// so memory stays bounded by the number of simultaneous completions.
class ResultWriter {
  public:
    explicit ResultWriter(std::ostream& sink);  // borrowed sink
    static ResultWriter open_file(const std::string& path);
    ~ResultWriter();

    ResultWriter(ResultWriter&&) = default;
    ResultWriter& operator=(ResultWriter&&) = default;

    void append(const Job& finished);
    void flush();  // drains the same-end-time buffer; called by the engine at end of run

    std::size_t lines_written() const { return lines_written_; }

  private:
    void emit_pending();

    std::ostream* sink_ = nullptr;
    std::unique_ptr<std::ofstream> owned_;
    std::vector<Job> pending_;  // all share pending_end_
    Seconds pending_end_ = 0;
    std::size_t lines_written_ = 0;
};

}  // namespace schedsim

#endif
