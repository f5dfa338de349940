#include "schedsim/result_writer.hpp"

#include <algorithm>
#include <sstream>

#include "schedsim/errors.hpp"

namespace schedsim {

std::string format_result_line(const Job& job) {
    std::ostringstream os;
    os << job.record.job_id << ';' << job.record.submit_time << ';' << *job.start_time << ';'
       << *job.end_time << ';' << job.record.requested_nodes << ';' << job.record.requested_time
       << ';' << job.record.actual_runtime;
    return os.str();
}

Job parse_result_line(const std::string& line) {
    std::istringstream is(line);
    long long v[7];
    char sep = ';';
    for (int i = 0; i < 7; ++i) {
        if (i > 0 && (!(is >> sep) || sep != ';'))
            throw IoError("malformed result line: " + line);
        if (!(is >> v[i])) throw IoError("malformed result line: " + line);
    }
    Job job;
    job.record.job_id = v[0];
    job.record.submit_time = v[1];
    job.start_time = v[2];
    job.end_time = v[3];
    job.record.requested_nodes = static_cast<int>(v[4]);
    job.record.requested_time = v[5];
    job.record.actual_runtime = v[6];
    job.status = JobStatus::Finished;
    return job;
}

ResultWriter::ResultWriter(std::ostream& sink) : sink_(&sink) {}

ResultWriter ResultWriter::open_file(const std::string& path) {
    auto file = std::make_unique<std::ofstream>(path, std::ios::trunc);
    if (!*file) throw IoError("cannot open results file: " + path);
    ResultWriter w(*file);
    w.owned_ = std::move(file);
    w.sink_ = w.owned_.get();
    return w;
}

ResultWriter::~ResultWriter() {
    try {
        flush();
    } catch (...) {
        // a failed flush in a destructor has nowhere to go
    }
}

void ResultWriter::emit_pending() {
    std::sort(pending_.begin(), pending_.end(),
              [](const Job& a, const Job& b) { return a.record.job_id < b.record.job_id; });
    for (const Job& job : pending_) {
        *sink_ << format_result_line(job) << '\n';
        ++lines_written_;
    }
    if (!*sink_) throw IoError("write to results file failed");
    pending_.clear();
}

void ResultWriter::append(const Job& finished) {
    if (finished.status != JobStatus::Finished || !finished.end_time)
        throw InternalError("result record for a job that is not finished: " +
                            std::to_string(finished.record.job_id));
    if (!pending_.empty() && *finished.end_time < pending_end_)
        throw InternalError("finished jobs arrived out of end-time order");
    if (!pending_.empty() && *finished.end_time > pending_end_) emit_pending();
    pending_end_ = *finished.end_time;
    pending_.push_back(finished);
}

void ResultWriter::flush() {
    if (!pending_.empty()) emit_pending();
    if (sink_) sink_->flush();
}

}  // namespace schedsim
