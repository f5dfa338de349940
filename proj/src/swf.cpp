#include "schedsim/swf.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "schedsim/errors.hpp"

namespace schedsim {

namespace {

// SWF fields are integers in practice but a few archives emit "123.0".
// Returns false for anything that is not a finite number.
bool parse_field(std::string_view tok, Seconds& out) {
    std::int64_t iv = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), iv);
    if (ec == std::errc() && p == tok.data() + tok.size()) {
        out = iv;
        return true;
    }
    try {
        std::size_t used = 0;
        double dv = std::stod(std::string(tok), &used);
        if (used != tok.size() || !std::isfinite(dv)) return false;
        out = static_cast<Seconds>(std::llround(dv));
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> toks;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) toks.push_back(line.substr(start, i - start));
    }
    return toks;
}

}  // namespace

ParsedLine parse_swf_line(std::string_view line, std::size_t line_no) {
    std::size_t first = line.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && line[first] == ';') return SwfComment{};

    auto toks = split_ws(line);
    if (toks.empty()) return SwfMalformed{line_no, "empty line"};
    if (toks.size() < 18)
        return SwfMalformed{line_no, "expected 18 fields, got " + std::to_string(toks.size())};

    Seconds f[18];
    for (int i = 0; i < 18; ++i) {
        if (!parse_field(toks[i], f[i]))
            return SwfMalformed{line_no, "non-numeric field " + std::to_string(i + 1)};
    }

    JobRecord rec;
    rec.job_id = f[0];
    rec.submit_time = f[1];
    rec.actual_runtime = f[3];
    Seconds nodes = f[7] > 0 ? f[7] : f[4];
    Seconds req_time = f[8] > 0 ? f[8] : f[3];

    if (rec.job_id <= 0) return SwfMalformed{line_no, "job id must be positive"};
    if (rec.submit_time < 0) return SwfMalformed{line_no, "negative submit time"};
    if (rec.actual_runtime < 0) return SwfMalformed{line_no, "negative run time"};
    if (nodes <= 0) return SwfMalformed{line_no, "no usable processor count"};

    rec.requested_nodes = static_cast<int>(nodes);
    // A zero-runtime job with no estimate would otherwise break the
    // requested_time >= 1 invariant.
    rec.requested_time = req_time >= 1 ? req_time : 1;
    return rec;
}

std::string to_swf_line(const JobRecord& rec) {
    std::ostringstream os;
    os << rec.job_id << ' ' << rec.submit_time << " -1 " << rec.actual_runtime << ' '
       << rec.requested_nodes << " -1 -1 " << rec.requested_nodes << ' ' << rec.requested_time
       << " -1 1 -1 -1 -1 -1 -1 -1 -1";
    return os.str();
}

ClusterConfig parse_node_structure(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open node-structure file: " + path);

    std::optional<int> max_nodes;
    std::optional<int> max_procs;
    std::string line;
    while (std::getline(in, line)) {
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] != ';') continue;
        std::istringstream ls(line.substr(first + 1));
        std::string key;
        ls >> key;
        long long value = 0;
        if (key == "MaxNodes:" && (ls >> value)) max_nodes = static_cast<int>(value);
        if (key == "MaxProcs:" && (ls >> value)) max_procs = static_cast<int>(value);
    }

    ClusterConfig cfg;
    cfg.name = path;
    if (max_nodes)
        cfg.total_nodes = *max_nodes;
    else if (max_procs)
        cfg.total_nodes = *max_procs;
    else
        throw IoError("node-structure file lacks a MaxNodes/MaxProcs directive: " + path);
    if (cfg.total_nodes <= 0)
        throw IoError("node-structure file declares " + std::to_string(cfg.total_nodes) +
                          " nodes: " + path);
    return cfg;
}

TraceReader::TraceReader(const std::string& path, std::size_t window, WarnFn on_warn)
    : in_(path), path_(path), window_(window), on_warn_(std::move(on_warn)) {
    if (!in_) throw IoError("cannot open trace file: " + path);
    if (window_ < 1) throw ConfigError("trace window must be >= 1");
}

void TraceReader::refill() {
    std::string line;
    while (buffer_.size() < window_ && !eof_) {
        if (!std::getline(in_, line)) {
            eof_ = true;
            break;
        }
        ++line_no_;
        ParsedLine parsed = parse_swf_line(line, line_no_);
        if (std::holds_alternative<SwfComment>(parsed)) {
            ++comment_count_;
            continue;
        }
        if (auto* bad = std::get_if<SwfMalformed>(&parsed)) {
            ++malformed_count_;
            if (on_warn_) on_warn_(bad->line_no, bad->reason);
            continue;
        }
        const JobRecord& rec = std::get<JobRecord>(parsed);
        if (rec.submit_time < last_submit_)
            throw TraceError("trace not sorted by submit time: job " + std::to_string(rec.job_id) +
                             " at line " + std::to_string(line_no_) + " submits at " +
                             std::to_string(rec.submit_time) + " after " +
                             std::to_string(last_submit_));
        last_submit_ = rec.submit_time;
        ++record_count_;
        buffer_.push_back(rec);
        peak_buffered_ = std::max(peak_buffered_, buffer_.size());
    }
}

const JobRecord* TraceReader::peek() {
    if (buffer_.empty()) refill();
    return buffer_.empty() ? nullptr : &buffer_.front();
}

std::optional<JobRecord> TraceReader::next() {
    if (buffer_.empty()) refill();
    if (buffer_.empty()) return std::nullopt;
    JobRecord rec = buffer_.front();
    buffer_.pop_front();
    return rec;
}

}  // namespace schedsim
