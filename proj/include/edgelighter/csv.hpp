// Trace and summary CSV serialization. Outputs are byte-deterministic given
// their inputs: fixed "%.17g" float formatting and no timestamps (run
// metadata lives in a separate manifest file).
#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "edgelighter/experiments.hpp"
#include "edgelighter/trace.hpp"

namespace edgelighter {

inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// Schema: step,correctness,cover_rate[,community_1..K]
inline std::string trace_csv_string(const std::vector<TraceRecord>& records) {
    if (records.empty()) throw std::invalid_argument("trace csv: empty trace");
    const std::size_t communities = records.front().per_community.size();
    std::string out = "step,correctness,cover_rate";
    for (std::size_t k = 1; k <= communities; ++k) out += ",community_" + std::to_string(k);
    out += "\n";
    for (const TraceRecord& r : records) {
        if (r.per_community.size() != communities)
            throw std::invalid_argument("trace csv: ragged per-community columns");
        out += std::to_string(r.step);
        out += ",";
        out += format_double(r.correctness);
        out += ",";
        out += format_double(r.cover_rate);
        for (double c : r.per_community) {
            out += ",";
            out += format_double(c);
        }
        out += "\n";
    }
    return out;
}

inline void write_trace_csv(const std::vector<TraceRecord>& records, const std::string& path) {
    std::string body = trace_csv_string(records);  // validate before touching the file
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_trace_csv: cannot open " + path);
    out << body;
    if (!out) throw std::runtime_error("write_trace_csv: write failed for " + path);
}

inline std::vector<TraceRecord> read_trace_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_trace_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("read_trace_csv: empty file " + path);
    std::size_t columns = 1;
    for (char c : line)
        if (c == ',') ++columns;
    if (columns < 3) throw std::runtime_error("read_trace_csv: bad header in " + path);
    std::vector<TraceRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string cell;
        TraceRecord r;
        std::getline(ss, cell, ',');
        r.step = std::stoll(cell);
        std::getline(ss, cell, ',');
        r.correctness = std::stod(cell);
        std::getline(ss, cell, ',');
        r.cover_rate = std::stod(cell);
        for (std::size_t k = 3; k < columns; ++k) {
            if (!std::getline(ss, cell, ','))
                throw std::runtime_error("read_trace_csv: short row in " + path);
            r.per_community.push_back(std::stod(cell));
        }
        records.push_back(std::move(r));
    }
    if (records.empty()) throw std::runtime_error("read_trace_csv: no data rows in " + path);
    return records;
}

// One summary per sweep: per-replicate detections plus median aggregate rows.
inline std::string summary_csv_string(const SweepResult& result) {
    std::string out = "n,beta,scope,replicate,t_hat\n";
    for (const DetectionRow& row : result.detections) {
        out += std::to_string(row.n) + "," + format_double(row.beta) + "," + row.scope + "," +
               std::to_string(row.replicate) + ",";
        out += row.t_hat ? std::to_string(*row.t_hat) : std::string("none");
        out += "\n";
    }
    for (const MedianRow& med : result.medians) {
        out += std::to_string(med.n) + "," + format_double(med.beta) + "," + med.scope + ",median,";
        out += med.median_t_hat ? format_double(*med.median_t_hat) : std::string("none");
        out += "\n";
    }
    return out;
}

inline void write_summary_csv(const SweepResult& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_summary_csv: cannot open " + path);
    out << summary_csv_string(result);
    if (!out) throw std::runtime_error("write_summary_csv: write failed for " + path);
}

// Generic numeric table writer for matrix/curve dumps.
inline void write_table_csv(const std::string& header,
                            const std::vector<std::vector<double>>& rows,
                            const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_table_csv: cannot open " + path);
    out << header << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << format_double(row[i]);
        out << "\n";
    }
    if (!out) throw std::runtime_error("write_table_csv: write failed for " + path);
}

}  // namespace edgelighter
