#include "jmfar/csv_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "jmfar/errors.hpp"

namespace jmfar {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_double(const std::string& s, const std::string& context) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw FormatError("bad numeric field '" + s + "' in " + context);
    }
}

std::vector<std::vector<std::string>> read_rows(const std::string& path, std::size_t min_fields) {
    std::ifstream is(path);
    if (!is) throw FormatError("cannot open file: " + path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_csv_line(line);
        if (first) {  // header
            first = false;
            continue;
        }
        if (fields.size() < min_fields) throw FormatError("short row in " + path);
        rows.push_back(std::move(fields));
    }
    if (first) throw FormatError("missing header in " + path);
    return rows;
}

// %.17g round-trips doubles and keeps output byte-stable.
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::vector<ActivityBlock> read_block_csv(const std::string& path) {
    std::vector<ActivityBlock> blocks;
    for (const auto& row : read_rows(path, 3)) {
        ActivityBlock b;
        b.start_s = parse_double(row[0], path);
        b.end_s = parse_double(row[1], path);
        b.label = activity_from_string(row[2]);
        if (b.end_s <= b.start_s) throw FormatError("empty or inverted block in " + path);
        blocks.push_back(b);
    }
    return blocks;
}

void write_block_csv(const std::string& path, std::span<const ActivityBlock> blocks) {
    std::ofstream os(path);
    if (!os) throw FormatError("cannot open file for writing: " + path);
    os << "start_s,end_s,label\n";
    for (const ActivityBlock& b : blocks)
        os << fmt(b.start_s) << ',' << fmt(b.end_s) << ',' << to_string(b.label) << '\n';
    if (!os) throw FormatError("failed writing " + path);
}

std::vector<JmEvent> read_event_csv(const std::string& path) {
    std::vector<JmEvent> events;
    for (const auto& row : read_rows(path, 3)) {
        JmEvent e;
        e.timestamp_s = parse_double(row[0], path);
        e.amplitude = parse_double(row[1], path);
        e.duration_s = parse_double(row[2], path);
        if (!events.empty() && e.timestamp_s <= events.back().timestamp_s)
            throw FormatError("event timestamps not increasing in " + path);
        events.push_back(e);
    }
    return events;
}

void write_event_csv(const std::string& path, std::span<const JmEvent> events) {
    std::ofstream os(path);
    if (!os) throw FormatError("cannot open file for writing: " + path);
    os << "timestamp_s,amplitude,duration_s\n";
    for (const JmEvent& e : events)
        os << fmt(e.timestamp_s) << ',' << fmt(e.amplitude) << ',' << fmt(e.duration_s) << '\n';
    if (!os) throw FormatError("failed writing " + path);
}

std::vector<FeatureVector> read_feature_csv(const std::string& path) {
    std::vector<FeatureVector> out;
    for (const auto& row : read_rows(path, 2 + kNumFeatures)) {
        FeatureVector fv;
        fv.segment_start_s = parse_double(row[0], path);
        for (int i = 0; i < kNumFeatures; ++i) {
            fv.values[i] = parse_double(row[1 + i], path);
            fv.mask[i] = true;  // stored vectors always carry all 21 slots
        }
        fv.flags = static_cast<uint32_t>(parse_double(row[1 + kNumFeatures], path));
        out.push_back(fv);
    }
    return out;
}

void write_feature_csv(const std::string& path, std::span<const FeatureVector> features) {
    std::ofstream os(path);
    if (!os) throw FormatError("cannot open file for writing: " + path);
    os << "segment_start_s";
    for (int i = 0; i < kNumFeatures; ++i) os << ',' << feature_name(i);
    os << ",flags\n";
    for (const FeatureVector& fv : features) {
        os << fmt(fv.segment_start_s);
        for (int i = 0; i < kNumFeatures; ++i) os << ',' << fmt(fv.values[i]);
        os << ',' << fv.flags << '\n';
    }
    if (!os) throw FormatError("failed writing " + path);
}

}  // namespace jmfar
