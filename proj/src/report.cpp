#include "relqi/report.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <iomanip>
#include <istream>
#include <ostream>

#include "relqi/errors.hpp"

namespace relqi {

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    if (quoted) throw InvalidArgument("csv: unterminated quote");
    fields.push_back(std::move(cur));
    return fields;
}

double parse_number(const std::string& s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw InvalidArgument("csv: bad number '" + s + "'");
    return v;
}

std::size_t selector_width(const std::vector<PartitionSpec>& ps, std::size_t floor) {
    std::size_t w = floor;
    for (const auto& p : ps) w = std::max(w, p.to_string().size());
    return w;
}

}  // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string to_string(Verdict v) { return v == Verdict::invariant ? "invariant" : "varies"; }

nlohmann::json to_json(const EntropyReport& report) {
    nlohmann::json parts = nlohmann::json::array();
    for (const auto& e : report.entries) {
        parts.push_back({{"partition", e.partition.to_string()}, {"entropy", e.entropy}});
    }
    return {{"partitions", parts}, {"sum", report.sum}};
}

nlohmann::json to_json(const ScanReport& r) {
    return {{"partition", r.partition.to_string()},
            {"samples", r.samples},
            {"baseline", r.baseline},
            {"max_deviation", r.max_deviation},
            {"tolerance", r.tolerance},
            {"verdict", to_string(r.verdict)}};
}

nlohmann::json to_json(const std::vector<ScanReport>& reports) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : reports) out.push_back(to_json(r));
    return {{"scans", out}};
}

nlohmann::json to_json(const SweepTable& table) {
    nlohmann::json names = nlohmann::json::array();
    for (const auto& p : table.partitions) names.push_back(p.to_string());
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        rows.push_back({{"rapidity", row.rapidity}, {"entropies", row.entropies}, {"sum", row.sum}});
    }
    return {{"partitions", names}, {"rows", rows}};
}

nlohmann::json to_json(const std::vector<CheckResult>& checks) {
    nlohmann::json out = nlohmann::json::array();
    bool all = true;
    for (const auto& c : checks) {
        out.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        all = all && c.passed;
    }
    return {{"checks", out}, {"passed", all}};
}

void write_text(std::ostream& out, const EntropyReport& report) {
    std::vector<PartitionSpec> ps;
    for (const auto& e : report.entries) ps.push_back(e.partition);
    const auto w = static_cast<int>(selector_width(ps, 9));
    out << std::left << std::setw(w) << "partition" << "  entropy\n";
    for (const auto& e : report.entries) {
        out << std::left << std::setw(w) << e.partition.to_string() << "  " << format_number(e.entropy) << '\n';
    }
    out << std::left << std::setw(w) << "sum" << "  " << format_number(report.sum) << '\n';
}

void write_text(std::ostream& out, const std::vector<ScanReport>& reports) {
    std::vector<PartitionSpec> ps;
    for (const auto& r : reports) ps.push_back(r.partition);
    const auto w = static_cast<int>(selector_width(ps, 9));
    out << std::left << std::setw(w) << "partition" << "  " << std::setw(8) << "samples" << "  " << std::setw(24)
        << "baseline" << "  " << std::setw(24) << "max_deviation" << "  verdict\n";
    for (const auto& r : reports) {
        out << std::left << std::setw(w) << r.partition.to_string() << "  " << std::setw(8) << r.samples << "  "
            << std::setw(24) << format_number(r.baseline) << "  " << std::setw(24)
            << format_number(r.max_deviation) << "  " << to_string(r.verdict) << '\n';
    }
}

void write_text(std::ostream& out, const SweepTable& table) {
    const int w = 24;
    out << std::left << std::setw(w) << "rapidity";
    for (const auto& p : table.partitions) {
        out << "  " << std::setw(std::max<int>(w, static_cast<int>(p.to_string().size()))) << p.to_string();
    }
    out << "  sum\n";
    for (const auto& row : table.rows) {
        out << std::left << std::setw(w) << format_number(row.rapidity);
        for (std::size_t k = 0; k < row.entropies.size(); ++k) {
            const int cw = std::max<int>(w, static_cast<int>(table.partitions[k].to_string().size()));
            out << "  " << std::setw(cw) << format_number(row.entropies[k]);
        }
        out << "  " << format_number(row.sum) << '\n';
    }
}

void write_csv(std::ostream& out, const EntropyReport& report) {
    out << "partition,entropy\n";
    for (const auto& e : report.entries) {
        out << csv_field(e.partition.to_string()) << ',' << format_number(e.entropy) << '\n';
    }
    out << "sum," << format_number(report.sum) << '\n';
}

void write_csv(std::ostream& out, const std::vector<ScanReport>& reports) {
    out << "partition,samples,baseline,max_deviation,tolerance,verdict\n";
    for (const auto& r : reports) {
        out << csv_field(r.partition.to_string()) << ',' << r.samples << ',' << format_number(r.baseline) << ','
            << format_number(r.max_deviation) << ',' << format_number(r.tolerance) << ',' << to_string(r.verdict)
            << '\n';
    }
}

void write_csv(std::ostream& out, const SweepTable& table) {
    out << "rapidity";
    for (const auto& p : table.partitions) out << ',' << csv_field(p.to_string());
    out << ",sum\n";
    for (const auto& row : table.rows) {
        out << format_number(row.rapidity);
        for (double e : row.entropies) out << ',' << format_number(e);
        out << ',' << format_number(row.sum) << '\n';
    }
}

SweepTable read_sweep_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw InvalidArgument("csv: missing header");
    const auto header = split_csv_line(line);
    if (header.size() < 2 || header.front() != "rapidity" || header.back() != "sum") {
        throw InvalidArgument("csv: header must start with 'rapidity' and end with 'sum'");
    }
    SweepTable table;
    for (std::size_t k = 1; k + 1 < header.size(); ++k) table.partitions.push_back(PartitionSpec::parse(header[k]));
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size()) throw InvalidArgument("csv: row has the wrong number of fields");
        SweepRow row;
        row.rapidity = parse_number(fields.front());
        for (std::size_t k = 1; k + 1 < fields.size(); ++k) row.entropies.push_back(parse_number(fields[k]));
        row.sum = parse_number(fields.back());
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace relqi
