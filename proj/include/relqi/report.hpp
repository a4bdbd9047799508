#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "relqi/density.hpp"
#include "relqi/harness.hpp"

namespace relqi {

/// Decimal with 17 significant digits; parses back to the same double.
std::string format_number(double v);

std::string to_string(Verdict v);

nlohmann::json to_json(const EntropyReport& report);
nlohmann::json to_json(const ScanReport& report);
nlohmann::json to_json(const std::vector<ScanReport>& reports);
nlohmann::json to_json(const SweepTable& table);
nlohmann::json to_json(const std::vector<CheckResult>& checks);

void write_text(std::ostream& out, const EntropyReport& report);
void write_text(std::ostream& out, const std::vector<ScanReport>& reports);
void write_text(std::ostream& out, const SweepTable& table);

void write_csv(std::ostream& out, const EntropyReport& report);
void write_csv(std::ostream& out, const std::vector<ScanReport>& reports);

/// Header: rapidity, one column per partition named by its selector, sum.
void write_csv(std::ostream& out, const SweepTable& table);

/// Inverse of write_csv for sweep tables. Throws InvalidArgument on malformed input.
SweepTable read_sweep_csv(std::istream& in);

}  // namespace relqi
