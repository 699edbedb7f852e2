#include "fbic/tools/csv.hpp"

#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace fbic::tools {

std::string format_number(double value) { return fmt::format("{:.9g}", value); }

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> fields) {
  if (fields.size() != header_.size()) {
    throw std::invalid_argument("CSV row has " + std::to_string(fields.size()) + " fields, header has " +
                                std::to_string(header_.size()));
  }
  rows_.push_back(std::move(fields));
}

namespace {

void write_field(std::ostream& out, const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) {
    out << field;
    return;
  }
  out << '"';
  for (char c : field) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

void write_record(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i != 0) out << ',';
    write_field(out, fields[i]);
  }
  out << "\r\n";
}

}  // namespace

void CsvTable::write(std::ostream& out) const {
  write_record(out, header_);
  for (const auto& r : rows_) write_record(out, r);
}

std::string CsvTable::str() const {
  std::ostringstream s;
  write(s);
  return s.str();
}

}  // namespace fbic::tools
