#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fbic::tools {

/// Floating values are written with 9 significant digits.
std::string format_number(double value);

/// RFC 4180 table: header row first, CRLF line ends, fields quoted only when
/// they contain a comma, quote or line break.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::vector<std::string> fields);

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  void write(std::ostream& out) const;
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace fbic::tools
