#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "fbic/egc.hpp"

namespace fbic::egc {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw InputError("spec line " + std::to_string(line) + ": " + what);
}

// Fills one table cell, refusing duplicates.
void assign(std::vector<int>& table, std::vector<bool>& seen, std::size_t index, int value, int line,
            const std::string& name) {
  if (seen[index]) fail(line, "duplicate entry for " + name);
  seen[index] = true;
  table[index] = value;
}

int read_index(std::istringstream& in, int size, int line, const char* what) {
  int v = 0;
  if (!(in >> v)) fail(line, std::string("missing or non-integer ") + what);
  if (v < 0 || v >= size) {
    fail(line, std::string(what) + " = " + std::to_string(v) + " outside [0, " + std::to_string(size) + ")");
  }
  return v;
}

}  // namespace

DetChannelSpec read_spec(std::istream& in) {
  DetChannelSpec s;
  bool have_header = false;
  std::vector<bool> seen_g1, seen_g2, seen_f1, seen_f2;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream fields(raw);
    std::string key;
    if (!(fields >> key)) continue;

    if (key == "egc") {
      if (have_header) fail(line, "second header line");
      if (!(fields >> s.x1_size >> s.x2_size >> s.v1_size >> s.v2_size >> s.y1_size >> s.y2_size)) {
        fail(line, "header needs six alphabet sizes: |X1| |X2| |V1| |V2| |Y1| |Y2|");
      }
      for (int size : {s.x1_size, s.x2_size, s.v1_size, s.v2_size, s.y1_size, s.y2_size}) {
        if (size < 1 || size > 4096) fail(line, "alphabet sizes must lie in [1, 4096]");
      }
      have_header = true;
      s.g1.assign(static_cast<std::size_t>(s.x1_size), 0);
      s.g2.assign(static_cast<std::size_t>(s.x2_size), 0);
      s.f1.assign(static_cast<std::size_t>(s.x1_size * s.v2_size), 0);
      s.f2.assign(static_cast<std::size_t>(s.x2_size * s.v1_size), 0);
      seen_g1.assign(s.g1.size(), false);
      seen_g2.assign(s.g2.size(), false);
      seen_f1.assign(s.f1.size(), false);
      seen_f2.assign(s.f2.size(), false);
      continue;
    }
    if (!have_header) fail(line, "expected header 'egc <|X1|> <|X2|> <|V1|> <|V2|> <|Y1|> <|Y2|>' first");

    if (key == "g1") {
      const int x = read_index(fields, s.x1_size, line, "x1");
      const int v = read_index(fields, s.v1_size, line, "v1");
      assign(s.g1, seen_g1, static_cast<std::size_t>(x), v, line, "g1 x1=" + std::to_string(x));
    } else if (key == "g2") {
      const int x = read_index(fields, s.x2_size, line, "x2");
      const int v = read_index(fields, s.v2_size, line, "v2");
      assign(s.g2, seen_g2, static_cast<std::size_t>(x), v, line, "g2 x2=" + std::to_string(x));
    } else if (key == "f1") {
      const int x = read_index(fields, s.x1_size, line, "x1");
      const int v = read_index(fields, s.v2_size, line, "v2");
      const int y = read_index(fields, s.y1_size, line, "y1");
      assign(s.f1, seen_f1, static_cast<std::size_t>(x * s.v2_size + v), y, line,
             "f1 x1=" + std::to_string(x) + " v2=" + std::to_string(v));
    } else if (key == "f2") {
      const int x = read_index(fields, s.x2_size, line, "x2");
      const int v = read_index(fields, s.v1_size, line, "v1");
      const int y = read_index(fields, s.y2_size, line, "y2");
      assign(s.f2, seen_f2, static_cast<std::size_t>(x * s.v1_size + v), y, line,
             "f2 x2=" + std::to_string(x) + " v1=" + std::to_string(v));
    } else {
      fail(line, "unknown record '" + key + "'");
    }
    std::string extra;
    if (fields >> extra) fail(line, "trailing field '" + extra + "'");
  }
  if (!have_header) throw InputError("spec is empty: no 'egc' header line");

  auto missing = [](const std::vector<bool>& seen, const char* name) {
    for (std::size_t i = 0; i < seen.size(); ++i) {
      if (!seen[i]) throw InputError(std::string("spec is missing ") + name + " entry #" + std::to_string(i));
    }
  };
  missing(seen_g1, "g1");
  missing(seen_g2, "g2");
  missing(seen_f1, "f1");
  missing(seen_f2, "f2");
  s.validate();
  return s;
}

void write_spec(std::ostream& out, const DetChannelSpec& s) {
  out << "egc " << s.x1_size << ' ' << s.x2_size << ' ' << s.v1_size << ' ' << s.v2_size << ' ' << s.y1_size
      << ' ' << s.y2_size << '\n';
  for (int x = 0; x < s.x1_size; ++x) out << "g1 " << x << ' ' << s.g1[static_cast<std::size_t>(x)] << '\n';
  for (int x = 0; x < s.x2_size; ++x) out << "g2 " << x << ' ' << s.g2[static_cast<std::size_t>(x)] << '\n';
  for (int x = 0; x < s.x1_size; ++x) {
    for (int v = 0; v < s.v2_size; ++v) out << "f1 " << x << ' ' << v << ' ' << s.f1_at(x, v) << '\n';
  }
  for (int x = 0; x < s.x2_size; ++x) {
    for (int v = 0; v < s.v1_size; ++v) out << "f2 " << x << ' ' << v << ' ' << s.f2_at(x, v) << '\n';
  }
}

}  // namespace fbic::egc
