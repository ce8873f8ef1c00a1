#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace segmental::csv {

// Shortest round-trip decimal form; keeps CSV output byte-deterministic.
inline std::string num(double v) {
  std::string best;
  for (int prec = 1; prec <= 17; ++prec) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == v && (best.empty() || std::char_traits<char>::length(buf) <
                                          best.size()))
      best = buf;
  }
  if (best.empty()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    best = buf;
  }
  return best;
}

inline std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

inline double to_double(const std::string& s) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad numeric field: '" + s + "'");
  }
}

}  // namespace segmental::csv
