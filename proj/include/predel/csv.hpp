#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "predel/sample.hpp"

namespace predel {

/// A parsed `date,y,x` series. Rows are kept in file order; timestamps are
/// opaque labels that were checked to be strictly increasing (numerically
/// when every one parses as an integer, lexicographically otherwise, which
/// is correct for ISO-8601 dates).
struct SeriesFile {
  std::vector<std::string> timestamps;
  std::vector<double> y;
  std::vector<double> x;
};

namespace detail {

inline std::string trim(std::string v) {
  const auto notspace = [](unsigned char c) { return std::isspace(c) == 0; };
  while (!v.empty() && !notspace(static_cast<unsigned char>(v.back()))) v.pop_back();
  std::size_t i = 0;
  while (i < v.size() && !notspace(static_cast<unsigned char>(v[i]))) ++i;
  return v.substr(i);
}

inline bool parse_double(const std::string& field, double& out) {
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && !field.empty();
}

inline bool parse_int(const std::string& field, long long& out) {
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && !field.empty();
}

}  // namespace detail

/// @brief Loads a comma-separated series with header `date,y,x`.
///
/// Every row must have exactly three fields with finite numeric y and x;
/// timestamps must be strictly increasing. Violations throw
/// std::invalid_argument naming the offending 1-based file line.
inline SeriesFile load_series(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  const auto fail = [&lineno](const std::string& msg) {
    throw std::invalid_argument("series line " + std::to_string(lineno) + ": " + msg);
  };

  if (!std::getline(in, line)) {
    lineno = 1;
    fail("missing header (expected `date,y,x`)");
  }
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  {
    std::string header = detail::trim(line);
    for (char& c : header)
      c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    std::string squeezed;
    for (char c : header)
      if (!std::isspace(static_cast<unsigned char>(c))) squeezed += c;
    if (squeezed != "date,y,x") fail("header must be `date,y,x`, got `" + line + "`");
  }

  SeriesFile out;
  bool all_numeric_dates = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty()) fail("blank row");
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const auto comma = line.find(',', start);
      fields.push_back(detail::trim(line.substr(start, comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 3)
      fail("expected 3 fields, got " + std::to_string(fields.size()));
    if (fields[0].empty()) fail("empty date");
    double yv, xv;
    if (!detail::parse_double(fields[1], yv) || !std::isfinite(yv))
      fail("y value '" + fields[1] + "' is not a finite number");
    if (!detail::parse_double(fields[2], xv) || !std::isfinite(xv))
      fail("x value '" + fields[2] + "' is not a finite number");
    long long ignored;
    all_numeric_dates = all_numeric_dates && detail::parse_int(fields[0], ignored);
    out.timestamps.push_back(fields[0]);
    out.y.push_back(yv);
    out.x.push_back(xv);
  }
  if (out.timestamps.size() < 2) {
    ++lineno;
    fail("need at least 2 data rows");
  }

  for (std::size_t i = 1; i < out.timestamps.size(); ++i) {
    bool increasing;
    if (all_numeric_dates) {
      long long prev, cur;
      detail::parse_int(out.timestamps[i - 1], prev);
      detail::parse_int(out.timestamps[i], cur);
      increasing = prev < cur;
    } else {
      increasing = out.timestamps[i - 1] < out.timestamps[i];
    }
    if (!increasing) {
      lineno = i + 2;  // + header + 1-based
      fail("timestamp '" + out.timestamps[i] + "' does not increase over '" +
           out.timestamps[i - 1] + "'");
    }
  }
  return out;
}

/// @brief Aligns a series into a regression sample.
///
/// The x column supplies all N predictor levels X_0..X_{N-1}; responses are
/// the y column from the second row on (Y_t pairs with the previous row's
/// x), so the first row's y value never enters any computation.
inline RegressionSample to_regression_sample(const SeriesFile& f) {
  if (f.x.size() < 2)
    throw std::invalid_argument("to_regression_sample: need at least 2 rows");
  RegressionSample s;
  s.x = f.x;
  s.y.assign(f.y.begin() + 1, f.y.end());
  return s;
}

}  // namespace predel
