#include "cli/csv_input.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string_view>
#include <vector>

namespace projcov::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_number(std::string_view cell, double& out) {
  cell = trim(cell);
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  if (cell.empty()) return false;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
  return ec == std::errc() && ptr == cell.data() + cell.size();
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

}  // namespace

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path + ": cannot open file");

  CsvTable table;
  std::vector<double> values;
  std::size_t width = 0;
  std::size_t rows = 0;
  std::size_t line_no = 0;
  std::string line;
  std::vector<double> row;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    row.assign(cells.size(), 0.0);
    std::size_t bad = cells.size();
    for (std::size_t c = 0; c < cells.size() && bad == cells.size(); ++c) {
      if (!parse_number(cells[c], row[c])) bad = c;
    }
    if (bad != cells.size()) {
      if (rows == 0 && !table.had_header) {
        table.had_header = true;
        width = cells.size();
        continue;
      }
      throw DataError(path + ":" + std::to_string(line_no) + ": non-numeric cell in column " + std::to_string(bad + 1) +
                      ": '" + std::string(trim(cells[bad])) + "'");
    }
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (!std::isfinite(row[c])) {
        throw DataError(path + ":" + std::to_string(line_no) + ": non-finite value in column " + std::to_string(c + 1));
      }
    }
    if (width == 0) width = cells.size();
    if (cells.size() != width) {
      throw DataError(path + ":" + std::to_string(line_no) + ": expected " + std::to_string(width) + " columns, got " +
                      std::to_string(cells.size()));
    }
    values.insert(values.end(), row.begin(), row.end());
    ++rows;
  }
  if (rows == 0) throw DataError(path + ": no data rows");
  table.values = Eigen::Map<const DataMatrix>(values.data(), static_cast<Eigen::Index>(rows),
                                              static_cast<Eigen::Index>(width));
  return table;
}

DataMatrix read_observations(const std::string& path) {
  CsvTable table = read_csv(path);
  if (table.values.rows() < 2) {
    throw DataError(path + ": need at least 2 observations, got " + std::to_string(table.values.rows()));
  }
  return std::move(table.values);
}

linalg::SymMatrix read_sym_matrix(const std::string& path) {
  const CsvTable table = read_csv(path);
  if (table.values.rows() != table.values.cols()) {
    throw DataError(path + ": covariance must be square, got " + std::to_string(table.values.rows()) + "x" +
                    std::to_string(table.values.cols()));
  }
  return linalg::SymMatrix(linalg::Dense(table.values));
}

}  // namespace projcov::cli
