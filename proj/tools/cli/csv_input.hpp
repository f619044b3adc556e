#pragma once

#include "projcov/errors.hpp"
#include "projcov/linalg.hpp"

#include <string>

namespace projcov::cli {

/// Bad input file: unreadable, ragged, non-numeric or too short.
class DataError : public Error {
public:
  using Error::Error;
};

struct CsvTable {
  DataMatrix values;  // rows are observations
  bool had_header = false;
};

/// Comma-separated numbers, one observation per line. A first row containing
/// any non-numeric cell is taken as a header. Blank lines are skipped.
CsvTable read_csv(const std::string& path);

/// read_csv plus the n >= 2 requirement for test input.
DataMatrix read_observations(const std::string& path);

/// A square symmetric matrix stored as CSV (no header expected, one is skipped).
linalg::SymMatrix read_sym_matrix(const std::string& path);

}  // namespace projcov::cli
