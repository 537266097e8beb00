#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "slopecert/rational.hpp"

namespace slopecert::cli {

enum ExitCode : int {
  kSuccess = 0,
  kFailure = 1,
  kMinimalPolystable = 2,
  kRejected = 3,
};

/// Runs one command line (without the program name). Output goes to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct ScanRow {
  Rational t;
  Rational lambda_star;
  Rational df_min;
};

/// L = Z + tF on F_n for t = n + range * k / grid, k = 1..grid. Each row holds
/// the smallest sampled DF and where it occurs. Rows come back in grid order.
std::vector<ScanRow> scan_grid(unsigned n, const Rational& range, unsigned grid,
                               unsigned lambda_depth);

std::string scan_csv(const std::vector<ScanRow>& rows);

}  // namespace slopecert::cli
