#pragma once

#include "kipp/classify.hpp"
#include "kipp/curve.hpp"
#include "kipp/trimat.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace kipp::cli {

enum class InputMode { none, b, a, all_equal };

struct JobConfig {
  InputMode input = InputMode::none;
  std::vector<double> b;
  std::vector<double> a;
  double a0 = 0.0;
  std::size_t n = 0;

  std::size_t m = kDefaultGrid;
  double tol = kDefaultTol;
  std::string out;
  std::vector<std::string> formats;
  bool fit = false;

  // solve
  std::vector<std::string> fix;
  bool uv = false;
  int root = 3;
  std::vector<double> a3_range;

  // verify
  std::string check;
  std::size_t verify_n = 0;
  std::size_t trials = 100;

  /// Throws Error(invalid_config).
  void validate(bool needs_input) const;
  ReciprocalParams params() const;
  TridiagonalMatrix matrix() const;
  bool wants(const std::string& format) const;
};

/// Reads a JSON object with keys b, A, A0, n, m, tol, out, format, fit, fix,
/// uv, root, a3_range, check, trials.
JobConfig load_config(const std::string& path);

int cmd_classify(const JobConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_curve(const JobConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_solve(const JobConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_poly(const JobConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const JobConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command line, including the program name in argv[0].
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Output helpers, exposed for tests.
std::string csv_samples(const std::vector<CurveSample>& samples);
std::string svg_plot(const std::vector<CurveSample>& samples, std::size_t n,
                     const std::vector<std::optional<FitResult>>& fits);

}  // namespace kipp::cli
