#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace hajlasz {

struct RunConfig {
  std::string space_path;
  std::string exponent_path;
  std::string function_path;
  std::string corpus_dir;
  std::size_t random_count = 0;
  std::uint64_t seed = 0;
  double s = 1.0;
  double u = 1.0;
  double q = 1.0;
  double tol = 1e-6;
  std::optional<int> quantize;
  std::string out_path;
  std::string summary_path;
};

/// Exit codes: 0 success, 1 a checked inequality failed (verify) or the
/// solver did not converge, 2 bad input or usage.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hajlasz
