#ifndef HYPERHARMONIC_CLI_HPP_
#define HYPERHARMONIC_CLI_HPP_

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "hyperharmonic/catalog.hpp"

namespace hyperharmonic::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitMismatch = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitUsage = 64;

/// "0.25", "-1/3", "0.3+0.1i", "2e-3-1.5i". Returns nullopt for anything
/// else, including non-finite values.
std::optional<Complex> parse_value(std::string_view text);

/// "a=0.25,b=0.3+0.1i".
std::optional<Params> parse_params(std::string_view text);

struct SweepRange {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;
  int steps = 0;
};

/// "a=0.1:0.9:9"; steps must be positive.
std::optional<SweepRange> parse_range(std::string_view text);

/// Runs one command line (without the program name). When `registry` is
/// null one is built from the effective seed. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Registry* registry = nullptr);

}  // namespace hyperharmonic::cli

#endif  // HYPERHARMONIC_CLI_HPP_
