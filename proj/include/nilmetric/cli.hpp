#pragma once

#include "nilmetric/metric.hpp"
#include "nilmetric/skew_tensor.hpp"
#include "nilmetric/structures.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nilmetric {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitParse = 2, kExitNotCertified = 3 };

struct ProblemOptions {
  std::optional<double> tol;
};

/// Parsed problem file (format 1, 1-based indices).
struct ProblemFile {
  int dim = 0;
  SkewTensor bracket{1};
  Structure structure = Structure::none(1);
  Metric metric = Metric::identity(1);
  ProblemOptions options;
};

/// Throws Error(Parse) with the offending field in the message.
ProblemFile parse_problem(const std::string& text);
ProblemFile load_problem(const std::string& path);

/// Serializes a problem (and optional extra top-level fields as JSON text).
std::string dump_problem(const ProblemFile& p);

/// Runs the tool; args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nilmetric
