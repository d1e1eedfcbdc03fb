#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace affine::cli {

enum ExitCode : int { kOk = 0, kCheckedFalse = 1, kUsage = 2 };

struct RunConfig {
  std::vector<std::string> command;  // e.g. {"types", "hull"}
  std::vector<std::string> structures;
  std::string family;
  std::string mu;
  bool json = false;
  std::uint64_t seed = 20240611;
  std::size_t cap = 4096;

  std::string formula;
  std::vector<std::string> conditions;
  std::string vars;
  std::string assign;
  std::string predicate;
  std::string other;
  std::string function;
  std::string set;
  std::size_t arity = 1;
  std::size_t inner_arity = 1;
  std::string lambda = "1";
  std::string eps = "0";
  std::string raw;
  std::string weights;
  std::string point;
  std::string p;
  std::string q;
  std::string x, a, b;
  std::string values;
  bool maximize = false;
  int criterion = 0;
};

/// Runs one subcommand; writes the report to stdout and diagnostics to stderr.
int run(const RunConfig& config);

/// Parses argv and calls run.
int main(int argc, char** argv);

}  // namespace affine::cli
