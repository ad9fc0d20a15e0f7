#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fdqubo/pipeline.hpp"
#include "fdqubo/solve.hpp"

namespace fdqubo::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInconsistent = 2,
  kGuard = 3,
  kFailed = 4,
};

struct ConvertArgs {
  std::string input;
  std::string output;   // defaults to the input with a .qubo extension
  std::string sidecar;  // defaults to the output with a .sub.json extension
  CompileOptions options;
};

struct SolveArgs {
  std::string qubo;
  std::string method = "exhaustive";
  AnnealParams anneal;
  std::string sidecar;
  bool decode = false;
};

struct RoundtripArgs {
  std::string input;
  CompileOptions options;
  bool json = false;
};

int cmd_convert(const ConvertArgs& args, std::ostream& out, std::ostream& err);
int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err);
int cmd_roundtrip(const RoundtripArgs& args, std::ostream& out, std::ostream& err);
int cmd_check(const std::string& qubo_path, std::ostream& out, std::ostream& err);

/// Parses `fdqubo <command> ...` and dispatches. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string default_qubo_path(const std::string& input);
std::string default_sidecar_path(const std::string& qubo_path);

}  // namespace fdqubo::cli
