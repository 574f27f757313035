#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "pdiag/io.hpp"

// The commands behind the pdiag executable, callable without a process.
namespace pdiag::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_check_failed = 1,       // verify: the supplied matrix fails a check
  exit_invalid_input = 2,
  exit_infeasible = 3,
  exit_self_check_failed = 4,  // a construction failed its own certificate
};

struct Flags {
  std::optional<double> tol;  // spectrum threshold, relative to max(1, max |lambda|)
  bool exact = false;
  std::optional<niep::AssignmentOrder> order;
  std::optional<std::uint64_t> seed;
};

struct Outcome {
  int code = exit_ok;
  io::json report;
};

/// command is one of classify, realize, similar, verify.
Outcome run(std::string_view command, const io::ProblemFile& problem, const Flags& flags = {});
/// Parses `text` first; malformed input gives exit_invalid_input.
Outcome run_text(std::string_view command, const std::string& text, const Flags& flags = {});

}  // namespace pdiag::cli
