#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <utility>

#include "pdiag/cli.hpp"

namespace {

struct Options {
  std::string input;
  std::string output;
  std::optional<double> tol;
  bool exact = false;
  std::string order;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("-i,--input", o.input, "problem file (JSON), - for stdin")->required();
  cmd->add_option("-o,--output", o.output, "write the report here instead of stdout");
  cmd->add_option("--tol", o.tol, "spectrum threshold relative to max(1, max |lambda|)");
  cmd->add_flag("--exact", o.exact, "rational arithmetic and p/q output");
  cmd->add_option("--order", o.order, "diagonal assignment order")->check(CLI::IsMember({"keep", "auto"}));
  cmd->add_option("--seed", o.seed, "seed for randomized assignment search");
}

bool read_input(const std::string& path, std::string& text) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) return false;
    buf << in.rdbuf();
  }
  text = buf.str();
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matrices with a prescribed spectrum and diagonal"};
  app.require_subcommand(1);
  Options o;
  const std::pair<const char*, const char*> commands[] = {
      {"classify", "classify the spectrum as Suleimanova, Smigoc, mixed or outside"},
      {"realize", "build a nonnegative matrix with the given spectrum and diagonal"},
      {"similar", "find a matrix similar to the input with the given diagonal"},
      {"verify", "certify a matrix against a spectrum, a diagonal and sign checks"},
  };
  for (const auto& [name, help] : commands) add_common(app.add_subcommand(name, help), o);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : pdiag::cli::exit_invalid_input;
  }

  pdiag::cli::Flags flags;
  flags.tol = o.tol;
  flags.exact = o.exact;
  flags.seed = o.seed;
  if (o.order == "keep") flags.order = pdiag::niep::AssignmentOrder::keep;
  if (o.order == "auto") flags.order = pdiag::niep::AssignmentOrder::automatic;

  std::string text;
  pdiag::cli::Outcome outcome;
  if (!read_input(o.input, text)) {
    outcome = {pdiag::cli::exit_invalid_input, {{"status", "invalid_input"}, {"error", "cannot read " + o.input}}};
  } else {
    outcome = pdiag::cli::run_text(app.get_subcommands().front()->get_name(), text, flags);
  }

  const std::string out = outcome.report.dump(2) + "\n";
  if (o.output.empty()) {
    std::cout << out;
  } else {
    std::ofstream f(o.output);
    if (!f) {
      std::cerr << "cannot write " << o.output << "\n";
      return pdiag::cli::exit_invalid_input;
    }
    f << out;
  }
  if (outcome.code != pdiag::cli::exit_ok && outcome.report.contains("error")) {
    std::cerr << outcome.report["error"].get<std::string>() << "\n";
  }
  return outcome.code;
}
