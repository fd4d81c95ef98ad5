#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "reescalc/cli.hpp"

namespace cli = reescalc::cli;

int main(int argc, char** argv) {
  CLI::App app{"Ratliff-Rush closures, integral closures and Buchsbaum-Rim data of modules over k[X,Y]"};
  std::string command, file, json_path;
  cli::Overrides ov;
  unsigned lmax = 0, window = 0, nmax = 0;
  std::uint32_t characteristic = 0;

  std::string names;
  for (const auto& c : cli::commands()) names += (names.empty() ? "" : ", ") + c;
  app.add_option("command", command, "one of: " + names)->required()->check(CLI::IsMember(cli::commands()));
  app.add_option("file", file, "problem file (for 'fixtures': optional name filter)");
  auto* o_lmax = app.add_option("--lmax", lmax, "longest colon chain");
  auto* o_window = app.add_option("--window", window, "chain stabilization window");
  auto* o_nmax = app.add_option("--nmax", nmax, "highest power examined");
  auto* o_char = app.add_option("--char", characteristic, "field characteristic (0 or a prime)");
  app.add_option("--json", json_path, "also write the JSON report to this path");
  bool reports = false;
  app.add_flag("--reports", reports, "fixtures: embed each fixture's full report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : cli::kExitInput;
  }
  if (o_lmax->count()) ov.lmax = lmax;
  if (o_window->count()) ov.window = window;
  if (o_nmax->count()) ov.nmax = nmax;
  if (o_char->count()) ov.characteristic = characteristic;

  cli::Outcome out;
  if (command == "fixtures") {
    out = cli::run_fixtures(file, ov, reports);
  } else {
    if (file.empty()) {
      std::cerr << "error: '" << command << "' needs a problem file\n";
      return cli::kExitInput;
    }
    std::ifstream in(file, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot read " << file << "\n";
      return cli::kExitInput;
    }
    std::ostringstream text;
    text << in.rdbuf();
    out = cli::run(command, text.str(), ov);
  }

  std::cout << out.json;
  std::cerr << out.summary;
  if (!json_path.empty()) {
    std::ofstream f(json_path, std::ios::binary);
    f << out.json;
    if (!f) {
      std::cerr << "error: cannot write " << json_path << "\n";
      return cli::kExitInput;
    }
  }
  return out.exit_code;
}
