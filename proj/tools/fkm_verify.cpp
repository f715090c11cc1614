#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "fkm/cli.hpp"
#include "fkm/errors.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<std::string> env_seed;
  if (const char* s = std::getenv("FKM_SEED")) env_seed = s;

  fkm::CliOptions opts;
  try {
    opts = fkm::parse_cli(args, env_seed);
  } catch (const fkm::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\nrun with --help for options\n";
    return 2;
  }
  try {
    return fkm::run_cli(opts);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
}
