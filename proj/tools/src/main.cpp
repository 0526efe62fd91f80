#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "dlaplace_cli/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  dlaplace::cli::RunConfig config;
  try {
    config = dlaplace::cli::parse_config(args);
  } catch (const dlaplace::cli::ConfigError& e) {
    std::cerr << "dlaplace: error: " << e.what() << '\n';
    return 2;
  }
  try {
    return dlaplace::cli::run(config, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "dlaplace: " << config.subcommand << ": " << e.what() << '\n';
    return 1;
  }
}
