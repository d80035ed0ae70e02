#include <cstdlib>
#include <iostream>

#include "fta/cli/run.hpp"

int main(int argc, char** argv) {
  fta::cli::Environment env;
  if (const char* key = std::getenv(fta::copilot::kCredentialEnv)) env[fta::copilot::kCredentialEnv] = key;
  std::vector<std::string> args(argv + 1, argv + argc);
  return fta::cli::run(args, env, std::cout, std::cerr);
}
