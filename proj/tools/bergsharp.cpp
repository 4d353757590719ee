#include <exception>
#include <iostream>

#include "bergsharp/cli/commands.hpp"
#include "bergsharp/cli/config.hpp"

int main(int argc, char** argv) {
  using namespace bergsharp::cli;
  RunConfig cfg;
  try {
    if (auto code = parse_command_line(argc, argv, cfg)) return *code;
    return execute(cfg, std::cout);
  } catch (const UsageError& e) {
    std::cerr << "bergsharp: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "bergsharp: " << e.what() << "\n";
    return kExitUsage;
  }
}
