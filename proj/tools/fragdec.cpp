#include <vector>

#include "fragdec/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fragdec::run_cli(args);
}
