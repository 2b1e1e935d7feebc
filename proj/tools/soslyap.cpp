#include "soslyap/cli_app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return soslyap::run_cli(std::move(args));
}
