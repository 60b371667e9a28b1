#include "mackey/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mackey::run(std::move(args)).code;
}
