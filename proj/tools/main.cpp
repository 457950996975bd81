#include <iostream>

#include "prony2d/cli.hpp"

int main(int argc, char** argv) {
  const auto r = prony2d::cli::run(std::vector<std::string>(argv + 1, argv + argc));
  std::cout << r.stdout_text;
  (r.exit_code == 0 ? std::clog : std::cerr) << r.summary << '\n';
  return r.exit_code;
}
