// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "cli_app.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return chaos_prng::cli::run_cli(argc, argv, std::cin, std::cout, std::cerr);
}
