// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "rtune/cli/cli.hpp"

int main(int argc, char** argv) { return rtune::run_cli(argc, argv, std::cout, std::cerr); }
