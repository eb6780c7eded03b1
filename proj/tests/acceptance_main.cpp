#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>

#include "spinnet/acceptance.hpp"

int main(int argc, char** argv) {
  spinnet::AcceptanceOptions opt;
  opt.jobs = std::max(1u, std::thread::hardware_concurrency());
  if (argc > 1) opt.jobs = static_cast<unsigned>(std::stoul(argv[1]));
  const auto results = spinnet::run_acceptance(std::cout, opt);
  return spinnet::all_passed(results) ? EXIT_SUCCESS : EXIT_FAILURE;
}
