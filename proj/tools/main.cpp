#include <clocale>
#include <iostream>

#include "cli_run.hpp"

int main(int argc, char** argv) {
  std::setlocale(LC_ALL, "C");
  return dotr::cli_run(argc, argv, std::cout, std::cerr);
}
