#include <iostream>

#include "strainscope/pipeline.hpp"

int main(int argc, char** argv) { return strainscope::run_cli(argc, argv, std::cout, std::cerr); }
