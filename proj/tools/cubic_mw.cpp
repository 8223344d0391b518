#include <iostream>

#include <cubic_mw/cli.hpp>

int main(int argc, char** argv) { return cubic_mw::run_cli(argc, argv, std::cout, std::cerr); }
