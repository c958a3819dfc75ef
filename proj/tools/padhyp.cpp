#include "padhyp/cli.hpp"

int main(int argc, char** argv) { return padhyp::cli::run(std::vector<std::string>(argv + 1, argv + argc)); }
