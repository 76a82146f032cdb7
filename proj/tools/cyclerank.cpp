#include "cli.hpp"

int main(int argc, char** argv) { return cyclerank::cli::run(argc, argv); }
