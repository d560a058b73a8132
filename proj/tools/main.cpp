#include "su2lat/cli.hpp"

int main(int argc, char **argv) { return su2lat::cli::run(argc, argv); }
