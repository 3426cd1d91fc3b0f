#include "hp2sph/cli.hpp"

int main(int argc, char** argv) { return hp2sph::cli::run(argc, argv); }
