#include "inedor/cli.hpp"

int main(int argc, char** argv) { return inedor::cli::run(argc, argv); }
