#include "tfg/cli.hpp"

int main(int argc, char** argv) { return tfg::cli::run(argc, argv); }
