#include "cli.hpp"

int main(int argc, char** argv) { return qcells::cli::run(argc, argv); }
