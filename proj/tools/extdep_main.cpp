#include "extdep/cli.hpp"

int main(int argc, char** argv) { return extdep::cli::run(argc, argv); }
