#include "apfree/cli.hpp"

int main(int argc, char** argv) { return apfree::cli::main(argc, argv); }
