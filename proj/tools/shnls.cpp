#include "shnls/cli.hpp"

int main(int argc, char** argv) { return shnls::cli::main(argc, argv); }
