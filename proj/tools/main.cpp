#include "cli.hpp"

int main(int argc, char** argv) { return rhb::cli::main(argc, argv); }
