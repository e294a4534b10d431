#include "nonint/cli.hpp"

int main(int argc, char** argv) { return nonint::cli::main_entry(argc, argv); }
