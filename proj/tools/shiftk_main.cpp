#include "shiftk/cli/run.hpp"

int main(int argc, char** argv) { return shiftk::cli::main_entry(argc, argv); }
