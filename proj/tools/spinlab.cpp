#include "spinlab/cli/run.hpp"

int main(int argc, char** argv) { return spinlab::cli::main_entry(argc, argv); }
