#include "q4lab/cli.hpp"

int main(int argc, char** argv) { return q4::cli::main_entry(argc, argv); }
