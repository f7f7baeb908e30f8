#include "commands.hpp"

int main(int argc, char** argv) { return qpsh::cli::run_cli(argc, argv); }
