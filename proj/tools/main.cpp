#include "src/commands.hpp"

int main(int argc, char** argv) { return msrank::cli::run_cli(argc, argv); }
