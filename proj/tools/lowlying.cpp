#include "lowlying/cli/commands.hpp"

int main(int argc, char** argv) { return lowlying::cli::run_cli(argc, argv); }
