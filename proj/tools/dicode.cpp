#include "dicode/cli/commands.hpp"

int main(int argc, char** argv) { return dicode::cli::run(argc, argv); }
