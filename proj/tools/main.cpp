#include "moddenoise/cli.hpp"

int main(int argc, char** argv) { return moddenoise::run_cli(argc, argv); }
