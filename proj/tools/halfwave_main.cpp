#include "halfwave/cli.hpp"

int main(int argc, char** argv) { return halfwave::run_cli(argc, argv); }
