#include "pumpprobe/cli.hpp"

int main(int argc, char** argv) { return pumpprobe::run_cli(argc, argv); }
