#include "sharpdepth/cli.hpp"

int main(int argc, char** argv) { return sharpdepth::run_cli(argc, argv); }
