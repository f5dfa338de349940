#include "schedsim/cli.hpp"

int main(int argc, char** argv) { return schedsim::run_cli(argc, argv); }
