#include "floodsim/cli.hpp"

int main(int argc, char** argv) { return floodsim::cli_main(argc, argv); }
