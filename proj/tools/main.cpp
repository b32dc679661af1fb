#include "phip/cli.hpp"

int main(int argc, char** argv) { return phip::cli_main(argc, argv); }
