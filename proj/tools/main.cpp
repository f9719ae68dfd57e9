#include "conemet/cli.hpp"

int main(int argc, char** argv) { return conemet::run_cli(argc, argv); }
