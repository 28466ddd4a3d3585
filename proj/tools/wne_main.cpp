#include "wne/cli.hpp"

int main(int argc, char** argv) { return wne::cli_main(argc, argv); }
