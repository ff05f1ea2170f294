#include "gcontour/cli.hpp"

int main(int argc, char** argv) { return gc::cli_main(argc, argv); }
