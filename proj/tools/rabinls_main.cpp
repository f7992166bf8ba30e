#include "rabinls/cli.hpp"

int main(int argc, char** argv) { return rabinls::cli_main(argc, argv); }
