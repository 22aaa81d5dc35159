#include "hml/cli.hpp"

int main(int argc, char** argv) { return hml::cli_main(argc, argv); }
