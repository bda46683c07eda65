#include "tumd/cli.hpp"

int main(int argc, char** argv) { return tumd::cli_main(argc, argv); }
