#include "tzvar/cli.hpp"

int main(int argc, char** argv) { return tzvar::run_cli(argc, argv); }
