#include "quadbound/cli.hpp"

int main(int argc, char** argv) { return quadbound::cli::run(argc, argv); }
