#include "fuzzyt_cli.hpp"

int main(int argc, char** argv) { return fuzzyt::cli::run(argc, argv); }
