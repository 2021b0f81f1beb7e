#include "cli.hpp"

int main(int argc, char** argv) { return thermonet::cli::run(argc, argv); }
