#include "cli.hpp"

int main(int argc, char** argv) { return urnlda::cli::run(argc, argv); }
