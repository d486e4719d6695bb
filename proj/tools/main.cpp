#include "waring/cli.hpp"

int main(int argc, char** argv) { return waring::cli::run(argc, argv); }
