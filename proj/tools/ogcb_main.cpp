#include "ogcb/cli.hpp"

int main(int argc, char** argv) { return ogcb::cli::run(argc, argv); }
