#include "mrdepth/cli.hpp"

int main(int argc, char** argv) { return mrdepth::cli::run(argc, argv); }
