#include "affine/cli.hpp"

int main(int argc, char** argv) { return affine::cli::main(argc, argv); }
