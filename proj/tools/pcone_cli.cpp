#include "pcone/cli.hpp"

int main(int argc, char** argv) { return pcone::run(argc, argv); }
