#include "commands.hpp"

int main(int argc, char** argv) { return qprime::cli::run(argc, argv); }
