#include <iostream>

#include "nwfs_cli/app.hpp"

int main(int argc, char** argv) { return nwfs::io::run_cli(argc, argv, std::cout, std::cerr); }
