#include <iostream>

#include "qcorr_app/cli.hpp"

int main(int argc, char** argv) { return qcorr::app::run(argc, argv, std::cout, std::cerr); }
