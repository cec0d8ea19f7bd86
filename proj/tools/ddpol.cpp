#include <iostream>

#include "ddpol/app/commands.hpp"

int main(int argc, char** argv) { return ddpol::app::run(argc, argv, std::cout, std::cerr); }
