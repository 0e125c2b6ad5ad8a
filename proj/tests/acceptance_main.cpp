#include <iostream>

#include "singdyn/acceptance.hpp"

int main(int argc, char** argv) {
    const std::string scenarios = argc > 1 ? argv[1] : "scenarios";
    return singdyn::run_acceptance(std::cout, scenarios) ? 0 : 1;
}
