// Acceptance suite: runs every criterion at full scale and prints one
// pass/fail line per criterion.

#include <iostream>

#include "llab/selftest.hpp"

int main() {
    const int failures = llab::selftest::run_and_print(false, std::cout);
    return failures == 0 ? 0 : 1;
}
