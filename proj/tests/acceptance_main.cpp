#include <iostream>

#include "mlhs/selftest.hpp"

// Runs the ten acceptance checks and prints one PASS/FAIL line each.
int main() {
  mlhs::Field field;
  auto results = mlhs::run_acceptance(field, &std::cout);
  bool all = true;
  for (const auto& r : results) all = all && r.pass;
  std::cout << (all ? "acceptance: all criteria passed"
                    : "acceptance: at least one criterion FAILED")
            << std::endl;
  return all ? 0 : 1;
}
