#include <iostream>

#include "arbor/acceptance.hpp"

int main() {
  using namespace arbor::acceptance;
  int failed = 0;
  run({}, [&](const Result& r) {
    std::cout << format_line(r) << std::endl;
    failed += r.status != Status::kPass;
  });
  return failed == 0 ? 0 : 1;
}
