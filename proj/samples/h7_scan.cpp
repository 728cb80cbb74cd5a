// Walk the h7 metric family along r with s = 1, t = 2 and report where purely coclosed structures exist.

#include <iostream>

#include "g2nil/catalog.hpp"
#include "g2nil/structure.hpp"

using namespace g2nil;

int main() {
  auto L = catalog_algebra<Rational>("h7");
  Rational s = 1, t = 2;
  for (int k = 1; k <= 10; ++k) {
    Rational r = Rational(k, 10);
    auto g = family_metric<Rational>("h7", {{"r", r}, {"s", s}, {"t", t}});
    auto rep = case1_exists(decompose(L, g), L, g);
    std::cout << "r = " << str(r) << ": " << (rep.exists ? "admits" : "no") << "\n";
  }
  // 1/r = 1/s + 1/t at r = 2/3
  auto g = family_metric<Rational>("h7", {{"r", Rational(2, 3)}, {"s", s}, {"t", t}});
  std::cout << "r = 2/3: " << (case1_exists(decompose(L, g), L, g).exists ? "admits" : "no") << "\n";
}
