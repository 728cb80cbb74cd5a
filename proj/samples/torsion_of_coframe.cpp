// Torsion of the G2-structure induced by a coframe on n7_3_C, exactly.

#include <iostream>

#include "g2nil/catalog.hpp"
#include "g2nil/g2su3.hpp"

using namespace g2nil;

int main() {
  std::cout << std::boolalpha;
  auto L = catalog_algebra<Rational>("n7_3_C");
  for (auto rows : {std::vector<std::string>{"f1", "f2", "f3", "f4", "f5", "f6", "f7"},
                    std::vector<std::string>{"f1", "f2", "f3", "f4", "f7", "f6", "f5"}}) {
    auto s = phi_from_coframe(coframe_from_rows<Rational>(rows));
    auto t = torsion_class(s, L);
    std::cout << "coframe (";
    for (std::size_t i = 0; i < rows.size(); ++i) std::cout << (i ? ", " : "") << rows[i];
    std::cout << "): coclosed " << t.coclosed << ", tau0 " << str(t.tau0) << ", purely coclosed "
              << t.purely_coclosed << "\n";
  }
}
