// Build a purely coclosed coframe inducing a given metric on h3C+R and re-check its torsion.

#include <iostream>

#include "g2nil/catalog.hpp"
#include "g2nil/construct.hpp"

using namespace g2nil;

int main() {
  auto L = catalog_algebra<double>("h3C+R");
  // r = s = 1/4, F = 0 and G = E ((sqrt(rs) + 1) / (sqrt(r) + sqrt(s)))^2 = 25/16 E
  auto g = family_metric<double>("h3C+R", parse_params<double>("r=1/4,s=1/4,E=1,F=0,G=25/16"));
  auto D = decompose(L, g);
  auto rep = purely_exists(D, L, g);
  if (!rep.exists) {
    std::cout << "no purely coclosed structure for this metric\n";
    return 1;
  }
  auto c = construct_purely(D, L, g, rep);
  std::cout << "coframe rows (e^i in the f basis):\n";
  for (int i = 0; i < 7; ++i) {
    for (int j = 0; j < 7; ++j) std::cout << (j ? " " : "  ") << c.coframe(i, j);
    std::cout << "\n";
  }
  std::cout << "d*phi residual " << c.torsion.dstar_residual << ", tau0 " << c.torsion.tau0 << ", metric error "
            << c.metric_error << "\n";
}
