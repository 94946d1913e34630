// Twisted de Rham cohomology of d + df^ against the Jacobian ring.
// usage: demo_milnor [f] [vars]
#include <cstdlib>
#include <iostream>

#include <qlag/qlag.hpp>

using namespace qlag;

int main(int argc, char** argv) {
  std::string text = argc > 1 ? argv[1] : "x^3+y^3";
  int n = argc > 2 ? std::atoi(argv[2]) : infer_vars(text, 0);
  Poly f = parse_poly(text, n);

  std::cout << "f = " << f.str() << "\n";
  for (const auto& row : twisted_cohomology_dims(f, Flavor::TwistedDR, 10))
    std::cout << "  H^" << row.degree << " = " << row.dim << (row.stable ? "" : "  (not stable)") << "\n";
  if (auto mu = jacobian_ring_dim(f, 10))
    std::cout << "dim Q[x]/(df) = " << *mu << "\n";
  else
    std::cout << "critical locus is not isolated\n";
}
