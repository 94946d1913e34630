// phi on a few operators of the twisted Weyl algebra, and a product check.
#include <iostream>

#include <qlag/qlag.hpp>

using namespace qlag;

int main() {
  TwistPtr tw = make_twist(parse_one_form("x^2*dy", 2));
  WeylOp p = parse_op("dx^2", tw), q = parse_op("x*dy + y", tw);

  std::cout << "p        = " << p.str() << "\n";
  std::cout << "phi(p)   = " << phi(p).str() << "\n";
  std::cout << "q        = " << q.str() << "\n";
  std::cout << "p*q      = " << (p * q).str() << "\n";
  bool ok = phi(p * q) == diffod_mul(phi(p), phi(q));
  std::cout << "phi(pq) == phi(p)phi(q): " << (ok ? "yes" : "no") << "\n";
  return ok ? 0 : 1;
}
