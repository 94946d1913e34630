// The two-sided bar complex in a small window, and chi of the Weyl window.
#include <iostream>

#include <qlag/qlag.hpp>

using namespace qlag;

int main() {
  BarWindow win{1, 1, 2, 2, 0};
  TwistPtr tw = zero_twist(1);
  ComplexData cd = two_sided_build(win, tw);

  for (const auto& [deg, ks] : cd.basis)
    std::cout << "C^" << deg << ": dim " << ks.size() << ", H^" << deg << " = " << cd.cohomology[deg] << "\n";

  for (const auto& p : weyl_window(tw, win.order_cap, win.weight)) {
    BarChain c = chi(p);
    std::cout << "chi(" << p.str() << ") = " << c.str() << "   cycle: " << (bar_d(c).is_zero() ? "yes" : "no")
              << "\n";
  }
}
