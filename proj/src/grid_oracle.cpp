#include "torusq/grid_oracle.hpp"

namespace torusq::oracle {

GridSection apply_prequantum(const TrigPoly& f, const GridSection& phi) {
  const double level = phi.level().value();
  const Complex inv(0.0, -1.0 / (kTwoPi * level));  // 1/(2πiN)
  const TrigPoly fx = d_dx(f), fy = d_dy(f);
  const GridSection dphi_x = grid_d_dx(phi);
  const GridSection dphi_y = grid_d_dy(phi);

  GridSection out(phi.level(), phi.gx(), phi.gy());
  for (int i = 0; i <= phi.gx(); ++i) {
    const double x = phi.x(i);
    for (int j = 0; j <= phi.gy(); ++j) {
      const double y = phi.y(j);
      const Complex covariant_y = dphi_y(i, j) - Complex(0.0, kTwoPi * level * x) * phi(i, j);
      out.values()(i, j) = inv * (evaluate(fx, x, y) * covariant_y - evaluate(fy, x, y) * dphi_x(i, j)) +
                           evaluate(f, x, y) * phi(i, j);
    }
  }
  return out;
}

GridSection apply_heisenberg_x(const GridSection& phi) {
  const double level = phi.level().value();
  const GridSection dphi_y = grid_d_dy(phi);
  GridSection out(phi.level(), phi.gx(), phi.gy());
  for (int i = 0; i <= phi.gx(); ++i)
    for (int j = 0; j <= phi.gy(); ++j)
      out.values()(i, j) = Complex(0.0, -1.0 / kTwoPi) * dphi_y(i, j) - level * phi.x(i) * phi(i, j);
  return out;
}

GridSection apply_heisenberg_y(const GridSection& phi) {
  GridSection out = grid_d_dx(phi);
  out.values() *= Complex(0.0, 1.0 / kTwoPi);
  return out;
}

}  // namespace torusq::oracle
