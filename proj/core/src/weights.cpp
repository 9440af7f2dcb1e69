#include "kwz/weights.hpp"

#include <cmath>
#include <string>

namespace kwz {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

void check_phi(double phi) {
  if (!(phi > 0.0 && phi < kPi))
    fail(ErrorCode::PhiOutOfRange,
         "opposite angle " + std::to_string(phi) + " is outside (0, pi)");
}
}  // namespace

Cx geometric_weight(double theta, double phi_u, double phi_up) {
  check_phi(phi_u);
  check_phi(phi_up);
  const double mag = std::sqrt(std::tan(phi_u / 2) * std::tan(phi_up / 2));
  return std::polar(mag, theta / 2);
}

Cx coupling_from_weight(Cx y) {
  if (std::abs(y - Cx(1, 0)) < 1e-12 || std::abs(y + Cx(1, 0)) < 1e-12)
    fail(ErrorCode::SingularCoupling, "weight is at a branch point of atanh");
  return 0.5 * std::log((Cx(1, 0) + y) / (Cx(1, 0) - y));
}

WeightSystem split_weights(const EdgeAngles& angles) {
  const int m = static_cast<int>(angles.theta.size());
  WeightSystem ws;
  ws.y.resize(m);
  ws.y_dagger.resize(3 * m);
  for (int k = 0; k < m; ++k) {
    check_phi(angles.phi_u[k]);
    check_phi(angles.phi_up[k]);
    const double root_u = std::sqrt(std::tan(angles.phi_u[k] / 2));
    const double root_up = std::sqrt(std::tan(angles.phi_up[k] / 2));
    const Cx twist = std::polar(1.0, angles.theta[k] / 2);
    ws.y[k] = root_u * root_up * twist;
    ws.y_dagger[3 * k + 0] = root_u;
    ws.y_dagger[3 * k + 1] = twist;
    ws.y_dagger[3 * k + 2] = root_up;
  }
  return ws;
}

void direct_weights(WeightSystem& ws) {
  const int m = static_cast<int>(ws.y.size());
  ws.y_directed.assign(6 * m, Cx(1, 0));
  for (int k = 0; k < m; ++k) {
    // Principal square root is safe: the twist has a positive real part for
    // dihedral angles in (-pi, pi), and stays continuous up to the fold.
    const Cx quarter_twist = std::sqrt(ws.y_dagger[3 * k + 1]);
    ws.y_directed[6 * k + 0] = ws.y_dagger[3 * k + 0];
    ws.y_directed[6 * k + 1] = Cx(1, 0);
    ws.y_directed[6 * k + 2] = quarter_twist;
    ws.y_directed[6 * k + 3] = quarter_twist;
    ws.y_directed[6 * k + 4] = Cx(1, 0);
    ws.y_directed[6 * k + 5] = ws.y_dagger[3 * k + 2];
  }
}

void resplit_directed(WeightSystem& ws, Rng& rng) {
  if (ws.y_directed.size() != 2 * ws.y_dagger.size()) direct_weights(ws);
  const int half_edges = static_cast<int>(ws.y_dagger.size());
  for (int j = 0; j < half_edges; ++j) {
    const double mag = std::exp(rng.uniform(-std::log(2.0), std::log(2.0)));
    const Cx c = std::polar(mag, rng.uniform(-kPi, kPi));
    ws.y_directed[2 * j] *= c;
    ws.y_directed[2 * j + 1] /= c;
  }
}

}  // namespace kwz
