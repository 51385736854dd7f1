#include <cmath>

#include "hyperpin/msf.hpp"

namespace hyperpin {

namespace {

void identity_coupling(std::span<const double> z, std::span<double> out) {
  for (std::size_t k = 0; k < z.size(); ++k) out[k] = z[k];
}

}  // namespace

MsfModel consensus_model() {
  MsfModel m;
  m.name = "consensus";
  m.dim = 1;
  m.field = [](std::span<const double>, std::span<double> out) { out[0] = 0.0; };
  m.jacobian = [](std::span<const double>, Eigen::Ref<Eigen::MatrixXd> out) { out(0, 0) = 0.0; };
  m.coupling = identity_coupling;
  m.coupling_jacobian = Eigen::MatrixXd::Identity(1, 1);
  m.reference_init = Eigen::VectorXd::Zero(1);
  m.consensus = true;
  return m;
}

MsfModel linear_model(double a) {
  MsfModel m;
  m.name = "linear";
  m.dim = 1;
  m.field = [a](std::span<const double> x, std::span<double> out) { out[0] = a * x[0]; };
  m.jacobian = [a](std::span<const double>, Eigen::Ref<Eigen::MatrixXd> out) { out(0, 0) = a; };
  m.coupling = identity_coupling;
  m.coupling_jacobian = Eigen::MatrixXd::Identity(1, 1);
  m.reference_init = Eigen::VectorXd::Ones(1);
  return m;
}

Eigen::Vector3d lorenz_field(const Eigen::Vector3d& x) {
  return {kLorenzS * (x[1] - x[0]),
          kLorenzS * x[0] - x[1] - x[0] * x[2],
          x[0] * x[1] - kLorenzB * (x[2] + kLorenzP + kLorenzS)};
}

Eigen::Matrix3d lorenz_jacobian(const Eigen::Vector3d& x) {
  Eigen::Matrix3d j;
  j << -kLorenzS, kLorenzS, 0.0,
       kLorenzS - x[2], -1.0, -x[0],
       x[1], x[0], -kLorenzB;
  return j;
}

MsfModel lorenz_arctan_model() {
  MsfModel m;
  m.name = "lorenz_arctan";
  m.dim = 3;
  m.field = [](std::span<const double> x, std::span<double> out) {
    out[0] = kLorenzS * (x[1] - x[0]);
    out[1] = kLorenzS * x[0] - x[1] - x[0] * x[2];
    out[2] = x[0] * x[1] - kLorenzB * (x[2] + kLorenzP + kLorenzS);
  };
  m.jacobian = [](std::span<const double> x, Eigen::Ref<Eigen::MatrixXd> out) {
    out = lorenz_jacobian(Eigen::Vector3d(x[0], x[1], x[2]));
  };
  m.coupling = [](std::span<const double> z, std::span<double> out) {
    for (std::size_t k = 0; k < z.size(); ++k) out[k] = std::atan(z[k]);
  };
  m.coupling_jacobian = Eigen::MatrixXd::Identity(3, 3);
  m.reference_init = Eigen::Vector3d(1.0, 1.0, 1.0);
  return m;
}

}  // namespace hyperpin
