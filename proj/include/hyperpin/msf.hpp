#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "hyperpin/parallel.hpp"
#include "hyperpin/spectral.hpp"

namespace hyperpin {

// Margin for sign decisions on Lyapunov exponents: "negative" means
// Lambda < -kMsfMargin; values within the margin count as marginal (unstable).
inline constexpr double kMsfMargin = 1e-3;

using VectorField = std::function<void(std::span<const double> x, std::span<double> out)>;
using JacobianField = std::function<void(std::span<const double> x, Eigen::Ref<Eigen::MatrixXd> out)>;

/// Node dynamics and coupling protocol. `coupling` is the (possibly
/// nonlinear) g applied to the hyperdiffusive argument; `coupling_jacobian`
/// is JG evaluated at 0.
struct MsfModel {
  std::string name;
  int dim = 1;
  VectorField field;
  JacobianField jacobian;
  VectorField coupling;
  Eigen::MatrixXd coupling_jacobian;
  Eigen::VectorXd reference_init;
  // f == 0 and g == identity: the exponent has the closed form -Re(mu).
  bool consensus = false;
};

/// n = 1, f = 0, g = identity.
MsfModel consensus_model();
/// n = 1, f(x) = a x, g = identity.
MsfModel linear_model(double a);
/// Shifted Lorenz field (s = 10, p = 28, b = 8/3) with elementwise arctan coupling.
MsfModel lorenz_arctan_model();

inline constexpr double kLorenzS = 10.0;
inline constexpr double kLorenzP = 28.0;
inline constexpr double kLorenzB = 8.0 / 3.0;

Eigen::Vector3d lorenz_field(const Eigen::Vector3d& x);
Eigen::Matrix3d lorenz_jacobian(const Eigen::Vector3d& x);

struct LyapunovSettings {
  double transient_time = 100.0;
  double horizon = 1100.0;
  double renorm_interval = 1.0;
  double step = 1e-3;

  static LyapunovSettings lorenz() { return {}; }
  static LyapunovSettings linear() { return {100.0, 1100.0, 1.0, 1e-2}; }
  void validate() const;
};

/// Largest Lyapunov exponent of xi' = (JF(x_p(t)) - mu JG(0)) xi along the
/// reference trajectory x_p' = f(x_p) started at model.reference_init.
/// Fixed-step RK4 on the reference and the complex variation (as 2n reals),
/// renormalised every renorm_interval; the log growth is averaged over
/// [transient_time, horizon]. Throws IntegrationError on non-finite values.
double lyapunov_exponent(const MsfModel& model, Complex mu, const LyapunovSettings& settings);

/// Closed form for the consensus model: -Re(mu).
double msf_closed_form_consensus(Complex mu);

/// Evaluator for Lambda(mu) used by the controllability checks.
///
/// When JG(0) = gamma I the variational matrix is JF - mu gamma I, whose
/// shift commutes with JF, so Lambda(mu) = Lambda(0) - gamma Re(mu) exactly.
/// That base exponent is integrated once; other models fall back to one
/// integration per query.
class MasterStability {
 public:
  static MasterStability consensus();
  static MasterStability from_model(MsfModel model, LyapunovSettings settings);
  /// Lambda(mu) = base - gain * Re(mu); for models whose base exponent is known.
  static MasterStability shifted(double base, double gain);

  double operator()(Complex mu) const;

  bool closed_form() const { return kind_ != Kind::Numeric; }
  double base_exponent() const { return base_; }
  double coupling_gain() const { return gain_; }
  const std::optional<MsfModel>& model() const { return model_; }

 private:
  enum class Kind { Shift, Numeric };
  Kind kind_ = Kind::Shift;
  double base_ = 0.0;
  double gain_ = 1.0;
  std::optional<MsfModel> model_;
  LyapunovSettings settings_;
};

/// Evaluates Lambda at every point; the output order follows the input order
/// regardless of execution mode.
std::vector<double> evaluate_msf(const MasterStability& msf, std::span<const Complex> points,
                                 Execution exec = Execution::Parallel);

struct MsfGridSpec {
  double re_min = -1.0, re_max = 1.0;
  double im_min = -1.0, im_max = 1.0;
  int re_points = 5, im_points = 5;
};

struct MsfGridCell {
  double re, im, lambda;  // lambda is NaN if integration failed
};

/// Lambda on a rectangular grid (row-major in re, then im). Uses
/// Lambda(conj mu) = Lambda(mu) to evaluate each |im| only once.
std::vector<MsfGridCell> msf_grid(const MsfModel& model, const MsfGridSpec& grid,
                                  const LyapunovSettings& settings, Execution exec = Execution::Parallel);

/// Smallest sampled real mu_bar on [0, mu_max] (samples + 1 equispaced
/// points) with Lambda(mu) < -margin at every later sample; nullopt if
/// Lambda(mu_max) is not negative.
std::optional<double> type2_threshold(const MasterStability& msf, double mu_max, int samples = 200);

struct ControllabilityVerdict {
  bool feasible = true;
  std::vector<std::pair<Complex, double>> lambda_values;
  // Pair attaining the largest Lambda; empty when there are no eigenvalues.
  std::optional<std::pair<Complex, double>> worst;

  double lambda_max() const;
};

/// Feasible iff Lambda(lambda) < -margin for every eigenvalue.
ControllabilityVerdict controllability_verdict(const MasterStability& msf, const Spectrum& reduced);

/// Same, after confirming the model is type II on [0, mu_max]; throws
/// NotType2Error otherwise.
ControllabilityVerdict controllability_verdict(const MasterStability& msf, const Spectrum& reduced,
                                               double mu_max);

}  // namespace hyperpin
