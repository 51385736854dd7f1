#include "hyperpin/msf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hyperpin/errors.hpp"

namespace hyperpin {

void LyapunovSettings::validate() const {
  if (!(transient_time >= 0.0) || !(horizon > 0.0) || !(renorm_interval > 0.0) || !(step > 0.0)) {
    throw ConfigError("Lyapunov settings must be positive");
  }
  if (!(horizon > transient_time)) throw ConfigError("Lyapunov horizon must exceed the transient time");
}

namespace {

// Reference state plus real and imaginary parts of the variation, stacked.
class VariationalSystem {
 public:
  VariationalSystem(const MsfModel& model, Complex mu)
      : model_(model), n_(model.dim), re_(mu.real()), im_(mu.imag()),
        jf_(model.dim, model.dim), fx_(model.dim) {}

  void operator()(const Eigen::VectorXd& s, Eigen::VectorXd& ds) {
    const auto x = s.head(n_);
    model_.field(std::span<const double>(x.data(), n_), std::span<double>(fx_.data(), n_));
    model_.jacobian(std::span<const double>(x.data(), n_), jf_);
    const auto& g = model_.coupling_jacobian;
    const auto xr = s.segment(n_, n_);
    const auto xi = s.segment(2 * n_, n_);
    ds.head(n_) = fx_;
    ds.segment(n_, n_) = jf_ * xr - re_ * (g * xr) + im_ * (g * xi);
    ds.segment(2 * n_, n_) = jf_ * xi - re_ * (g * xi) - im_ * (g * xr);
  }

 private:
  const MsfModel& model_;
  int n_;
  double re_, im_;
  Eigen::MatrixXd jf_;
  Eigen::VectorXd fx_;
};

}  // namespace

double lyapunov_exponent(const MsfModel& model, Complex mu, const LyapunovSettings& settings) {
  settings.validate();
  const int n = model.dim;
  const double h = settings.step;
  const long long total = std::llround(settings.horizon / h);
  const long long transient = std::llround(settings.transient_time / h);
  const long long renorm = std::max<long long>(1, std::llround(settings.renorm_interval / h));

  Eigen::VectorXd s(3 * n);
  s.head(n) = model.reference_init;
  for (int k = 0; k < n; ++k) {
    s[n + k] = 1.0 + 0.1 * k;
    s[2 * n + k] = 0.3 - 0.05 * k;
  }
  s.tail(2 * n).normalize();

  VariationalSystem rhs(model, mu);
  Eigen::VectorXd k1(3 * n), k2(3 * n), k3(3 * n), k4(3 * n), tmp(3 * n);
  double log_sum = 0.0;
  long long accumulated = 0;
  long long segment_start = 0;
  for (long long step = 1; step <= total; ++step) {
    rhs(s, k1);
    tmp = s + 0.5 * h * k1;
    rhs(tmp, k2);
    tmp = s + 0.5 * h * k2;
    rhs(tmp, k3);
    tmp = s + h * k3;
    rhs(tmp, k4);
    s += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    if (step % renorm == 0 || step == total) {
      const double norm = s.tail(2 * n).norm();
      if (!std::isfinite(norm) || norm <= 0.0 || !s.head(n).allFinite()) {
        throw IntegrationError("variational integration failed at t=" + std::to_string(step * h));
      }
      if (segment_start >= transient) {
        log_sum += std::log(norm);
        accumulated += step - segment_start;
      }
      s.tail(2 * n) /= norm;
      segment_start = step;
    }
  }
  if (accumulated == 0) throw IntegrationError("no averaging window after the transient");
  return log_sum / (static_cast<double>(accumulated) * h);
}

double msf_closed_form_consensus(Complex mu) { return -mu.real(); }

// ---------------------------------------------------------------------------

MasterStability MasterStability::consensus() { return shifted(0.0, 1.0); }

MasterStability MasterStability::shifted(double base, double gain) {
  MasterStability m;
  m.kind_ = Kind::Shift;
  m.base_ = base;
  m.gain_ = gain;
  return m;
}

MasterStability MasterStability::from_model(MsfModel model, LyapunovSettings settings) {
  settings.validate();
  if (model.consensus) {
    auto m = consensus();
    m.model_ = std::move(model);
    m.settings_ = settings;
    return m;
  }
  const auto& g = model.coupling_jacobian;
  const double gamma = g(0, 0);
  const bool scalar = g.rows() == g.cols() &&
                      (g - gamma * Eigen::MatrixXd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff() == 0.0;
  MasterStability m;
  if (scalar) {
    m.kind_ = Kind::Shift;
    m.base_ = lyapunov_exponent(model, Complex(0.0, 0.0), settings);
    m.gain_ = gamma;
  } else {
    m.kind_ = Kind::Numeric;
  }
  m.model_ = std::move(model);
  m.settings_ = settings;
  return m;
}

double MasterStability::operator()(Complex mu) const {
  if (kind_ == Kind::Shift) return base_ - gain_ * mu.real();
  return lyapunov_exponent(*model_, mu, settings_);
}

std::vector<double> evaluate_msf(const MasterStability& msf, std::span<const Complex> points, Execution exec) {
  std::vector<double> out(points.size());
  if (msf.closed_form()) exec = Execution::Serial;
  for_each_index(points.size(), exec, [&](std::size_t i) { out[i] = msf(points[i]); });
  return out;
}

std::vector<MsfGridCell> msf_grid(const MsfModel& model, const MsfGridSpec& grid,
                                  const LyapunovSettings& settings, Execution exec) {
  if (grid.re_points < 1 || grid.im_points < 1 || !(grid.re_max >= grid.re_min) ||
      !(grid.im_max >= grid.im_min)) {
    throw ConfigError("invalid MSF grid");
  }
  settings.validate();
  auto axis = [](double lo, double hi, int count, int k) {
    return count == 1 ? lo : lo + (hi - lo) * k / (count - 1);
  };
  std::vector<double> re(grid.re_points), im(grid.im_points);
  for (int k = 0; k < grid.re_points; ++k) re[k] = axis(grid.re_min, grid.re_max, grid.re_points, k);
  for (int k = 0; k < grid.im_points; ++k) im[k] = axis(grid.im_min, grid.im_max, grid.im_points, k);

  // Distinct |im| values; conjugate points share one evaluation.
  const double scale = std::max({1.0, std::abs(grid.im_min), std::abs(grid.im_max)});
  std::vector<double> unique_abs;
  std::vector<int> im_key(im.size());
  for (std::size_t k = 0; k < im.size(); ++k) {
    const double a = std::abs(im[k]);
    auto it = std::find_if(unique_abs.begin(), unique_abs.end(),
                           [&](double u) { return std::abs(u - a) <= 1e-12 * scale; });
    if (it == unique_abs.end()) {
      im_key[k] = static_cast<int>(unique_abs.size());
      unique_abs.push_back(a);
    } else {
      im_key[k] = static_cast<int>(it - unique_abs.begin());
    }
  }

  const std::size_t nu = unique_abs.size();
  std::vector<double> values(re.size() * nu);
  for_each_index(values.size(), exec, [&](std::size_t idx) {
    const std::size_t i = idx / nu, u = idx % nu;
    try {
      values[idx] = lyapunov_exponent(model, {re[i], unique_abs[u]}, settings);
    } catch (const IntegrationError&) {
      values[idx] = std::numeric_limits<double>::quiet_NaN();
    }
  });

  std::vector<MsfGridCell> cells;
  cells.reserve(re.size() * im.size());
  for (std::size_t i = 0; i < re.size(); ++i) {
    for (std::size_t k = 0; k < im.size(); ++k) {
      cells.push_back({re[i], im[k], values[i * nu + im_key[k]]});
    }
  }
  return cells;
}

std::optional<double> type2_threshold(const MasterStability& msf, double mu_max, int samples) {
  if (!(mu_max > 0.0) || samples < 1) throw ConfigError("type2_threshold needs mu_max > 0 and samples >= 1");
  std::vector<Complex> points(samples + 1);
  for (int k = 0; k <= samples; ++k) points[k] = Complex(mu_max * k / samples, 0.0);
  const auto lambda = evaluate_msf(msf, points);
  if (!(lambda.back() < -kMsfMargin)) return std::nullopt;
  int last_bad = -1;
  for (int k = 0; k <= samples; ++k) {
    if (!(lambda[k] < -kMsfMargin)) last_bad = k;
  }
  return points[std::max(last_bad, 0)].real();
}

double ControllabilityVerdict::lambda_max() const {
  return worst ? worst->second : -std::numeric_limits<double>::infinity();
}

ControllabilityVerdict controllability_verdict(const MasterStability& msf, const Spectrum& reduced) {
  ControllabilityVerdict v;
  const auto lambda = evaluate_msf(msf, reduced.values);
  v.lambda_values.reserve(lambda.size());
  for (std::size_t k = 0; k < lambda.size(); ++k) {
    v.lambda_values.emplace_back(reduced.values[k], lambda[k]);
    if (!(lambda[k] < -kMsfMargin)) v.feasible = false;
    if (!v.worst || lambda[k] > v.worst->second || std::isnan(lambda[k])) {
      v.worst = v.lambda_values.back();
    }
  }
  return v;
}

ControllabilityVerdict controllability_verdict(const MasterStability& msf, const Spectrum& reduced,
                                               double mu_max) {
  if (!type2_threshold(msf, mu_max)) {
    throw NotType2Error("Lambda(mu) is not negative on the real axis up to mu_max; limit test unverifiable");
  }
  return controllability_verdict(msf, reduced);
}

}  // namespace hyperpin
