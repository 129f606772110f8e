#include "delaybound/fundamental.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace delaybound {

namespace {

double interp_samples(const std::vector<double>& times, const std::vector<double>& values,
                      double t) {
  if (t <= times.front()) return values.front();
  if (t >= times.back()) return values.back();
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - times.begin()) - 1;
  const double w = (t - times[i]) / (times[i + 1] - times[i]);
  return (1.0 - w) * values[i] + w * values[i + 1];
}

}  // namespace

FundamentalPath compute_fundamental(const TimeVaryingMatrix& A, double t0, double t_end,
                                    double step) {
  if (!(step > 0.0) || !(t_end > t0)) {
    throw std::invalid_argument("compute_fundamental: need t_end > t0 and step > 0");
  }
  const int n = A.dim();
  const long n_steps = std::max<long>(1, std::lround(std::ceil((t_end - t0) / step - 1e-12)));
  const double h = (t_end - t0) / static_cast<double>(n_steps);

  FundamentalPath path;
  path.t0 = t0;
  path.times.reserve(n_steps + 1);
  path.w.reserve(n_steps + 1);

  Eigen::MatrixXd w = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd At(n, n), k1(n, n), k2(n, n), k3(n, n), k4(n, n);
  path.times.push_back(t0);
  path.w.push_back(w);

  for (long k = 0; k < n_steps; ++k) {
    const double tk = t0 + h * static_cast<double>(k);
    const double tm = tk + 0.5 * h;
    const double tn = t0 + h * static_cast<double>(k + 1);

    A.eval_into(tk, At);
    k1 = At * w;
    A.eval_into(tm, At);
    k2 = At * (w + (0.5 * h) * k1);
    k3 = At * (w + (0.5 * h) * k2);
    A.eval_into(tn, At);
    k4 = At * (w + h * k3);
    w += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    if (!w.allFinite()) {
      throw std::runtime_error("fundamental matrix became non-finite at t=" + std::to_string(tn));
    }
    path.times.push_back(tn);
    path.w.push_back(w);
  }

  const std::size_t count = path.times.size();
  path.sigma_max.resize(count);
  path.sigma_min.resize(count);
  path.log_norm.resize(count);
  path.c.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(path.w[i]);
    const auto& sv = svd.singularValues();
    path.sigma_max[i] = sv(0);
    path.sigma_min[i] = sv(sv.size() - 1);
    if (path.sigma_min[i] < 1e-300) {
      throw std::runtime_error("fundamental matrix numerically singular at t=" +
                               std::to_string(path.times[i]));
    }
    path.log_norm[i] = std::log(path.sigma_max[i]);
    double ci = path.sigma_max[i] / path.sigma_min[i];
    if (ci < 1.0) {
      path.c_clamped = true;
      ci = 1.0;
    }
    path.c[i] = ci;
  }

  path.p.resize(count);
  if (count == 1) {
    path.p[0] = 0.0;
  } else {
    path.p[0] = (path.log_norm[1] - path.log_norm[0]) / (path.times[1] - path.times[0]);
    path.p[count - 1] = (path.log_norm[count - 1] - path.log_norm[count - 2]) /
                        (path.times[count - 1] - path.times[count - 2]);
    for (std::size_t i = 1; i + 1 < count; ++i) {
      path.p[i] =
          (path.log_norm[i + 1] - path.log_norm[i - 1]) / (path.times[i + 1] - path.times[i - 1]);
    }
  }

  // Kink diagnostics: p jumps an order of magnitude above neighboring jumps.
  for (std::size_t i = 1; i + 1 < count; ++i) {
    const double jump = std::abs(path.p[i + 1] - path.p[i]);
    const double prev = std::abs(path.p[i] - path.p[i - 1]);
    if (jump > 10.0 * std::max(prev, 1e-12)) {
      path.kink_knots.push_back(i);
    }
  }

  return path;
}

double growth_rate_p(const FundamentalPath& path, double t) {
  if (t < path.t0 - 1e-9 || t > path.t_end() + 1e-9) {
    throw std::out_of_range("growth_rate_p: t outside the path domain");
  }
  return interp_samples(path.times, path.p, t);
}

double condition_number_c(const FundamentalPath& path, double t) {
  if (t < path.t0 - 1e-9 || t > path.t_end() + 1e-9) {
    throw std::out_of_range("condition_number_c: t outside the path domain");
  }
  return std::max(1.0, interp_samples(path.times, path.c, t));
}

}  // namespace delaybound
