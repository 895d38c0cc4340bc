#pragma once

#include <cmath>
#include <map>
#include <sstream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "mtoeplitz/error.hpp"

namespace mtoeplitz {

enum class Verdict { pass, fail, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

/// Record of one harness run. Measurements are named series; a rerun with
/// the same config reproduces them bit for bit.
struct ExperimentReport {
  std::string id;
  nlohmann::json config = nlohmann::json::object();
  std::map<std::string, std::vector<double>> measurements;
  Verdict verdict = Verdict::inconclusive;
  std::map<std::string, double> tolerances;
  std::vector<std::string> notes;

  std::vector<double>& series(const std::string& name) { return measurements[name]; }
  const std::vector<double>& series(const std::string& name) const {
    const auto it = measurements.find(name);
    if (it == measurements.end()) throw PreconditionFailed("report has no series '" + name + "'");
    return it->second;
  }
  double last(const std::string& name) const {
    const auto& s = series(name);
    if (s.empty()) throw PreconditionFailed("series '" + name + "' is empty");
    return s.back();
  }
};

/// Six significant digits, for labels and notes.
inline std::string format_real_short(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

/// Least-squares slope of log y against log x.
inline double fit_log_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw PreconditionFailed("slope fit needs at least two matching points");
  }
  double mx = 0, my = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw PreconditionFailed("slope fit needs distinct abscissae");
  return sxy / sxx;
}

/// Slope fitted over the points with x >= x_max / 100 (the last two decades).
inline double fit_last_two_decades(std::span<const double> x, std::span<const double> y) {
  if (x.empty()) throw PreconditionFailed("slope fit on an empty schedule");
  const double cut = x.back() / 100.0 * (1.0 - 1e-12);
  std::size_t first = 0;
  while (first < x.size() && x[first] < cut) ++first;
  if (x.size() - first < 2) first = x.size() >= 2 ? x.size() - 2 : 0;
  return fit_log_slope(x.subspan(first), y.subspan(first));
}

/// (S(x_max) - S(x_max / 10)) / S(x_max) for a nondecreasing partial-sum
/// series, using the last grid point at or below x_max / 10.
inline double last_decade_increment(std::span<const double> x, std::span<const double> s) {
  if (x.size() != s.size() || x.size() < 2) throw PreconditionFailed("need a schedule of partial sums");
  const double cut = x.back() / 10.0 * (1.0 + 1e-12);
  std::size_t j = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= cut) j = i;
  }
  if (s.back() == 0.0) return 0.0;
  return (s.back() - s[j]) / s.back();
}

}  // namespace mtoeplitz
