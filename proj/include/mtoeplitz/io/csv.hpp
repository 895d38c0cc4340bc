#pragma once

#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "mtoeplitz/experiments/report.hpp"
#include "mtoeplitz/operator.hpp"
#include "mtoeplitz/sequence.hpp"

namespace mtoeplitz {

/// 17 significant digits: enough to round-trip any double.
inline std::string format_real(double v) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return os.str();
}

/// One matrix row per line, entries separated by commas.
inline void write_csv(std::ostream& os, const TruncatedMatrix& A) {
  for (std::size_t i = 1; i <= A.dimension(); ++i) {
    for (std::size_t j = 1; j <= A.dimension(); ++j) {
      if (j > 1) os << ',';
      os << format_real(A(i, j));
    }
    os << '\n';
  }
}

/// Lines "n,value" for n = 1..N.
inline void write_csv(std::ostream& os, const TruncatedSequence& x) {
  os << "n,value\n";
  for (std::size_t n = 1; n <= x.size(); ++n) os << n << ',' << format_real(x(n)) << '\n';
}

/// Measurement series in long format: step,name,value.
inline void write_csv(std::ostream& os, const ExperimentReport& r) {
  os << "step,name,value\n";
  for (const auto& [name, s] : r.measurements) {
    for (std::size_t i = 0; i < s.size(); ++i) os << i << ',' << name << ',' << format_real(s[i]) << '\n';
  }
}

}  // namespace mtoeplitz
