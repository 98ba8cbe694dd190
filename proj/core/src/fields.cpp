#include "gaborflow/fields.hpp"

#include <algorithm>
#include <cmath>

namespace gaborflow {

std::vector<double> PhaseField::modulus() const {
  std::vector<double> m(data.size());
  for (size_t i = 0; i < data.size(); ++i) m[i] = std::abs(data[i]);
  return m;
}

std::vector<double> PhaseField2::modulus() const {
  std::vector<double> m(data.size());
  for (size_t i = 0; i < data.size(); ++i) m[i] = std::abs(data[i]);
  return m;
}

double field_norm(const std::vector<cplx>& v) {
  double s = 0.0;
  for (const cplx& z : v) s += std::norm(z);
  return std::sqrt(s);
}

double max_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (const cplx& z : v) m = std::max(m, std::abs(z));
  return m;
}

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace gaborflow
