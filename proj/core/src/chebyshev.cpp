#include "brownloop/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace brownloop {

namespace {

double clenshaw(const double* c, int count, double u) {
  double b1 = 0.0;
  double b2 = 0.0;
  for (int k = count - 1; k >= 1; --k) {
    const double b0 = 2.0 * u * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return u * b1 - b2 + c[0];
}

}  // namespace

ChebyshevTable::ChebyshevTable(const std::function<double(double)>& f, double a, double b, int panels,
                               int degree)
    : a_(a), b_(b), width_((b - a) / panels), panels_(panels), degree_(degree) {
  if (!(b > a) || panels < 1 || degree < 2) throw std::invalid_argument("ChebyshevTable: bad layout");
  const int m = degree + 1;
  coeffs_.assign(static_cast<std::size_t>(panels) * m, 0.0);
  deriv_coeffs_.assign(static_cast<std::size_t>(panels) * degree, 0.0);
  std::vector<double> samples(m);
  std::vector<double> theta(m);
  for (int k = 0; k < m; ++k) theta[k] = std::numbers::pi * (k + 0.5) / m;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width_;
    for (int k = 0; k < m; ++k) samples[k] = f(lo + 0.5 * width_ * (std::cos(theta[k]) + 1.0));
    double* c = &coeffs_[static_cast<std::size_t>(p) * m];
    for (int j = 0; j < m; ++j) {
      double acc = 0.0;
      for (int k = 0; k < m; ++k) acc += samples[k] * std::cos(j * theta[k]);
      c[j] = (j == 0 ? 1.0 : 2.0) * acc / m;
    }
    // Derivative series in u, then scaled by du/dx = 2 / width.
    double* d = &deriv_coeffs_[static_cast<std::size_t>(p) * degree];
    std::vector<double> dc(m + 1, 0.0);
    for (int j = m - 1; j >= 1; --j) dc[j - 1] = dc[j + 1] + 2.0 * j * c[j];
    dc[0] *= 0.5;
    for (int j = 0; j < degree; ++j) d[j] = dc[j] * 2.0 / width_;
  }
}

int ChebyshevTable::panel_of(double x) const {
  if (coeffs_.empty()) throw std::logic_error("ChebyshevTable: empty table");
  if (x < a_ || x > b_) throw std::out_of_range("ChebyshevTable: argument outside table range");
  return std::clamp(static_cast<int>((x - a_) / width_), 0, panels_ - 1);
}

double ChebyshevTable::operator()(double x) const {
  const int p = panel_of(x);
  const double u = 2.0 * (x - (a_ + p * width_)) / width_ - 1.0;
  return clenshaw(&coeffs_[static_cast<std::size_t>(p) * (degree_ + 1)], degree_ + 1, u);
}

double ChebyshevTable::derivative(double x) const {
  const int p = panel_of(x);
  const double u = 2.0 * (x - (a_ + p * width_)) / width_ - 1.0;
  return clenshaw(&deriv_coeffs_[static_cast<std::size_t>(p) * degree_], degree_, u);
}

}  // namespace brownloop
