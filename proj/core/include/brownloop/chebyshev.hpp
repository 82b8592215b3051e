#pragma once

#include <functional>
#include <vector>

namespace brownloop {

/// Piecewise Chebyshev interpolant of a smooth function on [a, b].
///
/// The interval is cut into equal panels; on each panel the function is
/// sampled at Chebyshev points of the first kind and represented by its
/// Chebyshev series. Evaluation and the first derivative use Clenshaw
/// recurrences. Outside [a, b] evaluation throws.
class ChebyshevTable {
 public:
  ChebyshevTable() = default;
  ChebyshevTable(const std::function<double(double)>& f, double a, double b, int panels, int degree);

  double operator()(double x) const;
  double derivative(double x) const;

  double lower() const { return a_; }
  double upper() const { return b_; }
  bool empty() const { return coeffs_.empty(); }

 private:
  int panel_of(double x) const;

  double a_ = 0.0;
  double b_ = 0.0;
  double width_ = 1.0;
  int panels_ = 0;
  int degree_ = 0;
  std::vector<double> coeffs_;        // panels_ * (degree_ + 1)
  std::vector<double> deriv_coeffs_;  // panels_ * degree_
};

}  // namespace brownloop
