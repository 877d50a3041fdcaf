#pragma once

#include <span>
#include <vector>

namespace sks {

// Solves a tridiagonal system in place; sub[0] and sup[n-1] are ignored.
// diag and rhs are overwritten (rhs holds the solution on return).
void thomas_solve(std::span<const double> sub, std::span<double> diag,
                  std::span<const double> sup, std::span<double> rhs);

// Natural cubic spline through strictly increasing knots.
class CubicSpline {
 public:
  CubicSpline(std::vector<double> x, std::vector<double> y);
  // clamps to the end values outside the knot range
  double operator()(double t) const;
  double front() const { return x_.front(); }
  double back() const { return x_.back(); }

 private:
  std::vector<double> x_, y_, m_;
};

// Trapezoid rule on a uniform grid of spacing h.
double trapezoid(std::span<const double> f, double h);

// Centered differences inside, one-sided first order at the two ends.
std::vector<double> gradient(std::span<const double> f, double h);

// Five-point centered differences inside, the three-point rule next to the ends.
std::vector<double> gradient4(std::span<const double> f, double h);

// Pairwise (fixed-tree) summation; result independent of worker layout.
double pairwise_sum(std::span<const double> v);

}  // namespace sks
