#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "eogden/error.hpp"

namespace eogden {

// Natural cubic spline (zero second derivative at both end knots). Outside the
// knot span the spline continues linearly, which is the natural extension.
class NaturalCubicSpline {
 public:
  NaturalCubicSpline(std::span<const double> x, std::span<const double> y) : x_(x.begin(), x.end()), y_(y.begin(), y.end()) {
    if (x_.size() != y_.size()) throw Error(ErrorKind::Shape, "spline knot abscissae and values differ in length");
    if (x_.size() < 2) throw Error(ErrorKind::DegenerateEnvelope, "spline needs at least two knots");
    for (std::size_t i = 1; i < x_.size(); ++i) {
      if (!(x_[i] > x_[i - 1])) throw Error(ErrorKind::Parameter, "spline knots must be strictly increasing");
    }
    solve_second_derivatives();
  }

  double operator()(double t) const { return eval_in(segment_of(t), t); }

  // Values at t = 0, 1, ..., count-1 in one forward sweep.
  std::vector<double> sample_grid(std::size_t count) const {
    std::vector<double> out(count);
    std::size_t seg = 0;
    const std::size_t last = x_.size() - 2;
    for (std::size_t i = 0; i < count; ++i) {
      const double t = static_cast<double>(i);
      while (seg < last && t > x_[seg + 1]) ++seg;
      out[i] = eval_in(seg, t);
    }
    return out;
  }

  std::span<const double> second_derivatives() const noexcept { return m_; }

 private:
  // Tridiagonal system for the interior second derivatives (Thomas algorithm).
  void solve_second_derivatives() {
    const std::size_t n = x_.size();
    m_.assign(n, 0.0);
    if (n < 3) return;
    const std::size_t k = n - 2;
    std::vector<double> diag(k), upper(k), rhs(k);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double h0 = x_[i] - x_[i - 1];
      const double h1 = x_[i + 1] - x_[i];
      diag[i - 1] = 2.0 * (h0 + h1);
      upper[i - 1] = h1;
      rhs[i - 1] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
    }
    // lower[i] = h of segment i, equal to upper[i-1]
    for (std::size_t i = 1; i < k; ++i) {
      const double w = upper[i - 1] / diag[i - 1];
      diag[i] -= w * upper[i - 1];
      rhs[i] -= w * rhs[i - 1];
    }
    m_[k] = rhs[k - 1] / diag[k - 1];
    for (std::size_t i = k - 1; i-- > 0;) {
      m_[i + 1] = (rhs[i] - upper[i] * m_[i + 2]) / diag[i];
    }
  }

  std::size_t segment_of(double t) const {
    std::size_t lo = 0, hi = x_.size() - 1;
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      (t > x_[mid] ? lo : hi) = mid;
    }
    return lo;
  }

  double eval_in(std::size_t seg, double t) const {
    const double h = x_[seg + 1] - x_[seg];
    if (t < x_.front()) {
      const double slope = (y_[1] - y_[0]) / h - h * (2.0 * m_[0] + m_[1]) / 6.0;
      return y_[0] + slope * (t - x_[0]);
    }
    if (t > x_.back()) {
      const double slope = (y_[seg + 1] - y_[seg]) / h + h * (m_[seg] + 2.0 * m_[seg + 1]) / 6.0;
      return y_[seg + 1] + slope * (t - x_[seg + 1]);
    }
    const double a = (x_[seg + 1] - t) / h;
    const double b = (t - x_[seg]) / h;
    return a * y_[seg] + b * y_[seg + 1] + ((a * a * a - a) * m_[seg] + (b * b * b - b) * m_[seg + 1]) * h * h / 6.0;
  }

  std::vector<double> x_, y_, m_;
};

}  // namespace eogden
