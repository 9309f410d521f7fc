#pragma once

#include <span>
#include <vector>

namespace bumpfn {

// Truncated Taylor expansion sum_{k<=m} c_k (x - center)^k. Arithmetic
// truncates at order m; operands must share order and center.
class Jet {
 public:
  Jet(double center, int order);  // zero jet
  Jet(double center, std::vector<double> coefficients);

  static Jet constant(double center, int order, double value);

  double center() const noexcept { return center_; }
  int order() const noexcept { return static_cast<int>(coefficients_.size()) - 1; }
  std::span<const double> coefficients() const noexcept { return coefficients_; }
  double operator[](int k) const { return coefficients_[static_cast<std::size_t>(k)]; }

  double value() const noexcept { return coefficients_.front(); }
  // m-th derivative at the center: m! c_m.
  double derivative(int m) const;
  bool is_zero() const noexcept;

  Jet& operator+=(const Jet& other);
  Jet& operator-=(const Jet& other);
  Jet& operator*=(const Jet& other);
  // Throws std::domain_error when other has a zero constant term.
  Jet& operator/=(const Jet& other);
  Jet& operator*=(double s);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, const Jet& b) { return a *= b; }
  friend Jet operator/(Jet a, const Jet& b) { return a /= b; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }

 private:
  void check_compatible(const Jet& other) const;

  double center_;
  std::vector<double> coefficients_;
};

// Jet at x of phi(slope * (x - x0) + s0), given the jet of phi at s0:
// coefficients scale by slope^k.
Jet compose_affine(const Jet& jet_of_phi, double slope, double new_center);

}  // namespace bumpfn
