#include "bumpfn/jet.hpp"

#include <algorithm>
#include <stdexcept>

namespace bumpfn {

Jet::Jet(double center, int order) : center_(center) {
  if (order < 0) throw std::invalid_argument("jet order must be >= 0");
  coefficients_.assign(static_cast<std::size_t>(order) + 1, 0.0);
}

Jet::Jet(double center, std::vector<double> coefficients)
    : center_(center), coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) throw std::invalid_argument("jet needs at least one coefficient");
}

Jet Jet::constant(double center, int order, double value) {
  Jet j(center, order);
  j.coefficients_[0] = value;
  return j;
}

double Jet::derivative(int m) const {
  double factorial = 1.0;
  for (int j = 2; j <= m; ++j) factorial *= j;
  return factorial * (*this)[m];
}

bool Jet::is_zero() const noexcept {
  return std::all_of(coefficients_.begin(), coefficients_.end(), [](double c) { return c == 0.0; });
}

void Jet::check_compatible(const Jet& other) const {
  if (other.order() != order() || other.center_ != center_) {
    throw std::invalid_argument("jets differ in order or center");
  }
}

Jet& Jet::operator+=(const Jet& other) {
  check_compatible(other);
  for (std::size_t k = 0; k < coefficients_.size(); ++k) coefficients_[k] += other.coefficients_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& other) {
  check_compatible(other);
  for (std::size_t k = 0; k < coefficients_.size(); ++k) coefficients_[k] -= other.coefficients_[k];
  return *this;
}

Jet& Jet::operator*=(const Jet& other) {
  check_compatible(other);
  const std::size_t n = coefficients_.size();
  std::vector<double> product(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j <= k; ++j) product[k] += coefficients_[j] * other.coefficients_[k - j];
  }
  coefficients_ = std::move(product);
  return *this;
}

Jet& Jet::operator/=(const Jet& other) {
  check_compatible(other);
  const double b0 = other.coefficients_[0];
  if (b0 == 0.0) throw std::domain_error("jet division by a jet with zero constant term");
  const std::size_t n = coefficients_.size();
  std::vector<double> quotient(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double acc = coefficients_[k];
    for (std::size_t j = 0; j < k; ++j) acc -= quotient[j] * other.coefficients_[k - j];
    quotient[k] = acc / b0;
  }
  coefficients_ = std::move(quotient);
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (double& c : coefficients_) c *= s;
  return *this;
}

Jet compose_affine(const Jet& jet_of_phi, double slope, double new_center) {
  std::vector<double> c(jet_of_phi.coefficients().begin(), jet_of_phi.coefficients().end());
  double scale = 1.0;
  for (double& ck : c) {
    ck *= scale;
    scale *= slope;
  }
  return Jet(new_center, std::move(c));
}

}  // namespace bumpfn
