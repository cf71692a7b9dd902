#include "evo/radical.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace evo {

RadicalNumber RadicalNumber::generator(int n, const Rational& q) {
  if (n < 1 || n > 3) throw std::invalid_argument("radical degree must be 1, 2 or 3");
  if (n == 2 && q < 0) throw std::domain_error("square root of a negative rational");
  if (auto r = exact_root(q, n)) return RadicalNumber(*r);
  RadicalNumber g;
  g.degree_ = n;
  g.radicand_ = q;
  g.coeffs_ = {Rational(0), Rational(1), Rational(0)};
  return g;
}

bool RadicalNumber::is_rational() const { return coeffs_[1] == 0 && coeffs_[2] == 0; }

std::optional<Rational> RadicalNumber::rational() const {
  if (!is_rational()) return std::nullopt;
  return coeffs_[0];
}

double RadicalNumber::to_double() const {
  double r = 0.0;
  if (degree_ == 2) r = std::sqrt(radicand_.get_d());
  if (degree_ == 3) r = std::cbrt(radicand_.get_d());
  return coeffs_[0].get_d() + coeffs_[1].get_d() * r + coeffs_[2].get_d() * r * r;
}

std::string RadicalNumber::str() const {
  if (is_rational()) return coeffs_[0].get_str();
  const std::string root = (degree_ == 2 ? "sqrt(" : "cbrt(") + radicand_.get_str() + ")";
  std::string out;
  auto append = [&](const Rational& c, const std::string& monomial) {
    if (c == 0) return;
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    Rational mag = abs(c);
    if (monomial.empty()) {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str() + "*";
      out += monomial;
    }
  };
  append(coeffs_[0], "");
  append(coeffs_[1], root);
  append(coeffs_[2], root + "^2");
  return out;
}

void RadicalNumber::adopt_field(const RadicalNumber& other) {
  if (other.degree_ == 1) return;
  if (degree_ == 1) {
    degree_ = other.degree_;
    radicand_ = other.radicand_;
    return;
  }
  if (degree_ != other.degree_ || radicand_ != other.radicand_) {
    throw std::domain_error("arithmetic across different radical fields");
  }
}

RadicalNumber RadicalNumber::operator-() const {
  RadicalNumber r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

RadicalNumber& RadicalNumber::operator+=(const RadicalNumber& rhs) {
  adopt_field(rhs);
  for (int i = 0; i < 3; ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

RadicalNumber& RadicalNumber::operator-=(const RadicalNumber& rhs) {
  adopt_field(rhs);
  for (int i = 0; i < 3; ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

RadicalNumber& RadicalNumber::operator*=(const RadicalNumber& rhs) {
  adopt_field(rhs);
  std::array<Rational, 5> full{};
  for (int i = 0; i < 3; ++i) {
    if (coeffs_[i] == 0) continue;
    for (int j = 0; j < 3; ++j) {
      if (rhs.coeffs_[j] == 0) continue;
      full[i + j] += coeffs_[i] * rhs.coeffs_[j];
    }
  }
  // reduce modulo r^n = q
  const int n = degree_;
  for (int k = 4; k >= n; --k) {
    if (full[k] == 0) continue;
    full[k - n] += full[k] * radicand_;
    full[k] = 0;
  }
  for (int i = 0; i < 3; ++i) coeffs_[i] = full[i];
  return *this;
}

RadicalNumber RadicalNumber::inverse() const {
  const Rational& a = coeffs_[0];
  const Rational& b = coeffs_[1];
  const Rational& c = coeffs_[2];
  const Rational& q = radicand_;
  RadicalNumber r = *this;
  if (degree_ == 1 || is_rational()) {
    if (a == 0) throw std::domain_error("division by zero");
    r.coeffs_ = {Rational(1 / a), 0, 0};
    return r;
  }
  if (degree_ == 2) {
    const Rational norm = a * a - b * b * q;
    if (norm == 0) throw std::domain_error("division by zero");
    r.coeffs_ = {Rational(a / norm), Rational(-b / norm), 0};
    return r;
  }
  // (a + b r + c r^2)^-1 via the adjugate of the multiplication map.
  const Rational norm = a * a * a + b * b * b * q + c * c * c * q * q - 3 * a * b * c * q;
  if (norm == 0) throw std::domain_error("division by zero");
  r.coeffs_ = {Rational((a * a - b * c * q) / norm), Rational((c * c * q - a * b) / norm),
               Rational((b * b - a * c) / norm)};
  return r;
}

RadicalNumber& RadicalNumber::operator/=(const RadicalNumber& rhs) {
  adopt_field(rhs);
  RadicalNumber inv = rhs;
  if (inv.degree_ == 1) {
    inv.degree_ = degree_;
    inv.radicand_ = radicand_;
  }
  return *this *= inv.inverse();
}

bool operator==(const RadicalNumber& a, const RadicalNumber& b) {
  if (a.degree_ != 1 && b.degree_ != 1 && (a.degree_ != b.degree_ || a.radicand_ != b.radicand_)) {
    throw std::domain_error("comparison across different radical fields");
  }
  return a.coeffs_ == b.coeffs_;
}

std::ostream& operator<<(std::ostream& os, const RadicalNumber& x) { return os << x.str(); }

double CubeRoot::to_double() const { return std::cbrt(cube_.get_d()); }

std::string CubeRoot::str() const {
  if (auto r = rational()) return r->get_str();
  return "cbrt(" + cube_.get_str() + ")";
}

std::ostream& operator<<(std::ostream& os, const CubeRoot& x) { return os << x.str(); }

bool equals_cube_root(const RadicalNumber& x, const CubeRoot& c) {
  const RadicalNumber cubed = x * x * x;
  return cubed == RadicalNumber(c.cube());
}

}  // namespace evo
