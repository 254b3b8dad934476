#pragma once

#include <optional>
#include <span>
#include <vector>

namespace pseudoabel {

struct Monomial {
  int i = 0;  // power of x
  int j = 0;  // power of y
  double c = 0.0;
};

// Dense bivariate polynomial sum c_ij x^i y^j.
class Polynomial2 {
 public:
  Polynomial2() = default;
  explicit Polynomial2(std::span<const Monomial> terms);
  Polynomial2(std::initializer_list<Monomial> terms)
      : Polynomial2(std::span<const Monomial>(terms.begin(), terms.size())) {}

  static Polynomial2 constant(double c);

  // Compensated Horner in y, then in x.
  double operator()(double x, double y) const;

  double coef(int i, int j) const;
  int deg_x() const { return nx_ - 1; }
  int deg_y() const { return ny_ - 1; }
  int degree() const;
  bool is_zero() const;
  bool is_constant() const;
  double max_abs_coef() const;
  std::vector<Monomial> monomials() const;

  Polynomial2 dx() const;
  Polynomial2 dy() const;

  // Quotient when d divides *this, terms below rel_tol * scale ignored.
  std::optional<Polynomial2> divide_exact(const Polynomial2& d,
                                          double rel_tol = 1e-12) const;

  friend Polynomial2 operator+(const Polynomial2& a, const Polynomial2& b);
  friend Polynomial2 operator-(const Polynomial2& a, const Polynomial2& b);
  friend Polynomial2 operator*(const Polynomial2& a, const Polynomial2& b);
  friend Polynomial2 operator*(double s, const Polynomial2& a);

 private:
  void resize(int nx, int ny);
  double& at(int i, int j) { return c_[static_cast<std::size_t>(i) * ny_ + j]; }
  double at(int i, int j) const { return c_[static_cast<std::size_t>(i) * ny_ + j]; }
  void trim();

  int nx_ = 0;
  int ny_ = 0;
  std::vector<double> c_;
};

}  // namespace pseudoabel
