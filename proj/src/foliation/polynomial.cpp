#include "pseudoabel/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace pseudoabel {

namespace {

inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double z = s - a;
  e = (a - (s - z)) + (b - z);
}

inline void two_prod(double a, double b, double& p, double& e) {
  p = a * b;
  e = std::fma(a, b, -p);
}

}  // namespace

Polynomial2::Polynomial2(std::span<const Monomial> terms) {
  int nx = 0;
  int ny = 0;
  for (const auto& m : terms) {
    nx = std::max(nx, m.i + 1);
    ny = std::max(ny, m.j + 1);
  }
  resize(nx, ny);
  for (const auto& m : terms) at(m.i, m.j) += m.c;
  trim();
}

Polynomial2 Polynomial2::constant(double c) { return Polynomial2{{0, 0, c}}; }

void Polynomial2::resize(int nx, int ny) {
  nx_ = nx;
  ny_ = ny;
  c_.assign(static_cast<std::size_t>(nx) * ny, 0.0);
}

void Polynomial2::trim() {
  int nx = 0;
  int ny = 0;
  for (int i = 0; i < nx_; ++i) {
    for (int j = 0; j < ny_; ++j) {
      if (at(i, j) != 0.0) {
        nx = std::max(nx, i + 1);
        ny = std::max(ny, j + 1);
      }
    }
  }
  if (nx == nx_ && ny == ny_) return;
  std::vector<double> c(static_cast<std::size_t>(nx) * ny, 0.0);
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) c[static_cast<std::size_t>(i) * ny + j] = at(i, j);
  }
  nx_ = nx;
  ny_ = ny;
  c_ = std::move(c);
}

double Polynomial2::operator()(double x, double y) const {
  if (nx_ == 0) return 0.0;
  double s = 0.0;
  double c = 0.0;
  for (int i = nx_ - 1; i >= 0; --i) {
    // Row value hi + lo by compensated Horner in y.
    double hi = at(i, ny_ - 1);
    double lo = 0.0;
    for (int j = ny_ - 2; j >= 0; --j) {
      double p, pe, se;
      two_prod(hi, y, p, pe);
      two_sum(p, at(i, j), hi, se);
      lo = lo * y + (pe + se);
    }
    if (i == nx_ - 1) {
      s = hi;
      c = lo;
      continue;
    }
    double p, pe, se;
    two_prod(s, x, p, pe);
    two_sum(p, hi, s, se);
    c = c * x + (pe + se + lo);
  }
  return s + c;
}

double Polynomial2::coef(int i, int j) const {
  if (i < 0 || j < 0 || i >= nx_ || j >= ny_) return 0.0;
  return at(i, j);
}

int Polynomial2::degree() const {
  int d = -1;
  for (int i = 0; i < nx_; ++i) {
    for (int j = 0; j < ny_; ++j) {
      if (at(i, j) != 0.0) d = std::max(d, i + j);
    }
  }
  return d;
}

bool Polynomial2::is_zero() const { return nx_ == 0; }

bool Polynomial2::is_constant() const { return degree() <= 0; }

double Polynomial2::max_abs_coef() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

std::vector<Monomial> Polynomial2::monomials() const {
  std::vector<Monomial> out;
  for (int i = 0; i < nx_; ++i) {
    for (int j = 0; j < ny_; ++j) {
      if (at(i, j) != 0.0) out.push_back({i, j, at(i, j)});
    }
  }
  return out;
}

Polynomial2 Polynomial2::dx() const {
  std::vector<Monomial> t;
  for (const auto& m : monomials()) {
    if (m.i > 0) t.push_back({m.i - 1, m.j, m.c * m.i});
  }
  return Polynomial2(t);
}

Polynomial2 Polynomial2::dy() const {
  std::vector<Monomial> t;
  for (const auto& m : monomials()) {
    if (m.j > 0) t.push_back({m.i, m.j - 1, m.c * m.j});
  }
  return Polynomial2(t);
}

Polynomial2 operator+(const Polynomial2& a, const Polynomial2& b) {
  auto t = a.monomials();
  for (const auto& m : b.monomials()) t.push_back(m);
  return Polynomial2(t);
}

Polynomial2 operator-(const Polynomial2& a, const Polynomial2& b) {
  return a + (-1.0) * b;
}

Polynomial2 operator*(double s, const Polynomial2& a) {
  auto t = a.monomials();
  for (auto& m : t) m.c *= s;
  return Polynomial2(t);
}

Polynomial2 operator*(const Polynomial2& a, const Polynomial2& b) {
  std::vector<Monomial> t;
  for (const auto& u : a.monomials()) {
    for (const auto& v : b.monomials()) t.push_back({u.i + v.i, u.j + v.j, u.c * v.c});
  }
  return Polynomial2(t);
}

std::optional<Polynomial2> Polynomial2::divide_exact(const Polynomial2& d,
                                                     double rel_tol) const {
  if (d.is_zero()) return std::nullopt;
  if (is_zero()) return Polynomial2{};
  const double tol = rel_tol * std::max(max_abs_coef(), 1e-300);
  // Lex order x > y; a single divisor is a Groebner basis, so the remainder
  // vanishes exactly when d divides.
  const auto lead = [](const std::vector<Monomial>& ms) {
    return *std::max_element(ms.begin(), ms.end(), [](const auto& l, const auto& r) {
      return l.i != r.i ? l.i < r.i : l.j < r.j;
    });
  };
  const Monomial ld = lead(d.monomials());
  Polynomial2 rem = *this;
  std::vector<Monomial> quot;
  for (int guard = 0; guard < 100000; ++guard) {
    auto ms = rem.monomials();
    std::erase_if(ms, [&](const Monomial& m) { return std::abs(m.c) <= tol; });
    if (ms.empty()) return Polynomial2(quot);
    const Monomial lr = lead(ms);
    if (lr.i < ld.i || lr.j < ld.j) return std::nullopt;
    const Monomial q{lr.i - ld.i, lr.j - ld.j, lr.c / ld.c};
    quot.push_back(q);
    Polynomial2 cleaned(ms);
    Polynomial2 sub = Polynomial2{q} * d;
    rem = cleaned - sub;
    // Drop the cancelled leading coefficient exactly.
    auto rs = rem.monomials();
    std::erase_if(rs, [&](const Monomial& m) { return m.i == lr.i && m.j == lr.j; });
    rem = Polynomial2(rs);
  }
  return std::nullopt;
}

}  // namespace pseudoabel
