#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pseudoabel/error.hpp"
#include "pseudoabel/polynomial.hpp"

namespace pseudoabel {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

struct Box {
  double xmin = -1.0;
  double xmax = 1.0;
  double ymin = -1.0;
  double ymax = 1.0;

  bool contains(Vec2 p) const {
    return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
  }
  double diameter() const;
};

// f = prod p_j^{lambda_j} on the component where every p_j > 0.  Exponents
// may repeat, so they are kept as a plain list rather than a Spectrum.
class DarbouxSystem {
 public:
  DarbouxSystem(std::vector<Polynomial2> polys, std::vector<double> exponents,
                Box box);

  std::size_t size() const { return polys_.size(); }
  const std::vector<Polynomial2>& polys() const { return polys_; }
  const std::vector<double>& exponents() const { return exponents_; }
  const Box& box() const { return box_; }

  double p(std::size_t j, double x, double y) const { return polys_[j](x, y); }
  Vec2 grad(std::size_t j, double x, double y) const {
    return {dx_[j](x, y), dy_[j](x, y)};
  }
  // min_j p_j(x, y).
  double min_p(double x, double y) const;

  // log f, -inf outside the positive component.
  double log_f(double x, double y) const;
  // grad log f and its Hessian (hxx, hxy, hyy); requires every p_j > 0.
  Vec2 grad_log_f(double x, double y) const;
  void hessian_log_f(double x, double y, double h[3]) const;

 private:
  std::vector<Polynomial2> polys_, dx_, dy_, dxx_, dxy_, dyy_;
  std::vector<double> exponents_;
  Box box_;
};

// (A dx + B dy) / prod p_j^{k_j}.
struct AdmissibleForm {
  Polynomial2 A;
  Polynomial2 B;
  std::vector<int> denom_powers;
  // Declared m_0; negative means max of denom_powers.
  int max_pole_order = -1;
};

struct Oval {
  std::vector<Vec2> points;
  std::vector<Vec2> tangents;  // unit, along the counterclockwise traversal
  std::vector<double> residuals;  // |f - t|
  double t = 0.0;
  Vec2 center;
  double arc_length = 0.0;
  double closure_gap = 0.0;
  int winding = 0;
  double start_angle = 0.0;
};

double first_integral_eval(const DarbouxSystem& sys, double x, double y);
Vec2 theta_eval(const DarbouxSystem& sys, double x, double y);

struct CenterInfo {
  Vec2 center;
  double t_center = 0.0;
  double t_low = 0.0;  // closed ovals for t in (t_low, t_center)
};

CenterInfo find_center(const DarbouxSystem& sys, Vec2 seed);

struct TraceOptions {
  double level_tol_rel = 1e-10;
  double trace_tol_rel = 1e-8;
  // Start section: ray from the center at this angle.
  double start_angle = 0.0;
  double max_turn = 0.01;
  double max_step_rel = 0.005;  // relative to the box diameter
  int max_steps = 400000;
  std::optional<Vec2> seed;
};

Oval trace_oval(const DarbouxSystem& sys, double t, const TraceOptions& opts = {});

struct IntegralResult {
  double value = 0.0;
  double error = 0.0;
};

IntegralResult integrate_form(const DarbouxSystem& sys, const Oval& oval,
                              const AdmissibleForm& omega);

struct ScanSample {
  double t = 0.0;
  double value = 0.0;
  double error = 0.0;
  std::string status = "ok";
};

std::vector<ScanSample> integral_scan(const DarbouxSystem& sys,
                                      const AdmissibleForm& omega,
                                      std::span<const double> ts,
                                      const TraceOptions& opts = {});
std::vector<ScanSample> integral_scan_serial(const DarbouxSystem& sys,
                                             const AdmissibleForm& omega,
                                             std::span<const double> ts,
                                             const TraceOptions& opts = {});

struct CornerArc {
  std::vector<double> x;
  std::vector<double> y;
};

// Leaf y = t^{1/mu} x^{-lambda/mu} for x in [t^{1/lambda}, 1].
CornerArc corner_curve(double lambda, double mu, double t, int samples = 65);

// Integral of x^{p-1} y^q dx along the corner leaf, x increasing.
double corner_monomial_integral(int p, int q, double lambda, double mu, double t);

struct CornerOptions {
  // C with f o psi^{-1} = C X^lambda Y^mu.
  double normalization = 1.0;
  std::optional<Vec2> seed;
  double box = 0.25;
  double residual_tol = 1e-8;
  double transversality_tol = 1e-6;
  int grid = 12;
};

struct CornerMap {
  std::shared_ptr<const DarbouxSystem> sys;
  int i = 0;
  int j = 1;
  int order = 1;
  Vec2 corner;
  double lambda = 1.0;
  double mu = 1.0;
  double normalization = 1.0;
  double box = 0.0;  // certified square (0, box]^2 in (X, Y)
  double transversality = 0.0;
  double max_residual = 0.0;

  Vec2 forward(double x, double y) const;
  Vec2 inverse(double X, double Y) const;
};

CornerMap linearize_corner(const DarbouxSystem& sys, int i, int j, int order = 1,
                           const CornerOptions& opts = {});

struct AdmissibilityReport {
  bool admissible = false;
  std::vector<int> effective_orders;
  std::string reason;
};

AdmissibilityReport admissibility_check(const DarbouxSystem& sys,
                                        const AdmissibleForm& omega);

// Form theta = sum lambda_j dp_j / p_j as an AdmissibleForm.
AdmissibleForm theta_form(const DarbouxSystem& sys);

}  // namespace pseudoabel
