#include "sheetwalk/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace sheetwalk {
namespace {

// 15-point Kronrod abscissae on [-1,1] (non-negative half) with Kronrod
// weights, and the embedded 7-point Gauss weights on the odd-indexed nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Gk15 {
  double kronrod;
  double err;
};

Gk15 gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = kWgk[7] * fc;
  double gauss = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double x = h * kXgk[i];
    const double fs = f(c - x) + f(c + x);
    kron += kWgk[i] * fs;
    if (i % 2 == 1) gauss += kWg[i / 2] * fs;
  }
  kron *= h;
  gauss *= h;
  return {kron, std::abs(kron - gauss)};
}

void adapt(const std::function<double(double)>& f, double a, double b,
           double tol, int depth, QuadratureResult& out) {
  const Gk15 g = gk15(f, a, b);
  if (g.err <= tol || depth >= 52) {
    out.value += g.kronrod;
    out.error_estimate += g.err;
    out.segments += 1;
    return;
  }
  const double c = 0.5 * (a + b);
  adapt(f, a, c, 0.5 * tol, depth + 1, out);
  adapt(f, c, b, 0.5 * tol, depth + 1, out);
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double abs_tol) {
  if (!(b >= a)) throw std::invalid_argument("integrate: need b >= a");
  if (!(abs_tol > 0.0)) throw std::invalid_argument("integrate: abs_tol must be positive");
  QuadratureResult out;
  if (a == b) return out;
  adapt(f, a, b, abs_tol, 0, out);
  return out;
}

}  // namespace sheetwalk
