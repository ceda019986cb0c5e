#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace sixv {

/// Phase regions of the six-vertex model, classified by
/// Delta = (a^2 + b^2 - c^2) / (2ab).
enum class Phase { Ferroelectric, Antiferroelectric, Disordered, Boundary };

inline std::string phase_name(Phase p) {
  switch (p) {
    case Phase::Ferroelectric: return "FE";
    case Phase::Antiferroelectric: return "AFE";
    case Phase::Disordered: return "DO";
    case Phase::Boundary: return "boundary";
  }
  return "?";
}

/// Boltzmann weights (a, a, b, b, c, c) under the zero-field pairing.
/// The reparameterized pair (lambda, mu) normalizes c = 1 so that only
/// crossings (lambda^2 each) and straights (mu each) carry weight.
struct Weights {
  double a = 1.0;
  double b = 1.0;
  double c = 1.0;

  Weights() = default;
  Weights(double a_, double b_, double c_) : a(a_), b(b_), c(c_) {
    if (!(a > 0.0 && b > 0.0 && c > 0.0))
      throw std::invalid_argument("weights must be strictly positive");
  }

  double lambda() const { return a / c; }
  double mu() const { return b / c; }

  static Weights from_lambda_mu(double lambda, double mu) {
    return Weights(lambda, mu, 1.0);
  }
};

inline double delta(const Weights& w) {
  return (w.a * w.a + w.b * w.b - w.c * w.c) / (2.0 * w.a * w.b);
}

inline Phase classify_phase(const Weights& w) {
  const double d = delta(w);
  if (d > 1.0) return Phase::Ferroelectric;
  if (d < -1.0) return Phase::Antiferroelectric;
  if (std::abs(d) < 1.0) return Phase::Disordered;
  return Phase::Boundary;
}

/// Inequality characterization of the phases; must agree with
/// classify_phase away from the boundary (a property test asserts this).
inline bool is_ferroelectric(const Weights& w) {
  return w.a > w.b + w.c || w.b > w.a + w.c;
}

inline bool is_antiferroelectric(const Weights& w) {
  return w.a + w.b < w.c;
}

}  // namespace sixv
