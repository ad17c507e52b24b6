#pragma once

#include <cstddef>

#include "spikectl/matrix.hpp"
#include "spikectl/matrixkit.hpp"

namespace spikectl {

/// x' = Ax + Bu, y = Cx.
class LtiPlant {
 public:
  LtiPlant(Matrix a, Matrix b, Matrix c);

  const Matrix& A() const noexcept { return a_; }
  const Matrix& B() const noexcept { return b_; }
  const Matrix& C() const noexcept { return c_; }
  std::size_t nx() const noexcept { return a_.rows(); }
  std::size_t nu() const noexcept { return b_.cols(); }
  std::size_t ny() const noexcept { return c_.rows(); }

  /// A + B K C for a static output-feedback gain K (nu x ny).
  Matrix closed_loop(const Matrix& k) const;
  Vector output(std::span<const double> x) const { return c_ * x; }

 private:
  Matrix a_;
  Matrix b_;
  Matrix c_;
};

/// The ideal continuous-time loop x' = Abar x, x(0) = x0. Abar must be Hurwitz.
class ClosedLoopReference {
 public:
  ClosedLoopReference(Matrix abar, Vector x0);
  ClosedLoopReference(const LtiPlant& plant, const Matrix& k, Vector x0);

  const Matrix& Abar() const noexcept { return abar_; }
  const Vector& x0() const noexcept { return x0_; }
  const DecayEnvelope& envelope() const noexcept { return envelope_; }

 private:
  Matrix abar_;
  Vector x0_;
  DecayEnvelope envelope_;
};

/// Exact inter-spike propagation e^{A dt} x (the input is zero between spikes).
Vector flow_open_loop(const LtiPlant& plant, std::span<const double> x, double dt);

/// x + amplitude * B[:, channel]
Vector apply_impulse(const LtiPlant& plant, std::span<const double> x, std::size_t channel,
                     double signed_amplitude);

Vector reference_state(const ClosedLoopReference& ref, double t);

}  // namespace spikectl
