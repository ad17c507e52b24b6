#include "spikectl/plant.hpp"

#include <string>

#include "spikectl/errors.hpp"

namespace spikectl {

LtiPlant::LtiPlant(Matrix a, Matrix b, Matrix c) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
  if (!a_.square() || a_.empty()) throw DimensionError("plant: A must be square and non-empty");
  if (b_.rows() != a_.rows() || b_.cols() == 0) {
    throw DimensionError("plant: B is " + std::to_string(b_.rows()) + "x" + std::to_string(b_.cols()) +
                         ", expected " + std::to_string(a_.rows()) + "xnu");
  }
  if (c_.cols() != a_.rows() || c_.rows() == 0) {
    throw DimensionError("plant: C is " + std::to_string(c_.rows()) + "x" + std::to_string(c_.cols()) +
                         ", expected nyx" + std::to_string(a_.rows()));
  }
}

Matrix LtiPlant::closed_loop(const Matrix& k) const {
  if (k.rows() != nu() || k.cols() != ny()) {
    throw DimensionError("closed_loop: K is " + std::to_string(k.rows()) + "x" + std::to_string(k.cols()) +
                         ", expected " + std::to_string(nu()) + "x" + std::to_string(ny()));
  }
  return a_ + b_ * k * c_;
}

ClosedLoopReference::ClosedLoopReference(Matrix abar, Vector x0) : abar_(std::move(abar)), x0_(std::move(x0)) {
  if (!abar_.square() || abar_.rows() != x0_.size()) {
    throw DimensionError("reference: Abar order does not match x0");
  }
  if (!is_hurwitz(abar_)) throw DomainError("reference: A + BKC is not Hurwitz");
  envelope_ = hurwitz_envelope(abar_);
}

ClosedLoopReference::ClosedLoopReference(const LtiPlant& plant, const Matrix& k, Vector x0)
    : ClosedLoopReference(plant.closed_loop(k), std::move(x0)) {}

Vector flow_open_loop(const LtiPlant& plant, std::span<const double> x, double dt) {
  if (dt < 0.0) throw DomainError("flow_open_loop: dt must be >= 0");
  return mat_exp(plant.A(), dt) * x;
}

Vector apply_impulse(const LtiPlant& plant, std::span<const double> x, std::size_t channel,
                     double signed_amplitude) {
  if (channel >= plant.nu()) {
    throw DimensionError("apply_impulse: channel " + std::to_string(channel) + " out of range [0, " +
                         std::to_string(plant.nu()) + ")");
  }
  if (x.size() != plant.nx()) throw DimensionError("apply_impulse: state length mismatch");
  Vector out(x.begin(), x.end());
  for (std::size_t r = 0; r < plant.nx(); ++r) out[r] += signed_amplitude * plant.B()(r, channel);
  return out;
}

Vector reference_state(const ClosedLoopReference& ref, double t) {
  if (t < 0.0) throw DomainError("reference_state: t must be >= 0");
  return mat_exp(ref.Abar(), t) * ref.x0();
}

}  // namespace spikectl
