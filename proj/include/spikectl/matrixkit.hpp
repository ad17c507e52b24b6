#pragma once

#include <cstddef>
#include <vector>

#include "spikectl/matrix.hpp"

namespace spikectl {

/// Numerical tolerances of the dense kernels. Defaults are the documented ones.
struct KitTolerances {
  double norm_rel_tol = 1e-12;         // power iteration stop (Rayleigh quotient change)
  int norm_max_iter = 200000;
  double cholesky_pivot_tol = 1e-10;   // positive-definiteness certificate
  double singular_pivot_tol = 1e-12;   // relative LU pivot below which a system is singular
};

/// LU factorization with partial pivoting, PA = LU.
class LuDecomposition {
 public:
  explicit LuDecomposition(const Matrix& a);

  std::size_t size() const noexcept { return n_; }
  double determinant() const noexcept;
  /// Smallest |U_kk| relative to max |A_ij|; zero for an exactly singular matrix.
  double min_pivot_ratio() const noexcept { return min_pivot_ratio_; }
  Vector solve(std::span<const double> b) const;
  Matrix solve(const Matrix& b) const;

 private:
  std::size_t n_ = 0;
  Matrix lu_;
  std::vector<std::size_t> perm_;
  int sign_ = 1;
  double min_pivot_ratio_ = 0.0;
};

/// Lyapunov decay certificate: |e^{At}| <= c e^{-lambda t}.
struct DecayEnvelope {
  double c = 1.0;
  double lambda = 1.0;

  double at(double t) const;
};

enum class GainNorm {
  kInduced2,   // largest singular value, the notation of the stability results
  kFrobenius,  // entrywise 2-norm, an upper bound of kInduced2
};

struct GainOptions {
  GainNorm integrand_norm = GainNorm::kInduced2;
  double tail_tol = 1e-8;      // bound on the truncated tail of the improper integral
  double rel_tol = 1e-6;       // successive quadrature refinements must agree to this
  double panel_scale = 0.05;   // initial panel width is panel_scale / lambda
  int max_refinements = 14;
  bool parallel = true;        // evaluate panels with the OpenMP kernel
};

struct GainResult {
  double gamma = 0.0;
  double norm_G = 0.0;
  double integral = 0.0;
  double horizon = 0.0;        // truncation time T
  std::size_t panels = 0;
  DecayEnvelope envelope;
};

/// e^{A t} by scaling and squaring around a degree-13 Pade approximant.
Matrix mat_exp(const Matrix& a, double t);

/// Largest singular value by power iteration on A^T A.
double induced_two_norm(const Matrix& a, const KitTolerances& tol = {});

/// Eigenvalues of a symmetric matrix (cyclic Jacobi), ascending.
std::vector<double> symmetric_eigenvalues(const Matrix& s);

/// Solves A^T P + P A = -Q through the vectorized linear system.
/// Throws MarginalSpectrumError when the system is singular.
Matrix lyapunov_solve(const Matrix& a, const Matrix& q, const KitTolerances& tol = {});

/// Hurwitz certificate: the Lyapunov solution for Q = I is symmetric positive definite.
bool is_hurwitz(const Matrix& a, const KitTolerances& tol = {});

/// (c, lambda) with lambda = 1/(2 lambda_max(P)) and c = sqrt(cond(P)).
DecayEnvelope hurwitz_envelope(const Matrix& a, const KitTolerances& tol = {});

/// |G| + int_0^inf |F e^{Fs} G| ds, the linear gain of z' = Fz + Gv in the star norm.
GainResult isiss_gain_detail(const Matrix& f, const Matrix& g, const GainOptions& opts = {});
double isiss_gain(const Matrix& f, const Matrix& g, const GainOptions& opts = {});

/// |det(mu I - A)|
double char_poly_residual(const Matrix& a, double mu);

}  // namespace spikectl
