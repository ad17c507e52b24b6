#include "spikectl/matrixkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "spikectl/errors.hpp"
#include "spikectl/kernels.hpp"

namespace spikectl {

namespace {

void require_square(const Matrix& a, const char* op) {
  if (!a.square() || a.empty()) {
    throw DimensionError(std::string(op) + ": expected a non-empty square matrix, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// LU

LuDecomposition::LuDecomposition(const Matrix& a) : n_(a.rows()), lu_(a), perm_(a.rows()) {
  require_square(a, "lu");
  const double scale = a.max_abs();
  for (std::size_t i = 0; i < n_; ++i) perm_[i] = i;
  min_pivot_ratio_ = scale > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;

  for (std::size_t k = 0; k < n_; ++k) {
    std::size_t p = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n_; ++i) {
      if (std::abs(lu_(i, k)) > best) {
        best = std::abs(lu_(i, k));
        p = i;
      }
    }
    if (scale > 0.0) min_pivot_ratio_ = std::min(min_pivot_ratio_, best / scale);
    if (p != k) {
      for (std::size_t j = 0; j < n_; ++j) std::swap(lu_(k, j), lu_(p, j));
      std::swap(perm_[k], perm_[p]);
      sign_ = -sign_;
    }
    const double pivot = lu_(k, k);
    if (pivot == 0.0) continue;
    for (std::size_t i = k + 1; i < n_; ++i) {
      const double m = lu_(i, k) / pivot;
      lu_(i, k) = m;
      if (m == 0.0) continue;
      for (std::size_t j = k + 1; j < n_; ++j) lu_(i, j) -= m * lu_(k, j);
    }
  }
}

double LuDecomposition::determinant() const noexcept {
  double d = sign_;
  for (std::size_t k = 0; k < n_; ++k) d *= lu_(k, k);
  return d;
}

Vector LuDecomposition::solve(std::span<const double> b) const {
  if (b.size() != n_) throw DimensionError("lu solve: rhs length mismatch");
  Vector x(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    double s = b[perm_[i]];
    for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
    x[i] = s;
  }
  for (std::size_t ii = n_; ii-- > 0;) {
    double s = x[ii];
    for (std::size_t j = ii + 1; j < n_; ++j) s -= lu_(ii, j) * x[j];
    x[ii] = s / lu_(ii, ii);
  }
  return x;
}

Matrix LuDecomposition::solve(const Matrix& b) const {
  if (b.rows() != n_) throw DimensionError("lu solve: rhs row mismatch");
  Matrix x(n_, b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    const Vector col = solve(b.col(c));
    for (std::size_t r = 0; r < n_; ++r) x(r, c) = col[r];
  }
  return x;
}

double DecayEnvelope::at(double t) const { return c * std::exp(-lambda * t); }

// ---------------------------------------------------------------------------
// Matrix exponential

Matrix mat_exp(const Matrix& a, double t) {
  require_square(a, "mat_exp");
  const std::size_t n = a.rows();
  Matrix m = a * t;

  constexpr double kTheta13 = 5.371920351148152;
  constexpr double b[14] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                            1187353796428800.0,  129060195264000.0,   10559470521600.0,
                            670442572800.0,      33522128640.0,       1323241920.0,
                            40840800.0,          960960.0,            16380.0,
                            182.0,               1.0};

  const double norm = m.norm_one();
  int squarings = 0;
  if (norm > kTheta13) squarings = static_cast<int>(std::ceil(std::log2(norm / kTheta13)));
  if (squarings > 0) m *= std::ldexp(1.0, -squarings);

  const Matrix id = Matrix::identity(n);
  const Matrix m2 = m * m;
  const Matrix m4 = m2 * m2;
  const Matrix m6 = m4 * m2;

  Matrix u_inner = m6 * (b[13] * m6 + b[11] * m4 + b[9] * m2);
  u_inner += b[7] * m6 + b[5] * m4 + b[3] * m2 + b[1] * id;
  const Matrix u = m * u_inner;

  Matrix v = m6 * (b[12] * m6 + b[10] * m4 + b[8] * m2);
  v += b[6] * m6 + b[4] * m4 + b[2] * m2 + b[0] * id;

  Matrix r = LuDecomposition(v - u).solve(v + u);
  for (int s = 0; s < squarings; ++s) r = r * r;
  return r;
}

// ---------------------------------------------------------------------------
// Norms and spectra

double induced_two_norm(const Matrix& a, const KitTolerances& tol) {
  if (a.empty()) throw DimensionError("induced_two_norm: empty matrix");
  if (a.max_abs() == 0.0) return 0.0;
  const Matrix gram = a.transpose() * a;
  const std::size_t n = gram.rows();

  // Deterministic seed with irrational spread so it is not orthogonal to
  // dominant directions of structured matrices.
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double frac = std::fmod(0.6180339887498949 * static_cast<double>(i + 1), 1.0);
    v[i] = 1.0 + frac;
  }
  double nv = norm2(v);
  for (double& x : v) x /= nv;

  double rayleigh = 0.0;
  for (int it = 0; it < tol.norm_max_iter; ++it) {
    Vector w = gram * v;
    const double next = dot(v, w);
    const double nw = norm2(w);
    if (nw == 0.0) {
      // seed in the null space; restart from a unit vector with nonzero image
      for (std::size_t j = 0; j < n; ++j) {
        Vector e(n, 0.0);
        e[j] = 1.0;
        if (norm2(gram * e) > 0.0) {
          v = e;
          break;
        }
      }
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / nw;
    if (it > 0 && std::abs(next - rayleigh) <= tol.norm_rel_tol * std::abs(next)) {
      return std::sqrt(std::max(next, dot(v, gram * v)));
    }
    rayleigh = next;
  }
  throw ConvergenceError("induced_two_norm: power iteration did not converge",
                         std::sqrt(std::max(rayleigh, 0.0)));
}

std::vector<double> symmetric_eigenvalues(const Matrix& s) {
  require_square(s, "symmetric_eigenvalues");
  const std::size_t n = s.rows();
  Matrix a = s;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off <= 1e-30 * std::max(1.0, a.norm_frobenius() * a.norm_frobenius())) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

Matrix lyapunov_solve(const Matrix& a, const Matrix& q, const KitTolerances& tol) {
  require_square(a, "lyapunov_solve");
  const std::size_t n = a.rows();
  if (q.rows() != n || q.cols() != n) throw DimensionError("lyapunov_solve: Q shape mismatch");

  // Unknown P(i,j) sits at index i*n + j.
  const std::size_t nn = n * n;
  Matrix sys(nn, nn);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t row = i * n + j;
      for (std::size_t k = 0; k < n; ++k) {
        sys(row, k * n + j) += a(k, i);  // (A^T P)_ij
        sys(row, i * n + k) += a(k, j);  // (P A)_ij
      }
    }
  }
  LuDecomposition lu(sys);
  if (lu.min_pivot_ratio() < tol.singular_pivot_tol) {
    throw MarginalSpectrumError(
        "lyapunov_solve: singular system (an eigenvalue pair sums to zero)");
  }
  Vector rhs(nn);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rhs[i * n + j] = -q(i, j);
  const Vector p = lu.solve(rhs);

  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = 0.5 * (p[i * n + j] + p[j * n + i]);
  return out;
}

namespace {

bool cholesky_positive(const Matrix& p, double pivot_tol) {
  const std::size_t n = p.rows();
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = p(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > pivot_tol)) return false;
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = p(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return true;
}

}  // namespace

bool is_hurwitz(const Matrix& a, const KitTolerances& tol) {
  require_square(a, "is_hurwitz");
  const Matrix p = lyapunov_solve(a, Matrix::identity(a.rows()), tol);
  return cholesky_positive(p, tol.cholesky_pivot_tol);
}

DecayEnvelope hurwitz_envelope(const Matrix& a, const KitTolerances& tol) {
  require_square(a, "hurwitz_envelope");
  const Matrix p = lyapunov_solve(a, Matrix::identity(a.rows()), tol);
  if (!cholesky_positive(p, tol.cholesky_pivot_tol)) {
    throw DomainError("hurwitz_envelope: matrix is not Hurwitz");
  }
  const std::vector<double> eig = symmetric_eigenvalues(p);
  const double lo = eig.front();
  const double hi = eig.back();
  return DecayEnvelope{std::sqrt(hi / lo), 1.0 / (2.0 * hi)};
}

// ---------------------------------------------------------------------------
// Gain integral

GainResult isiss_gain_detail(const Matrix& f, const Matrix& g, const GainOptions& opts) {
  require_square(f, "isiss_gain");
  if (g.rows() != f.rows()) {
    throw DimensionError("isiss_gain: G has " + std::to_string(g.rows()) + " rows, F has order " +
                         std::to_string(f.rows()));
  }
  GainResult res;
  res.envelope = hurwitz_envelope(f);
  res.norm_G = induced_two_norm(g);
  if (res.norm_G == 0.0) return res;

  const double lambda = res.envelope.lambda;
  const double norm_F = induced_two_norm(f);
  // |F e^{Fs} G|_F <= sqrt(min(n, m)) |F e^{Fs} G|_2
  const double shape_factor =
      opts.integrand_norm == GainNorm::kFrobenius
          ? std::sqrt(static_cast<double>(std::min(g.rows(), g.cols())))
          : 1.0;
  const double tail_scale = shape_factor * res.envelope.c * norm_F * res.norm_G / lambda;
  res.horizon = std::max(0.0, std::log(tail_scale / opts.tail_tol) / lambda);

  const kernels::ScalarFn integrand = [&](double s) {
    const Matrix m = f * mat_exp(f, s) * g;
    return opts.integrand_norm == GainNorm::kFrobenius ? m.norm_frobenius() : induced_two_norm(m);
  };

  auto quad = [&](std::size_t panels) {
    const double width = res.horizon / static_cast<double>(panels);
    const auto parts = opts.parallel ? kernels::panel_integrals_omp(integrand, 0.0, width, panels)
                                     : kernels::panel_integrals_serial(integrand, 0.0, width, panels);
    return kernels::ordered_sum(parts);
  };

  std::size_t panels = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(res.horizon * lambda / opts.panel_scale)));
  double prev = quad(panels);
  for (int r = 0; r < opts.max_refinements; ++r) {
    panels *= 2;
    const double next = quad(panels);
    const bool done = std::abs(next - prev) <= opts.rel_tol * std::abs(next);
    prev = next;
    if (done) break;
    if (r + 1 == opts.max_refinements) {
      throw ConvergenceError("isiss_gain: quadrature refinement did not settle", res.norm_G + next);
    }
  }
  res.integral = prev;
  res.panels = panels;
  res.gamma = res.norm_G + res.integral;
  return res;
}

double isiss_gain(const Matrix& f, const Matrix& g, const GainOptions& opts) {
  return isiss_gain_detail(f, g, opts).gamma;
}

double char_poly_residual(const Matrix& a, double mu) {
  require_square(a, "char_poly_residual");
  Matrix m = Matrix::identity(a.rows()) * mu;
  m -= a;
  return std::abs(LuDecomposition(m).determinant());
}

}  // namespace spikectl
