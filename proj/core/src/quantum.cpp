#include "sacs/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sacs {

namespace {

using CMat3 = std::array<std::array<cplx, 3>, 3>;

CMat3 to_dense(const HermitianMatrix3& h) {
  CMat3 m{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m[i][j] = h(i, j);
  return m;
}

double det3(const CMat3& m) {
  const cplx d = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                 m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                 m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  return d.real();
}

// det(H - x I) and its derivative.
std::pair<double, double> char_poly(const CMat3& h, double x) {
  CMat3 a = h;
  for (std::size_t i = 0; i < 3; ++i) a[i][i] -= x;
  const double f = det3(a);
  const double minors = (a[1][1] * a[2][2] - a[1][2] * a[2][1]).real() +
                        (a[0][0] * a[2][2] - a[0][2] * a[2][0]).real() +
                        (a[0][0] * a[1][1] - a[0][1] * a[1][0]).real();
  return {f, -minors};
}

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

std::size_t dominant_index(const Vec3& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < 3; ++i)
    if (std::abs(v[i]) > std::abs(v[best]) * (1.0 + 1e-12)) best = i;
  return best;
}

void normalize(Vec3& v) {
  const double n = vec_norm(v);
  for (auto& x : v) x /= n;
}

// Largest-magnitude component made real positive.
void fix_phase_by_largest(Vec3& v) {
  const cplx lead = v[dominant_index(v)];
  const double mag = std::abs(lead);
  if (mag == 0.0) return;
  const cplx rot = std::conj(lead) / mag;
  for (auto& x : v) x *= rot;
}

void sort_frame(AdiabaticFrame& f, double scale) {
  std::array<std::size_t, 3> idx{0, 1, 2};
  const double tie = 1e-12 * std::max(scale, 1e-300);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (std::abs(f.values[a] - f.values[b]) <= tie)
      return dominant_index(f.vectors[a]) > dominant_index(f.vectors[b]);
    return f.values[a] < f.values[b];
  });
  AdiabaticFrame out = f;
  for (std::size_t k = 0; k < 3; ++k) {
    out.values[k] = f.values[idx[k]];
    out.vectors[k] = f.vectors[idx[k]];
  }
  f = out;
}

constexpr double kAcceptTolerance = 1e-12;

bool eigenvector_by_cross(const CMat3& h, double lambda, double scale, Vec3& out) {
  CMat3 a = h;
  for (std::size_t i = 0; i < 3; ++i) a[i][i] -= lambda;
  const std::array<Vec3, 3> rows{Vec3{a[0][0], a[0][1], a[0][2]},
                                 Vec3{a[1][0], a[1][1], a[1][2]},
                                 Vec3{a[2][0], a[2][1], a[2][2]}};
  Vec3 best{};
  double best_norm = -1.0;
  for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
    const Vec3 c = cross(rows[i], rows[j]);
    const double n = vec_norm(c);
    if (n > best_norm) {
      best_norm = n;
      best = c;
    }
  }
  if (!(best_norm > 1e-10 * scale * scale)) return false;
  out = best;
  normalize(out);
  return true;
}

}  // namespace

cplx HermitianMatrix3::operator()(std::size_t i, std::size_t j) const {
  if (i == j) return diag_[i];
  if (i > j) return std::conj((*this)(j, i));
  if (i == 0 && j == 1) return h01_;
  if (i == 0 && j == 2) return h02_;
  return h12_;
}

double HermitianMatrix3::frobenius_norm() const {
  double s = 0.0;
  for (double d : diag_) s += d * d;
  s += 2.0 * (std::norm(h01_) + std::norm(h02_) + std::norm(h12_));
  return std::sqrt(s);
}

bool HermitianMatrix3::is_diagonal() const {
  return h01_ == cplx{} && h02_ == cplx{} && h12_ == cplx{};
}

Vec3 HermitianMatrix3::apply(const Vec3& v) const {
  Vec3 out{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

StateVector StateVector::basis(std::size_t n) {
  StateVector s;
  s.c = {cplx{}, cplx{}, cplx{}};
  s.c.at(n) = 1.0;
  return s;
}

double StateVector::norm() const { return vec_norm(c); }

std::array<double, 3> StateVector::populations() const {
  return {std::norm(c[0]), std::norm(c[1]), std::norm(c[2])};
}

cplx inner(const Vec3& a, const Vec3& b) {
  return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1] + std::conj(a[2]) * b[2];
}

double vec_norm(const Vec3& v) {
  return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
}

HermitianMatrix3 build_hamiltonian(const HamiltonianParams& p) {
  for (double x : {p.omega1, p.omega2, p.delta2, p.delta3, p.stark, p.beta})
    if (!std::isfinite(x)) throw std::invalid_argument("build_hamiltonian: non-finite parameter");
  if (p.stark < 0.0) throw std::invalid_argument("build_hamiltonian: Stark shift magnitude must be >= 0");
  const cplx stokes = 0.5 * p.omega2 * std::polar(1.0, p.beta);
  return HermitianMatrix3({0.0, p.delta2, p.delta2 + p.delta3 - p.stark}, 0.5 * p.omega1, 0.0, stokes);
}

AdiabaticFrame eigensystem_jacobi(const HermitianMatrix3& h) {
  CMat3 a = to_dense(h);
  CMat3 v{};
  for (std::size_t i = 0; i < 3; ++i) v[i][i] = 1.0;
  const double scale = h.frobenius_norm();

  auto off = [&] {
    return std::sqrt(std::norm(a[0][1]) + std::norm(a[0][2]) + std::norm(a[1][2]));
  };

  for (int sweep = 0; sweep < 60 && off() > 1e-17 * scale; ++sweep) {
    for (auto [p, q] : {std::pair<std::size_t, std::size_t>{0, 1}, {0, 2}, {1, 2}}) {
      const cplx z = a[p][q];
      const double mag = std::abs(z);
      if (mag <= 1e-300) continue;
      const cplx phase = z / mag;  // e^{i phi}
      const double theta = (a[q][q].real() - a[p][p].real()) / (2.0 * mag);
      const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
      const double c = 1.0 / std::sqrt(t * t + 1.0);
      const double s = t * c;
      // G = diag(1, e^{-i phi}) applied to the real rotation [[c, s], [-s, c]]
      CMat3 g{};
      for (std::size_t i = 0; i < 3; ++i) g[i][i] = 1.0;
      g[p][p] = c;
      g[p][q] = s;
      g[q][p] = -s * std::conj(phase);
      g[q][q] = c * std::conj(phase);

      CMat3 ag{}, gag{}, vg{};
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
          for (std::size_t k = 0; k < 3; ++k) {
            ag[i][j] += a[i][k] * g[k][j];
            vg[i][j] += v[i][k] * g[k][j];
          }
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
          for (std::size_t k = 0; k < 3; ++k) gag[i][j] += std::conj(g[k][i]) * ag[k][j];
      a = gag;
      a[p][q] = a[q][p] = 0.0;
      v = vg;
    }
  }

  AdiabaticFrame f;
  for (std::size_t k = 0; k < 3; ++k) {
    f.values[k] = a[k][k].real();
    f.vectors[k] = {v[0][k], v[1][k], v[2][k]};
    normalize(f.vectors[k]);
    fix_phase_by_largest(f.vectors[k]);
  }
  sort_frame(f, scale);
  return f;
}

AdiabaticFrame eigensystem(const HermitianMatrix3& h) {
  const double scale = h.frobenius_norm();
  AdiabaticFrame f;

  if (h.is_diagonal()) {
    for (std::size_t k = 0; k < 3; ++k) {
      f.values[k] = h.diag(k);
      f.vectors[k] = {cplx{}, cplx{}, cplx{}};
      f.vectors[k][k] = 1.0;
    }
    sort_frame(f, scale);
    return f;
  }

  const CMat3 m = to_dense(h);
  const double q = h.trace() / 3.0;
  CMat3 b = m;
  for (std::size_t i = 0; i < 3; ++i) b[i][i] -= q;
  double p2 = 0.0;
  for (const auto& row : b)
    for (const auto& x : row) p2 += std::norm(x);
  const double p = std::sqrt(p2 / 6.0);
  CMat3 bn = b;
  for (auto& row : bn)
    for (auto& x : row) x /= p;
  const double r = std::clamp(0.5 * det3(bn), -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  std::array<double, 3> roots{q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0), 0.0,
                              q + 2.0 * p * std::cos(phi)};
  roots[1] = 3.0 * q - roots[0] - roots[2];

  for (double& x : roots) {
    const auto [fx, dfx] = char_poly(m, x);
    if (dfx == 0.0) continue;
    const double cand = x - fx / dfx;
    if (std::abs(char_poly(m, cand).first) <= std::abs(fx)) x = cand;
  }
  std::sort(roots.begin(), roots.end());

  const double min_gap = std::min(roots[1] - roots[0], roots[2] - roots[1]);
  if (min_gap < 1e-8 * scale) return eigensystem_jacobi(h);

  for (std::size_t k = 0; k < 3; ++k) {
    f.values[k] = roots[k];
    if (!eigenvector_by_cross(m, roots[k], scale, f.vectors[k])) return eigensystem_jacobi(h);
    fix_phase_by_largest(f.vectors[k]);
  }
  // Cross products lose accuracy as roots approach each other; keep the
  // closed form only when it is as good as the iterative route.
  const double tol = kAcceptTolerance * scale;
  for (std::size_t k = 0; k < 3; ++k) {
    const Vec3 hv = h.apply(f.vectors[k]);
    double res = 0.0;
    for (std::size_t i = 0; i < 3; ++i) res += std::norm(hv[i] - f.values[k] * f.vectors[k][i]);
    if (std::sqrt(res) > tol) return eigensystem_jacobi(h);
    for (std::size_t j = k + 1; j < 3; ++j)
      if (std::abs(inner(f.vectors[k], f.vectors[j])) > kAcceptTolerance) return eigensystem_jacobi(h);
  }
  return f;
}

AdiabaticFrame track_adiabatic(const AdiabaticFrame& prev, const AdiabaticFrame& next) {
  std::array<std::array<double, 3>, 3> ov{};
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t k = 0; k < 3; ++k) ov[j][k] = std::abs(inner(prev.vectors[j], next.vectors[k]));

  struct Candidate {
    std::array<std::size_t, 3> perm;
    double score;
    double distance;
  };
  std::array<std::size_t, 3> perm{0, 1, 2};
  std::array<Candidate, 6> cands{};
  std::size_t n = 0;
  do {
    Candidate c{perm, 0.0, 0.0};
    for (std::size_t j = 0; j < 3; ++j) {
      c.score += ov[j][perm[j]];
      c.distance += std::abs(prev.values[j] - next.values[perm[j]]);
    }
    cands[n++] = c;
  } while (std::next_permutation(perm.begin(), perm.end()));

  double best_score = 0.0;
  for (const auto& c : cands) best_score = std::max(best_score, c.score);

  const Candidate* chosen = nullptr;
  std::size_t near_best = 0;
  for (const auto& c : cands) {
    if (c.score < best_score - 1e-9) continue;
    ++near_best;
    // identity comes first in permutation order, so it wins exact ties
    if (chosen == nullptr || c.distance < chosen->distance - 1e-12 * (1.0 + chosen->distance))
      chosen = &c;
  }

  AdiabaticFrame out;
  out.ordering = FrameOrdering::continuity;
  out.degenerate = near_best > 1;
  for (std::size_t j = 0; j < 3; ++j) {
    out.values[j] = next.values[chosen->perm[j]];
    Vec3 v = next.vectors[chosen->perm[j]];
    const cplx ph = inner(prev.vectors[j], v);
    if (std::abs(ph) > 1e-12) {
      const cplx rot = std::conj(ph) / std::abs(ph);
      for (auto& x : v) x *= rot;
    } else {
      fix_phase_by_largest(v);
    }
    out.vectors[j] = v;
  }
  return out;
}

AdiabaticFrame align_degenerate(const AdiabaticFrame& prev, const AdiabaticFrame& tracked, double tol) {
  AdiabaticFrame out = tracked;
  std::array<bool, 3> done{false, false, false};
  for (std::size_t a = 0; a < 3; ++a) {
    if (done[a]) continue;
    std::array<std::size_t, 3> cluster{};
    std::size_t n = 0;
    for (std::size_t b = a; b < 3; ++b)
      if (!done[b] && std::abs(tracked.values[b] - tracked.values[a]) <= tol) {
        cluster[n++] = b;
        done[b] = true;
      }
    if (n < 2) continue;
    for (std::size_t m = 0; m < n; ++m) {
      const std::size_t k = cluster[m];
      // projection of the previous vector onto the degenerate subspace
      Vec3 v{};
      for (std::size_t q = 0; q < n; ++q) {
        const cplx c = inner(tracked.vectors[cluster[q]], prev.vectors[k]);
        for (std::size_t i = 0; i < 3; ++i) v[i] += c * tracked.vectors[cluster[q]][i];
      }
      for (std::size_t q = 0; q < m; ++q) {
        const Vec3& u = out.vectors[cluster[q]];
        const cplx c = inner(u, v);
        for (std::size_t i = 0; i < 3; ++i) v[i] -= c * u[i];
      }
      double nv = vec_norm(v);
      if (nv < 1e-8) {
        v = tracked.vectors[k];
        for (std::size_t q = 0; q < m; ++q) {
          const Vec3& u = out.vectors[cluster[q]];
          const cplx c = inner(u, v);
          for (std::size_t i = 0; i < 3; ++i) v[i] -= c * u[i];
        }
        nv = vec_norm(v);
      }
      for (auto& x : v) x /= nv;
      out.vectors[k] = v;
    }
  }
  return out;
}

StateVector dark_state(double omega_pump, double omega_stokes, double beta) {
  const double n = std::hypot(omega_pump, omega_stokes);
  if (n == 0.0 || !std::isfinite(n)) throw std::invalid_argument("dark_state: both Rabi frequencies zero");
  StateVector s;
  s.c = {cplx{omega_stokes / n}, cplx{}, -std::polar(1.0, -beta) * (omega_pump / n)};
  return s;
}

RealMat3 nonadiabatic_coupling(const AdiabaticFrame& f1, const AdiabaticFrame& f2, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("nonadiabatic_coupling: dt must be positive");
  RealMat3 m{};
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t k = 0; k < 3; ++k)
      m[j][k] = j == k ? 0.0 : std::abs(inner(f1.vectors[j], f2.vectors[k])) / dt;
  return m;
}

}  // namespace sacs
