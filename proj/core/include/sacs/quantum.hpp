#pragma once

// Three-state ladder Hamiltonian in the rotating-wave frame, its
// instantaneous eigensystem and continuity tracking of adiabatic states.
//
// Units: angular frequencies in rad/ns, times in ns (hbar factored out).

#include <array>
#include <complex>
#include <cstddef>

namespace sacs {

using cplx = std::complex<double>;
using Vec3 = std::array<cplx, 3>;
using RealMat3 = std::array<std::array<double, 3>, 3>;

/// Parameters of the ladder Hamiltonian at one instant.
struct HamiltonianParams {
  double omega1 = 0.0;  ///< Rabi frequency on 1-2 (pump)
  double omega2 = 0.0;  ///< Rabi frequency on 2-3 (Stokes)
  double delta2 = 0.0;  ///< one-photon detuning of state 2
  double delta3 = 0.0;  ///< detuning of the 2-3 transition
  double stark = 0.0;   ///< Stark shift magnitude; state 3 moves by -stark
  double beta = 0.0;    ///< Stokes minus pump phase (rad)
};

/// 3x3 Hermitian matrix stored by its six independent entries.
class HermitianMatrix3 {
 public:
  HermitianMatrix3() = default;
  HermitianMatrix3(std::array<double, 3> diag, cplx h01, cplx h02, cplx h12)
      : diag_(diag), h01_(h01), h02_(h02), h12_(h12) {}

  cplx operator()(std::size_t i, std::size_t j) const;
  double diag(std::size_t i) const { return diag_[i]; }

  double trace() const { return diag_[0] + diag_[1] + diag_[2]; }
  double frobenius_norm() const;
  bool is_diagonal() const;

  Vec3 apply(const Vec3& v) const;

 private:
  std::array<double, 3> diag_{0.0, 0.0, 0.0};
  cplx h01_{}, h02_{}, h12_{};
};

/// Amplitudes (C1, C2, C3) in the rotating frame.
struct StateVector {
  Vec3 c{cplx{1.0, 0.0}, cplx{}, cplx{}};

  static StateVector basis(std::size_t n);
  double norm() const;
  std::array<double, 3> populations() const;
};

enum class FrameOrdering { value_sorted, continuity };

/// Instantaneous eigenpairs; index 0, 1, 2 correspond to Phi-, Phi0, Phi+.
struct AdiabaticFrame {
  std::array<double, 3> values{};
  std::array<Vec3, 3> vectors{};
  FrameOrdering ordering = FrameOrdering::value_sorted;
  bool degenerate = false;
};

inline constexpr std::size_t kMinus = 0;
inline constexpr std::size_t kZero = 1;
inline constexpr std::size_t kPlus = 2;

cplx inner(const Vec3& a, const Vec3& b);  // <a|b>
double vec_norm(const Vec3& v);

HermitianMatrix3 build_hamiltonian(const HamiltonianParams& p);

/// Value-sorted eigensystem. Closed-form cubic with Newton polish, falling
/// back to cyclic Jacobi when two roots are closer than 1e-8 ||H||.
/// Exactly tied eigenvalues are ordered with the state whose dominant
/// component has the larger basis index first, so the degenerate origin
/// yields Phi- = psi3 and Phi0 = psi1.
AdiabaticFrame eigensystem(const HermitianMatrix3& h);

/// Jacobi route on its own; exposed for cross-checks.
AdiabaticFrame eigensystem_jacobi(const HermitianMatrix3& h);

/// Reorders `next` to follow `prev` by maximal overlap and fixes phases so
/// that <prev_k|next_k> is real and positive.
AdiabaticFrame track_adiabatic(const AdiabaticFrame& prev, const AdiabaticFrame& next);

/// Within every cluster of eigenvalues closer than `tol`, replaces the
/// vectors of `tracked` by the orthonormalized projections of the
/// corresponding vectors of `prev`, so an arbitrary basis of a degenerate
/// eigenspace does not register as a jump.
AdiabaticFrame align_degenerate(const AdiabaticFrame& prev, const AdiabaticFrame& tracked, double tol);

/// (Omega_S, 0, -exp(-i beta) Omega_P) / norm.
StateVector dark_state(double omega_pump, double omega_stokes, double beta);

/// Finite-difference estimate |<Phi_j(t)|Phi_k(t+dt)>| / dt, zero diagonal.
RealMat3 nonadiabatic_coupling(const AdiabaticFrame& f1, const AdiabaticFrame& f2, double dt);

}  // namespace sacs
