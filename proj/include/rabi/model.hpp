// model.hpp — Rabi model parameters and truncated operators in the spin ⊗ Fock basis

#pragma once

#include <Eigen/Dense>

#include <vector>

namespace rabi {

using OperatorMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Dimensionless couplings: eta = Omega/omega0, g = 2*lambda/sqrt(Omega*omega0).
// All energies are in units of omega0. Negative g is accepted so the g <-> -g
// spectral symmetry can be exercised; physical scans use g >= 0.
struct ModelParams {
    double eta{300.0};
    double g{0.0};
};

// Fock cutoff n_max (photon occupation). Basis ordering is fixed globally:
// index k = 2n + s with s = 0 spin-down, s = 1 spin-up, n = photon number,
// so dim = 2*(n_max + 1).
struct Truncation {
    int n_max{64};

    int dim() const noexcept { return 2 * (n_max + 1); }
};

void validate(const ModelParams& params);
void validate(const Truncation& trunc);

// H0 = a†a + (eta/2) σz, diagonal in the product basis.
OperatorMatrix build_h0(double eta, const Truncation& trunc);

// H1 = -(√eta/2)(a + a†) σx; couples (s, n) <-> (1-s, n±1) with
// matrix element -(√eta/2)·√(n+1) between (s, n) and (1-s, n+1).
OperatorMatrix build_h1(double eta, const Truncation& trunc);

// H = H0 + g·H1. H0 and H1 have disjoint sparsity patterns, so the
// decomposition H - g·H1 - H0 = 0 holds entrywise exactly.
OperatorMatrix build_hamiltonian(const ModelParams& params, const Truncation& trunc);

// Z2 symmetry Π = σz ⊗ (-1)^{a†a}: diagonal with entries ±1, Π² = I and
// [H, Π] = 0 for every (eta, g). The g = 0 ground state |↓,0⟩ has Π = -1.
OperatorMatrix parity_operator(const Truncation& trunc);

enum class Parity : int { Even = +1, Odd = -1 };

// Basis indices k with Π_kk == sector, ordered by photon number. Each sector
// of H (and of H1) is an invariant subspace of dimension n_max + 1; in this
// ordering the restricted blocks are tridiagonal.
std::vector<int> parity_indices(const Truncation& trunc, Parity sector);

// Submatrix m[idx, idx].
OperatorMatrix restrict_to(const OperatorMatrix& m, const std::vector<int>& idx);

// Scatter a sector vector back into the full basis (zeros elsewhere).
Vector embed_from(const Vector& v, const std::vector<int>& idx, int full_dim);

}  // namespace rabi
