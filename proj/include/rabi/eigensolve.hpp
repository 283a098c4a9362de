// eigensolve.hpp — full spectral decompositions, iterative ground pairs, deflated solves

#pragma once

#include "rabi/model.hpp"

#include <stdexcept>

namespace rabi {

struct SpectralDecomposition {
    Vector energies;         // ascending, units of omega0
    Eigen::MatrixXd vectors; // orthonormal columns aligned with energies
    int dim{0};
};

// Thrown by ground_pair when the lowest two Ritz values are closer than the
// degeneracy threshold; the caller falls back to the full decomposition.
struct DegenerateGroundState : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown by deflated_solve when the projected system is ill-conditioned or
// loses positive definiteness; the caller falls back to the spectral sum.
struct IllConditionedSolve : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dense reference decomposition (all eigenpairs). Eigenvectors inside
// near-degenerate clusters are rotated to parity purity when the cluster is
// parity-reducible, and every vector is sign-fixed so its largest-magnitude
// component is positive.
SpectralDecomposition diagonalize_full(const OperatorMatrix& h);

struct GroundPair {
    double energy{0.0};
    Vector vector;
    double residual{0.0};   // ‖H v - E v‖
    double gap{0.0};        // to the second Ritz value of the explored subspace
    int iterations{0};
};

struct LanczosOptions {
    int max_iter{2000};
    double tol{0.0};          // absolute residual target; 0 -> 1e-12 * max(1, |H|_max)
    unsigned seed{0x5eed5u};  // start-vector seed (deterministic)
    const Vector* start{nullptr};  // optional start vector; restricts the search
                                   // to the invariant subspace it spans
};

// Extremal ground pair by Lanczos with full reorthogonalization. The gap check
// covers the invariant subspace reached from the start vector.
GroundPair ground_pair(const OperatorMatrix& h, const LanczosOptions& opts = {});

struct SolveOptions {
    double rel_tol{1e-11};  // residual / ‖rhs‖
    int max_iter{0};        // 0 -> 20 * dim
};

// Solve (H - e0) x = Q rhs on span{psi0}^⊥ with Q = I - psi0 psi0ᵀ, returning
// x with ⟨psi0, x⟩ = 0. Requires rhs ⊥ psi0 (within 1e-10 relative); projected
// conjugate gradients, valid because H - e0 is positive definite on the
// orthogonal complement of a non-degenerate ground state.
Vector deflated_solve(const OperatorMatrix& h, double e0, const Vector& psi0,
                      const Vector& rhs, const SolveOptions& opts = {});

// Half bandwidth of a dense symmetric matrix (max |i-j| over nonzeros).
// The Rabi Hamiltonian in the k = 2n + s ordering has bandwidth 3; its parity
// blocks have bandwidth 1. Matvecs below exploit this.
int matrix_bandwidth(const OperatorMatrix& m);

// y = m x restricted to the band (exact for matrices with that bandwidth).
void banded_matvec(const OperatorMatrix& m, int bandwidth, const Vector& x, Vector& y);

}  // namespace rabi
