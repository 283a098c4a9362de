// susceptibility.hpp — fidelity, adiabatic susceptibilities, quantum noise spectrum

#pragma once

#include "rabi/eigensolve.hpp"

#include <utility>
#include <vector>

namespace rabi {

enum class ChiMethod { SpectralSum, Resolvent, FiniteDifference };

const char* to_string(ChiMethod method);

struct SusceptibilityValue {
    int order{2};  // 2r+2
    double value{0.0};
    ChiMethod method{ChiMethod::SpectralSum};
    int n_max{0};
};

struct NoiseLine {
    double omega{0.0};   // excitation energy E_n - E_0 > 0
    double weight{0.0};  // |⟨Ψn|H1|Ψ0⟩|²
};

// Weighted δ-spectrum of the driving operator; its inverse even moments are
// the susceptibilities. Lines are ascending in omega; weights below
// 1e-16 × (sum rule) are rounding noise and dropped.
struct NoiseSpectrum {
    std::vector<NoiseLine> lines;
};

// |⟨Ψ0(g)|Ψ0(g + δg)⟩| with both ground states at the same truncation.
// Evaluated in the ground state's parity sector at dense reference accuracy.
double fidelity(const ModelParams& params, double delta_g, const Truncation& trunc);

// χ_{2r+2} = Σ_{n≠0} w_n / Δ_n^{2r+2}, w_n = |⟨Ψn|H1|Ψ0⟩|², Δ_n = E_n - E_0.
SusceptibilityValue chi_spectral(const SpectralDecomposition& decomp, const OperatorMatrix& h1, int r);

// Same quantity via r+1 deflated solves: χ_{2r+2} = ‖(H - E0)^{-(r+1)} Q H1 Ψ0‖².
SusceptibilityValue chi_resolvent(const OperatorMatrix& h, double e0, const Vector& psi0,
                                  const OperatorMatrix& h1, int r);

// χ_F from the overlap definition at finite δg: -2 ln F / δg², O(δg²) error.
// Computed through the projected infidelity and log1p so small δg stays exact.
SusceptibilityValue chi_finite_difference(const ModelParams& params, double delta_g,
                                          const Truncation& trunc);

// Richardson pair (δg, δg/2): cancels the O(δg²) term.
double chi_fd_richardson(const ModelParams& params, double delta_g, const Truncation& trunc);

NoiseSpectrum noise_spectrum(const SpectralDecomposition& decomp, const OperatorMatrix& h1);

// Σ weight / omega^k for even k ≥ 2; k = 2 is χ_F, k = 4 is χ_4.
double moment(const NoiseSpectrum& spectrum, int k);

struct ExcitationProbability {
    double value{0.0};
    bool clamped{false};  // perturbative formula left its range (b²χ > 1)
};

// P_ex = b² χ_{2r+2} for a polynomial ramp of amplitude b.
ExcitationProbability excitation_probability(double ramp_amplitude, const SusceptibilityValue& chi);

// Ground pair of H(params) in the odd parity sector (the sector that holds the
// ground state), embedded back into the full basis. Dense reference accuracy.
std::pair<double, Vector> sector_ground_dense(const ModelParams& params, const Truncation& trunc);

}  // namespace rabi
