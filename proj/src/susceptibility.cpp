// susceptibility.cpp — spectral-sum, resolvent, and overlap routes to χ_{2r+2}

#include "rabi/susceptibility.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rabi {

namespace {

constexpr double kWeightCut = 1e-16;  // relative to the sum rule

double ipow(double base, int exponent) {
    double out = 1.0;
    for (int i = 0; i < exponent; ++i) out *= base;
    return out;
}

void check_order_input(int r) {
    if (r < 0) throw std::invalid_argument("susceptibility: r must be >= 0, got " + std::to_string(r));
}

}  // namespace

const char* to_string(ChiMethod method) {
    switch (method) {
        case ChiMethod::SpectralSum: return "spectral-sum";
        case ChiMethod::Resolvent: return "resolvent";
        case ChiMethod::FiniteDifference: return "finite-difference";
    }
    return "unknown";
}

std::pair<double, Vector> sector_ground_dense(const ModelParams& params, const Truncation& trunc) {
    validate(params);
    validate(trunc);
    const auto idx = parity_indices(trunc, Parity::Odd);
    const OperatorMatrix h = build_hamiltonian(params, trunc);
    const SpectralDecomposition d = diagonalize_full(restrict_to(h, idx));
    if (d.dim > 1 && d.energies(1) - d.energies(0) <= 1e-12) {
        throw DegenerateGroundState("sector_ground_dense: degenerate sector ground state (gap " +
                                    std::to_string(d.energies(1) - d.energies(0)) + ")");
    }
    return {d.energies(0), embed_from(d.vectors.col(0), idx, trunc.dim())};
}

double fidelity(const ModelParams& params, double delta_g, const Truncation& trunc) {
    if (delta_g == 0.0) return 1.0;
    const auto [e0, v0] = sector_ground_dense(params, trunc);
    ModelParams shifted = params;
    shifted.g += delta_g;
    const auto [e1, v1] = sector_ground_dense(shifted, trunc);
    return std::abs(v0.dot(v1));
}

SusceptibilityValue chi_spectral(const SpectralDecomposition& decomp, const OperatorMatrix& h1, int r) {
    check_order_input(r);
    if (h1.rows() != decomp.dim || h1.cols() != decomp.dim) {
        throw std::invalid_argument("chi_spectral: operator/decomposition dimension mismatch");
    }
    const Vector h1_psi0 = h1 * decomp.vectors.col(0);
    const Vector overlaps = decomp.vectors.transpose() * h1_psi0;
    const double sum_rule = h1_psi0.squaredNorm() - overlaps(0) * overlaps(0);
    const double cut = kWeightCut * std::abs(sum_rule);

    double sum = 0.0;
    for (int n = decomp.dim - 1; n >= 1; --n) {  // large gaps first: accumulate small terms before dominant ones
        const double w = overlaps(n) * overlaps(n);
        if (w <= cut) continue;
        const double gap = decomp.energies(n) - decomp.energies(0);
        if (!(gap > 0.0)) {
            throw std::logic_error("chi_spectral: non-positive excitation gap at n=" + std::to_string(n) +
                                   " (ordering violation)");
        }
        sum += w / ipow(gap, 2 * r + 2);
    }
    return {2 * r + 2, sum, ChiMethod::SpectralSum, -1};
}

SusceptibilityValue chi_resolvent(const OperatorMatrix& h, double e0, const Vector& psi0,
                                  const OperatorMatrix& h1, int r) {
    check_order_input(r);
    if (h.rows() != psi0.size() || h1.rows() != psi0.size()) {
        throw std::invalid_argument("chi_resolvent: dimension mismatch");
    }
    const int bw = matrix_bandwidth(h1);
    Vector x(psi0.size());
    banded_matvec(h1, bw, psi0, x);
    x -= psi0.dot(x) * psi0;  // Q H1 Ψ0
    for (int k = 0; k <= r; ++k) {
        x = deflated_solve(h, e0, psi0, x);
    }
    return {2 * r + 2, x.squaredNorm(), ChiMethod::Resolvent,
            static_cast<int>(h.rows()) / 2 - 1};
}

SusceptibilityValue chi_finite_difference(const ModelParams& params, double delta_g,
                                          const Truncation& trunc) {
    if (delta_g == 0.0) throw std::invalid_argument("chi_finite_difference: delta_g must be nonzero");
    const auto [e0, v0] = sector_ground_dense(params, trunc);
    ModelParams shifted = params;
    shifted.g += delta_g;
    const auto [e1, v1] = sector_ground_dense(shifted, trunc);

    // β² = 1 - F² from the projected residual; exact for unit vectors and free
    // of the 1 - F cancellation at small δg
    const double c = v0.dot(v1);
    const double beta2 = (v1 - c * v0).squaredNorm();
    if (beta2 > 0.19) {  // 1 - F ≥ 0.1
        throw std::invalid_argument("chi_finite_difference: delta_g too large (1 - F >= 0.1)");
    }
    const double chi = -std::log1p(-beta2) / (delta_g * delta_g);
    return {2, chi, ChiMethod::FiniteDifference, trunc.n_max};
}

double chi_fd_richardson(const ModelParams& params, double delta_g, const Truncation& trunc) {
    const double full = chi_finite_difference(params, delta_g, trunc).value;
    const double half = chi_finite_difference(params, 0.5 * delta_g, trunc).value;
    return (4.0 * half - full) / 3.0;
}

NoiseSpectrum noise_spectrum(const SpectralDecomposition& decomp, const OperatorMatrix& h1) {
    if (h1.rows() != decomp.dim || h1.cols() != decomp.dim) {
        throw std::invalid_argument("noise_spectrum: operator/decomposition dimension mismatch");
    }
    const Vector h1_psi0 = h1 * decomp.vectors.col(0);
    const Vector overlaps = decomp.vectors.transpose() * h1_psi0;
    const double sum_rule = h1_psi0.squaredNorm() - overlaps(0) * overlaps(0);
    const double cut = kWeightCut * std::abs(sum_rule);

    NoiseSpectrum spectrum;
    spectrum.lines.reserve(static_cast<std::size_t>(decomp.dim) - 1);
    for (int n = 1; n < decomp.dim; ++n) {
        const double w = overlaps(n) * overlaps(n);
        if (w <= cut) continue;
        const double omega = decomp.energies(n) - decomp.energies(0);
        if (!(omega > 0.0)) {
            throw std::logic_error("noise_spectrum: non-positive excitation energy at n=" +
                                   std::to_string(n));
        }
        spectrum.lines.push_back({omega, w});
    }
    return spectrum;
}

double moment(const NoiseSpectrum& spectrum, int k) {
    if (k < 2 || k % 2 != 0) {
        throw std::invalid_argument("moment: k must be a positive even integer, got " + std::to_string(k));
    }
    double sum = 0.0;
    for (auto it = spectrum.lines.rbegin(); it != spectrum.lines.rend(); ++it) {
        sum += it->weight / ipow(it->omega, k);
    }
    return sum;
}

ExcitationProbability excitation_probability(double ramp_amplitude, const SusceptibilityValue& chi) {
    if (chi.order < 2 || chi.order % 2 != 0) {
        throw std::invalid_argument("excitation_probability: chi order must be even and >= 2");
    }
    if (chi.value < 0.0) {
        throw std::invalid_argument("excitation_probability: negative susceptibility");
    }
    const double p = ramp_amplitude * ramp_amplitude * chi.value;
    if (p > 1.0) return {1.0, true};
    return {p, false};
}

}  // namespace rabi
