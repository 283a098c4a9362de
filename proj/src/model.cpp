// model.cpp — construction of the truncated Rabi operators

#include "rabi/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rabi {

namespace {

// spin sign: s = 0 (down) -> -1, s = 1 (up) -> +1
inline double spin_sign(int s) { return s == 1 ? 1.0 : -1.0; }

}  // namespace

void validate(const ModelParams& params) {
    if (!(params.eta > 0.0)) {
        throw std::invalid_argument("ModelParams: eta must be > 0, got " + std::to_string(params.eta));
    }
    if (!std::isfinite(params.g)) {
        throw std::invalid_argument("ModelParams: g must be finite");
    }
}

void validate(const Truncation& trunc) {
    if (trunc.n_max < 0) {
        throw std::invalid_argument("Truncation: n_max must be >= 0, got " + std::to_string(trunc.n_max));
    }
}

OperatorMatrix build_h0(double eta, const Truncation& trunc) {
    if (!(eta > 0.0)) {
        throw std::invalid_argument("build_h0: eta must be > 0");
    }
    validate(trunc);
    const int d = trunc.dim();
    OperatorMatrix h0 = OperatorMatrix::Zero(d, d);
    for (int n = 0; n <= trunc.n_max; ++n) {
        for (int s = 0; s < 2; ++s) {
            const int k = 2 * n + s;
            h0(k, k) = static_cast<double>(n) + 0.5 * eta * spin_sign(s);
        }
    }
    return h0;
}

OperatorMatrix build_h1(double eta, const Truncation& trunc) {
    if (!(eta > 0.0)) {
        throw std::invalid_argument("build_h1: eta must be > 0");
    }
    validate(trunc);
    const int d = trunc.dim();
    const double c = -0.5 * std::sqrt(eta);
    OperatorMatrix h1 = OperatorMatrix::Zero(d, d);
    for (int n = 0; n + 1 <= trunc.n_max; ++n) {
        const double elem = c * std::sqrt(static_cast<double>(n + 1));
        for (int s = 0; s < 2; ++s) {
            const int k = 2 * n + s;            // (s, n)
            const int kp = 2 * (n + 1) + (1 - s);  // (1-s, n+1)
            h1(k, kp) = elem;
            h1(kp, k) = elem;
        }
    }
    return h1;
}

OperatorMatrix build_hamiltonian(const ModelParams& params, const Truncation& trunc) {
    validate(params);
    OperatorMatrix h = build_h0(params.eta, trunc);
    h += params.g * build_h1(params.eta, trunc);
    return h;
}

OperatorMatrix parity_operator(const Truncation& trunc) {
    validate(trunc);
    const int d = trunc.dim();
    OperatorMatrix pi = OperatorMatrix::Zero(d, d);
    for (int n = 0; n <= trunc.n_max; ++n) {
        const double photon = (n % 2 == 0) ? 1.0 : -1.0;
        for (int s = 0; s < 2; ++s) {
            pi(2 * n + s, 2 * n + s) = spin_sign(s) * photon;
        }
    }
    return pi;
}

std::vector<int> parity_indices(const Truncation& trunc, Parity sector) {
    validate(trunc);
    const double want = static_cast<double>(static_cast<int>(sector));
    std::vector<int> idx;
    idx.reserve(trunc.n_max + 1);
    for (int n = 0; n <= trunc.n_max; ++n) {
        const double photon = (n % 2 == 0) ? 1.0 : -1.0;
        for (int s = 0; s < 2; ++s) {
            if (spin_sign(s) * photon == want) {
                idx.push_back(2 * n + s);
            }
        }
    }
    return idx;
}

OperatorMatrix restrict_to(const OperatorMatrix& m, const std::vector<int>& idx) {
    const auto sz = static_cast<Eigen::Index>(idx.size());
    OperatorMatrix out(sz, sz);
    for (Eigen::Index i = 0; i < sz; ++i) {
        for (Eigen::Index j = 0; j < sz; ++j) {
            out(i, j) = m(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
        }
    }
    return out;
}

Vector embed_from(const Vector& v, const std::vector<int>& idx, int full_dim) {
    if (v.size() != static_cast<Eigen::Index>(idx.size())) {
        throw std::invalid_argument("embed_from: vector/index size mismatch");
    }
    Vector out = Vector::Zero(full_dim);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out(idx[static_cast<std::size_t>(i)]) = v(i);
    }
    return out;
}

}  // namespace rabi
