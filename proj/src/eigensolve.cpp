// eigensolve.cpp — dense reference path (Eigen), Lanczos ground pairs, projected CG

#include "rabi/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

namespace rabi {

namespace {

constexpr double kDegeneracyThreshold = 1e-12;  // absolute, units omega0

double max_abs(const OperatorMatrix& m) { return m.cwiseAbs().maxCoeff(); }

void check_symmetric(const OperatorMatrix& m, const char* where) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw std::invalid_argument(std::string(where) + ": matrix must be square and non-empty");
    }
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * std::max(1.0, max_abs(m))) {
        throw std::invalid_argument(std::string(where) + ": matrix is not symmetric (max asymmetry " +
                                    std::to_string(asym) + ")");
    }
}

// Largest-magnitude component positive; scans from index 0 so ties are deterministic.
void fix_sign(Eigen::Ref<Vector> v) {
    Eigen::Index imax = 0;
    double best = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double a = std::abs(v(i));
        if (a > best) {
            best = a;
            imax = i;
        }
    }
    if (v(imax) < 0.0) v = -v;
}

// Rotate eigenvectors of near-degenerate clusters onto parity eigenstates.
// Clusters only arise from exponentially split parity doublets in the
// superradiant window; same-parity levels never cluster in this model, so a
// fixed absolute threshold is safe. No-op unless the cluster block of the
// parity operator really has ±1 spectrum.
void purify_clusters(SpectralDecomposition& d) {
    constexpr double cluster_tol = 1e-5;
    const int n = d.dim;
    if (n % 2 != 0) return;
    Truncation trunc{n / 2 - 1};
    const OperatorMatrix pi = parity_operator(trunc);

    int i = 0;
    while (i < n) {
        int j = i + 1;
        while (j < n && d.energies(j) - d.energies(j - 1) < cluster_tol) ++j;
        const int size = j - i;
        if (size > 1) {
            Eigen::MatrixXd block = d.vectors.middleCols(i, size);
            Eigen::MatrixXd p_block = block.transpose() * (pi * block);
            p_block = 0.5 * (p_block + p_block.transpose().eval());
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(p_block);
            if (es.eigenvalues().cwiseAbs().minCoeff() > 0.5) {
                d.vectors.middleCols(i, size) = block * es.eigenvectors();
            }
        }
        i = j;
    }
}

// Lowest two eigenvalues of the symmetric tridiagonal (diag, sub).
std::pair<double, double> tridiag_lowest_values(const std::vector<double>& diag,
                                                const std::vector<double>& sub) {
    const int m = static_cast<int>(diag.size());
    Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(diag.data(), m);
    Eigen::VectorXd e = m > 1 ? Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(sub.data(), m - 1))
                              : Eigen::VectorXd();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues()(0);
    const double hi = m > 1 ? es.eigenvalues()(1) : std::numeric_limits<double>::infinity();
    return {lo, hi};
}

// Eigenvector of the tridiagonal for the (well-separated) eigenvalue theta,
// by inverse iteration with zero-pivot regularization.
Eigen::VectorXd tridiag_eigvec(const std::vector<double>& diag, const std::vector<double>& sub,
                               double theta) {
    const int m = static_cast<int>(diag.size());
    Eigen::VectorXd y = Eigen::VectorXd::Constant(m, 1.0 / std::sqrt(static_cast<double>(m)));
    if (m == 1) return y;
    double scale = std::abs(theta);
    for (double v : diag) scale = std::max(scale, std::abs(v));
    for (double v : sub) scale = std::max(scale, std::abs(v));
    const double tiny = 1e-300 + 1e-20 * scale;

    Eigen::VectorXd piv(m), rhs(m);
    for (int sweep = 0; sweep < 3; ++sweep) {
        rhs = y;
        piv(0) = diag[0] - theta;
        if (std::abs(piv(0)) < tiny) piv(0) = piv(0) < 0 ? -tiny : tiny;
        for (int i = 1; i < m; ++i) {
            const double w = sub[static_cast<std::size_t>(i - 1)] / piv(i - 1);
            piv(i) = diag[static_cast<std::size_t>(i)] - theta - w * sub[static_cast<std::size_t>(i - 1)];
            if (std::abs(piv(i)) < tiny) piv(i) = piv(i) < 0 ? -tiny : tiny;
            rhs(i) -= w * rhs(i - 1);
        }
        y(m - 1) = rhs(m - 1) / piv(m - 1);
        for (int i = m - 2; i >= 0; --i) {
            y(i) = (rhs(i) - sub[static_cast<std::size_t>(i)] * y(i + 1)) / piv(i);
        }
        y.normalize();
    }
    return y;
}

}  // namespace

int matrix_bandwidth(const OperatorMatrix& m) {
    const Eigen::Index n = m.rows();
    int bw = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = n - 1; j > i + bw; --j) {
            if (m(i, j) != 0.0) {
                bw = static_cast<int>(j - i);
                break;
            }
        }
    }
    return bw;
}

void banded_matvec(const OperatorMatrix& m, int bandwidth, const Vector& x, Vector& y) {
    const Eigen::Index n = m.rows();
    y.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index lo = std::max<Eigen::Index>(0, i - bandwidth);
        const Eigen::Index hi = std::min<Eigen::Index>(n - 1, i + bandwidth);
        double acc = 0.0;
        for (Eigen::Index j = lo; j <= hi; ++j) acc += m(i, j) * x(j);
        y(i) = acc;
    }
}

SpectralDecomposition diagonalize_full(const OperatorMatrix& h) {
    check_symmetric(h, "diagonalize_full");
    Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("diagonalize_full: eigensolver failed to converge (info=" +
                                 std::to_string(static_cast<int>(solver.info())) + ", dim=" +
                                 std::to_string(h.rows()) + ")");
    }
    SpectralDecomposition d;
    d.dim = static_cast<int>(h.rows());
    d.energies = solver.eigenvalues();
    d.vectors = solver.eigenvectors();
    purify_clusters(d);
    for (int k = 0; k < d.dim; ++k) fix_sign(d.vectors.col(k));
    return d;
}

GroundPair ground_pair(const OperatorMatrix& h, const LanczosOptions& opts) {
    check_symmetric(h, "ground_pair");
    const int n = static_cast<int>(h.rows());
    const int bw = matrix_bandwidth(h);
    const double scale = std::max(1.0, max_abs(h));
    const double tol = opts.tol > 0.0 ? opts.tol : 1e-12 * scale;
    const int max_iter = std::min(opts.max_iter, n);

    Vector v(n);
    if (opts.start != nullptr) {
        if (opts.start->size() != n) {
            throw std::invalid_argument("ground_pair: start vector dimension mismatch");
        }
        v = *opts.start;
    } else {
        std::mt19937_64 rng(opts.seed);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        for (int i = 0; i < n; ++i) v(i) = uni(rng);
    }
    const double nrm0 = v.norm();
    if (!(nrm0 > 0.0)) throw std::invalid_argument("ground_pair: zero start vector");
    v /= nrm0;

    Eigen::MatrixXd basis(n, max_iter);
    basis.col(0) = v;
    std::vector<double> alpha, beta;
    alpha.reserve(static_cast<std::size_t>(max_iter));
    beta.reserve(static_cast<std::size_t>(max_iter));

    Vector w(n), hv(n);
    double theta0 = 0.0;
    double theta1 = std::numeric_limits<double>::infinity();
    bool done = false;
    int m = 0;

    for (int k = 0; k < max_iter && !done; ++k) {
        banded_matvec(h, bw, basis.col(k), hv);
        w = hv;
        if (k > 0) w -= beta[static_cast<std::size_t>(k - 1)] * basis.col(k - 1);
        const double a = basis.col(k).dot(w);
        alpha.push_back(a);
        w -= a * basis.col(k);
        // two-pass classical Gram-Schmidt against the whole basis
        for (int pass = 0; pass < 2; ++pass) {
            w -= basis.leftCols(k + 1) * (basis.leftCols(k + 1).transpose() * w).eval();
        }
        const double b = w.norm();
        m = k + 1;

        const bool breakdown = b < 1e-14 * scale;
        if (breakdown || m == max_iter || m % 5 == 0) {
            std::tie(theta0, theta1) = tridiag_lowest_values(alpha, beta);
            double res_est = 0.0;
            if (!breakdown) {
                const Eigen::VectorXd s = tridiag_eigvec(alpha, beta, theta0);
                res_est = b * std::abs(s(m - 1));
            }
            if (res_est <= tol || breakdown) done = true;
        }
        if (!done && m < max_iter) {
            beta.push_back(b);
            basis.col(m) = w / b;
        }
    }

    const Eigen::VectorXd s = tridiag_eigvec(alpha, beta, theta0);
    GroundPair gp;
    gp.iterations = m;
    gp.vector = basis.leftCols(m) * s;
    gp.vector.normalize();
    fix_sign(gp.vector);
    banded_matvec(h, bw, gp.vector, hv);
    gp.energy = gp.vector.dot(hv);  // Rayleigh quotient of the assembled vector
    gp.residual = (hv - gp.energy * gp.vector).norm();
    gp.gap = theta1 - theta0;

    if (!done && gp.residual > 1e3 * tol) {
        throw std::runtime_error("ground_pair: Lanczos failed to converge (residual " +
                                 std::to_string(gp.residual) + " after " + std::to_string(m) +
                                 " iterations, tol " + std::to_string(tol) + ")");
    }
    if (gp.gap <= kDegeneracyThreshold) {
        throw DegenerateGroundState("ground_pair: near-degenerate ground state (gap " +
                                    std::to_string(gp.gap) + ")");
    }
    return gp;
}

Vector deflated_solve(const OperatorMatrix& h, double e0, const Vector& psi0,
                      const Vector& rhs, const SolveOptions& opts) {
    check_symmetric(h, "deflated_solve");
    const int n = static_cast<int>(h.rows());
    if (psi0.size() != n || rhs.size() != n) {
        throw std::invalid_argument("deflated_solve: dimension mismatch");
    }
    const double rhs_norm = rhs.norm();
    if (!(rhs_norm > 0.0)) return Vector::Zero(n);
    if (std::abs(psi0.dot(rhs)) > 1e-10 * rhs_norm) {
        throw std::invalid_argument("deflated_solve: rhs is not orthogonal to psi0 (overlap " +
                                    std::to_string(psi0.dot(rhs) / rhs_norm) + ")");
    }

    const int bw = matrix_bandwidth(h);
    const int max_iter = opts.max_iter > 0 ? opts.max_iter : 20 * n;
    auto project = [&](Vector& x) { x -= psi0.dot(x) * psi0; };

    Vector r = rhs;
    project(r);
    const double target = opts.rel_tol * rhs_norm;

    Vector x = Vector::Zero(n);
    Vector p = r, ap(n);
    double rr = r.squaredNorm();
    std::vector<double> cg_alpha, cg_beta;  // kept for a condition estimate on failure

    int it = 0;
    for (; it < max_iter && std::sqrt(rr) > target; ++it) {
        banded_matvec(h, bw, p, ap);
        ap -= e0 * p;
        project(ap);
        const double pap = p.dot(ap);
        if (!(pap > 0.0)) {
            throw IllConditionedSolve("deflated_solve: operator not positive definite on the "
                                      "deflated subspace (pAp = " + std::to_string(pap) + ")");
        }
        const double a = rr / pap;
        x += a * p;
        r -= a * ap;
        if ((it + 1) % 50 == 0) project(r);  // re-deflate accumulated drift
        const double rr_new = r.squaredNorm();
        const double b = rr_new / rr;
        cg_alpha.push_back(a);
        cg_beta.push_back(b);
        rr = rr_new;
        p = r + b * p;
    }

    if (std::sqrt(rr) > target) {
        // condition estimate from the CG tridiagonal (Lanczos connection)
        const int m = static_cast<int>(cg_alpha.size());
        std::vector<double> diag(static_cast<std::size_t>(m)), sub;
        for (int i = 0; i < m; ++i) {
            diag[static_cast<std::size_t>(i)] =
                1.0 / cg_alpha[static_cast<std::size_t>(i)] +
                (i > 0 ? cg_beta[static_cast<std::size_t>(i - 1)] / cg_alpha[static_cast<std::size_t>(i - 1)]
                       : 0.0);
            if (i + 1 < m) {
                sub.push_back(std::sqrt(cg_beta[static_cast<std::size_t>(i)]) /
                              cg_alpha[static_cast<std::size_t>(i)]);
            }
        }
        Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(diag.data(), m);
        Eigen::VectorXd e = m > 1 ? Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(sub.data(), m - 1))
                                  : Eigen::VectorXd();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
        const double cond = es.eigenvalues()(m - 1) / std::max(es.eigenvalues()(0), 1e-300);
        throw IllConditionedSolve("deflated_solve: no convergence after " + std::to_string(it) +
                                  " iterations (relative residual " +
                                  std::to_string(std::sqrt(rr) / rhs_norm) + ", condition estimate " +
                                  std::to_string(cond) + ")");
    }
    project(x);
    return x;
}

}  // namespace rabi
