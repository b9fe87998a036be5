#include "spindot/hamiltonian.hpp"

#include <cmath>

namespace spindot {

namespace pauli {

const Matrix& identity() {
    static const Matrix m = Matrix::Identity(2, 2);
    return m;
}
const Matrix& x() {
    static const Matrix m = (Matrix(2, 2) << 0, 1, 1, 0).finished();
    return m;
}
const Matrix& y() {
    static const Matrix m = (Matrix(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished();
    return m;
}
const Matrix& z() {
    static const Matrix m = (Matrix(2, 2) << 1, 0, 0, -1).finished();
    return m;
}

}  // namespace pauli

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void check_hermitian(const Matrix& m) {
    if (m.rows() != m.cols()) throw DomainError("HermitianMatrix: matrix must be square");
    const int d = static_cast<int>(m.rows());
    if (!is_power_of_two(d) || d > 1024) {
        throw CapacityError("HermitianMatrix: dim must be a power of two <= 1024");
    }
    const double scale = m.cwiseAbs().maxCoeff();
    const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (scale > 0.0 && dev > 1e-14 * scale) {
        throw DomainError("HermitianMatrix: input is not Hermitian within tolerance");
    }
}

}  // namespace

HermitianMatrix::HermitianMatrix(Matrix m) : m_(std::move(m)) { check_hermitian(m_); }

HermitianMatrix build_single(double delta) {
    if (delta < 0.0) throw DomainError("build_single: delta must be >= 0");
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = -delta / 2.0;
    m(1, 1) = +delta / 2.0;
    return HermitianMatrix(std::move(m));
}

namespace {

Matrix exchange_term(const ExchangeModel& ex, int site_a, int site_b, int n) {
    if (ex.kind == ExchangeKind::ising) {
        return ex.j * (embed_site_operator(pauli::z(), site_a, n) *
                       embed_site_operator(pauli::z(), site_b, n));
    }
    Matrix m = Matrix::Zero(1L << n, 1L << n);
    for (const Matrix* p : {&pauli::x(), &pauli::y(), &pauli::z()}) {
        m += ex.j * (embed_site_operator(*p, site_a, n) * embed_site_operator(*p, site_b, n));
    }
    return m;
}

}  // namespace

HermitianMatrix build_pair(double delta_c, double delta_t, const ExchangeModel& ex) {
    return build_chain({delta_c, delta_t}, {{0, 1, ex}});
}

HermitianMatrix build_chain(const std::vector<double>& deltas,
                            const std::vector<ChainCoupling>& couplings) {
    const int n = static_cast<int>(deltas.size());
    if (n < 1) throw DomainError("build_chain: need at least one site");
    if (n > 10) throw CapacityError("build_chain: at most 10 sites supported");
    const long dim = 1L << n;
    Matrix m = Matrix::Zero(dim, dim);
    for (int s = 0; s < n; ++s) {
        if (deltas[static_cast<size_t>(s)] < 0.0) {
            throw DomainError("build_chain: deltas must be >= 0");
        }
        // -sz so that |up> sits at -delta/2
        m += (deltas[static_cast<size_t>(s)] / 2.0) * embed_site_operator(-pauli::z(), s, n);
    }
    for (const auto& c : couplings) {
        if (c.site_a < 0 || c.site_a >= n || c.site_b < 0 || c.site_b >= n ||
            c.site_a == c.site_b) {
            throw DomainError("build_chain: coupling site indices invalid");
        }
        m += exchange_term(c.model, c.site_a, c.site_b, n);
    }
    return HermitianMatrix(std::move(m));
}

Matrix embed_site_operator(const Matrix& op, int site, int n_sites) {
    if (site < 0 || site >= n_sites) throw DomainError("embed_site_operator: site out of range");
    Matrix m = Matrix::Identity(1, 1);
    for (int s = 0; s < n_sites; ++s) {
        const Matrix& factor = (s == site) ? op : pauli::identity();
        Matrix next(m.rows() * factor.rows(), m.cols() * factor.cols());
        for (long i = 0; i < m.rows(); ++i) {
            for (long j = 0; j < m.cols(); ++j) {
                next.block(i * factor.rows(), j * factor.cols(), factor.rows(), factor.cols()) =
                    m(i, j) * factor;
            }
        }
        m = std::move(next);
    }
    return m;
}

EigenSolution eigensolve(const HermitianMatrix& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
    if (solver.info() != Eigen::Success) {
        throw NumericalError("eigensolve: solver failed to converge");
    }
    EigenSolution sol{solver.eigenvalues(), solver.eigenvectors()};

    const double hnorm = h.matrix().norm();
    const double resid = (h.matrix() * sol.vectors - sol.vectors * sol.values.asDiagonal()).norm();
    if (hnorm > 0.0 && resid > 1e-10 * hnorm) {
        throw NumericalError("eigensolve: residual exceeds tolerance");
    }
    const double unit =
        (sol.vectors.adjoint() * sol.vectors - Matrix::Identity(h.dim(), h.dim())).norm();
    if (unit > 1e-10) {
        throw NumericalError("eigensolve: eigenvector matrix not unitary within tolerance");
    }
    return sol;
}

}  // namespace spindot
