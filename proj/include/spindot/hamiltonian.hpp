#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "spindot/errors.hpp"

namespace spindot {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Pauli matrices in the computational basis: index 0 = |up>, 1 = |down>.
// Note the energy convention used throughout: |up> is the LOWER state, so
// single-site terms are written with diag(-1, +1) = -sigma_z.
namespace pauli {
const Matrix& identity();
const Matrix& x();
const Matrix& y();
const Matrix& z();
}  // namespace pauli

// Dense Hermitian matrix in energy units (J). dim is a power of two <= 1024.
class HermitianMatrix {
  public:
    // Validates dimension and Hermiticity (1e-14 relative of max |entry|).
    explicit HermitianMatrix(Matrix m);

    int dim() const { return static_cast<int>(m_.rows()); }
    const Matrix& matrix() const { return m_; }

  private:
    Matrix m_;
};

enum class ExchangeKind { heisenberg, ising };

// Exchange written with Pauli matrices: heisenberg J sigma.sigma, ising
// J sigma_z sigma_z. J > 0 lowers the singlet relative to the triplet in
// heisenberg form (spectrum -3J / +J).
struct ExchangeModel {
    ExchangeKind kind = ExchangeKind::heisenberg;
    double j = 0.0;  // J (energy units)
};

struct ChainCoupling {
    int site_a = 0;
    int site_b = 1;
    ExchangeModel model;
};

// diag(-delta/2, +delta/2): index 0 = |up> (lower), 1 = |down> (higher).
HermitianMatrix build_single(double delta);

// (Delta_C/2)(-sz x I) + (Delta_T/2)(I x -sz) + exchange; basis order
// |uu>, |ud>, |du>, |dd>, control first.
HermitianMatrix build_pair(double delta_c, double delta_t, const ExchangeModel& ex);

// N-site register: single-site terms plus pairwise exchange couplings,
// Kronecker-embedded with site 0 leftmost. N <= 10.
HermitianMatrix build_chain(const std::vector<double>& deltas,
                            const std::vector<ChainCoupling>& couplings);

// Embeds a one-site operator at `site` of an n-site register.
Matrix embed_site_operator(const Matrix& op, int site, int n_sites);

struct EigenSolution {
    Eigen::VectorXd values;  // ascending
    Matrix vectors;          // columns, orthonormal
};

// Dense eigensolution; checks the Hermiticity tolerance, the residual
// ||H v - lambda v|| <= 1e-10 ||H||, and unitarity of the eigenvector matrix.
EigenSolution eigensolve(const HermitianMatrix& h);

}  // namespace spindot
