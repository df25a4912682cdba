#pragma once

#include <functional>
#include <stdexcept>

#include "mstrang/grid.hpp"

namespace mstrang {

/// Action of a square operator on a vector.
using LinearOperator = std::function<Vector(const Vector&)>;

/// Raised when the Krylov error estimate is still above tolerance at m_max.
class KrylovNotConverged : public std::runtime_error {
public:
    KrylovNotConverged(int m, double estimate);

    int dimension() const { return dimension_; }
    double estimate() const { return estimate_; }

private:
    int dimension_;
    double estimate_;
};

// Dense matrix functions. exp uses scaling and squaring with a diagonal Padé
// approximant of degree 3..13 chosen from the 1-norm.

Matrix dense_expm(const Matrix& m);

/// phi1(M) = M^{-1}(exp(M) - I), continuous at singular M (phi1(0) = I).
/// Read off the exponential of the block matrix [[M, I], [0, 0]].
Matrix dense_phi1(const Matrix& m);

/// phi1(M) x via the exponential of the (n+1)-square block [[M, x], [0, 0]].
Vector dense_phi1_action(const Matrix& m, const Vector& x);

/// Arnoldi relation A V = V H + h e_m^T on an m_eff-dimensional Krylov space.
struct ArnoldiFactorization {
    Matrix V;        // K x m_eff, orthonormal columns, first column = seed / beta
    Matrix H;        // m_eff x m_eff upper Hessenberg
    int m_eff = 0;
    double beta = 0.0;
    bool breakdown = false;
    // Subdiagonal entry h_{m+1,m} that would extend H; zero after breakdown.
    double next_subdiag = 0.0;
};

/// Modified Gram-Schmidt Arnoldi. Stops early (breakdown = true) once the new
/// direction's norm drops below breakdown_tol times the norm of A v_j.
ArnoldiFactorization arnoldi(const LinearOperator& apply_a, const Vector& seed, int m,
                             double breakdown_tol = 1e-14);

/// exp(tA) x ~ beta V_m exp(t H_m) e_1 with m grown until the estimate
/// beta |t| h_{m+1,m} |[phi1(t H_m)]_{m,1}| is at most tol * beta, or the
/// Krylov space becomes invariant.
Vector expm_action(const LinearOperator& apply_a, double t, const Vector& x, int m_max,
                   double tol, double breakdown_tol = 1e-14);

/// phi1(tA) x, same approximation with phi1 in place of exp.
Vector phi1_action(const LinearOperator& apply_a, double t, const Vector& x, int m_max,
                   double tol, double breakdown_tol = 1e-14);

}  // namespace mstrang
