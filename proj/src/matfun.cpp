#include "mstrang/matfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace mstrang {

KrylovNotConverged::KrylovNotConverged(int m, double estimate)
    : std::runtime_error("Krylov approximation did not converge at dimension " +
                         std::to_string(m) + " (error estimate " + std::to_string(estimate) +
                         ")"),
      dimension_(m),
      estimate_(estimate) {}

namespace {

void check_square_finite(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw std::invalid_argument("matrix function needs a non-empty square matrix");
    }
    if (!m.allFinite()) {
        throw std::invalid_argument("matrix function needs finite entries");
    }
}

// Padé coefficients and 1-norm thresholds from Higham (2005).
constexpr std::array<double, 4> kPade3 = {120.0, 60.0, 12.0, 1.0};
constexpr std::array<double, 6> kPade5 = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
constexpr std::array<double, 8> kPade7 = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                          25200.0,    1512.0,    56.0,      1.0};
constexpr std::array<double, 10> kPade9 = {17643225600.0, 8821612800.0, 2075673600.0,
                                           302702400.0,   30270240.0,   2162160.0,
                                           110880.0,      3960.0,       90.0,
                                           1.0};
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};

constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

template <std::size_t N>
Matrix pade_low(const Matrix& a, const std::array<double, N>& c) {
    const Eigen::Index n = a.rows();
    const Matrix ident = Matrix::Identity(n, n);
    const Matrix a2 = a * a;
    Matrix odd = c[1] * ident;
    Matrix even = c[0] * ident;
    Matrix power = ident;
    for (std::size_t j = 2; j < N; j += 2) {
        power = power * a2;
        even += c[j] * power;
        odd += c[j + 1] * power;
    }
    const Matrix u = a * odd;
    return (even - u).partialPivLu().solve(even + u);
}

Matrix pade13(const Matrix& a) {
    const auto& c = kPade13;
    const Eigen::Index n = a.rows();
    const Matrix ident = Matrix::Identity(n, n);
    const Matrix a2 = a * a;
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a4 * a2;
    const Matrix u = a * (a6 * (c[13] * a6 + c[11] * a4 + c[9] * a2) + c[7] * a6 + c[5] * a4 +
                          c[3] * a2 + c[1] * ident);
    const Matrix v = a6 * (c[12] * a6 + c[10] * a4 + c[8] * a2) + c[6] * a6 + c[4] * a4 +
                     c[2] * a2 + c[0] * ident;
    return (v - u).partialPivLu().solve(v + u);
}

double norm1(const Matrix& m) {
    return m.cwiseAbs().colwise().sum().maxCoeff();
}

}  // namespace

Matrix dense_expm(const Matrix& m) {
    check_square_finite(m);
    const double norm = norm1(m);
    if (norm <= kTheta3) return pade_low(m, kPade3);
    if (norm <= kTheta5) return pade_low(m, kPade5);
    if (norm <= kTheta7) return pade_low(m, kPade7);
    if (norm <= kTheta9) return pade_low(m, kPade9);

    const int squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / kTheta13))));
    Matrix result = pade13(m * std::ldexp(1.0, -squarings));
    for (int i = 0; i < squarings; ++i) {
        result = result * result;
    }
    return result;
}

Matrix dense_phi1(const Matrix& m) {
    check_square_finite(m);
    const Eigen::Index n = m.rows();
    Matrix block = Matrix::Zero(2 * n, 2 * n);
    block.topLeftCorner(n, n) = m;
    block.topRightCorner(n, n) = Matrix::Identity(n, n);
    return dense_expm(block).topRightCorner(n, n);
}

Vector dense_phi1_action(const Matrix& m, const Vector& x) {
    check_square_finite(m);
    const Eigen::Index n = m.rows();
    if (x.size() != n) {
        throw std::invalid_argument("dense_phi1_action: vector length mismatch");
    }
    Matrix block = Matrix::Zero(n + 1, n + 1);
    block.topLeftCorner(n, n) = m;
    block.topRightCorner(n, 1) = x;
    return dense_expm(block).topRightCorner(n, 1);
}

namespace {

// Incremental Arnoldi with storage for up to `capacity` basis vectors.
class ArnoldiProcess {
public:
    ArnoldiProcess(const LinearOperator& apply_a, const Vector& seed, int capacity,
                   double breakdown_tol)
        : apply_a_(apply_a),
          breakdown_tol_(breakdown_tol),
          basis_(seed.size(), capacity + 1),
          hessenberg_(Matrix::Zero(capacity + 1, capacity)) {
        beta_ = seed.norm();
        if (!(beta_ > 0.0) || !std::isfinite(beta_)) {
            throw std::invalid_argument("Arnoldi seed must be a nonzero finite vector");
        }
        basis_.col(0) = seed / beta_;
    }

    // Adds one basis vector. Returns false once the space is invariant.
    bool extend() {
        const int j = dim_;
        Vector w = apply_a_(basis_.col(j));
        const double scale = w.norm();
        for (int i = 0; i <= j; ++i) {
            const double h = basis_.col(i).dot(w);
            hessenberg_(i, j) = h;
            w -= h * basis_.col(i);
        }
        const double h_next = w.norm();
        ++dim_;
        if (h_next <= breakdown_tol_ * scale || h_next == 0.0) {
            breakdown_ = true;
            hessenberg_(j + 1, j) = 0.0;
            return false;
        }
        hessenberg_(j + 1, j) = h_next;
        basis_.col(j + 1) = w / h_next;
        return true;
    }

    int dim() const { return dim_; }
    bool breakdown() const { return breakdown_; }
    double beta() const { return beta_; }
    double next_subdiag() const { return breakdown_ ? 0.0 : hessenberg_(dim_, dim_ - 1); }
    auto basis() const { return basis_.leftCols(dim_); }
    auto hessenberg() const { return hessenberg_.topLeftCorner(dim_, dim_); }

private:
    const LinearOperator& apply_a_;
    double breakdown_tol_;
    Matrix basis_;
    Matrix hessenberg_;
    double beta_ = 0.0;
    int dim_ = 0;
    bool breakdown_ = false;
};

enum class KrylovFunction { Exp, Phi1 };

// The error estimate uses the phi1 corner for both functions: for exp it is the
// leading term of the a-posteriori expansion, for phi1 it bounds the phi2
// term from above on the dissipative operators used here.
Vector krylov_action(const LinearOperator& apply_a, double t, const Vector& x, int m_max,
                     double tol, double breakdown_tol, KrylovFunction fn) {
    if (!std::isfinite(t) || !x.allFinite()) {
        throw std::invalid_argument("Krylov action needs finite t and x");
    }
    if (x.isZero(0.0)) {
        return Vector::Zero(x.size());
    }
    const int capacity = std::clamp(m_max, 1, static_cast<int>(x.size()));
    ArnoldiProcess process(apply_a, x, capacity, breakdown_tol);

    double estimate = 0.0;
    while (true) {
        const bool extended = process.extend();
        const int m = process.dim();
        Matrix block = Matrix::Zero(2 * m, 2 * m);
        block.topLeftCorner(m, m) = t * process.hessenberg();
        block.topRightCorner(m, m) = Matrix::Identity(m, m);
        const Matrix e = dense_expm(block);
        const auto exp_h = e.topLeftCorner(m, m);
        const auto phi1_h = e.topRightCorner(m, m);
        const double beta = process.beta();
        auto result = [&] {
            return fn == KrylovFunction::Exp ? Vector(beta * process.basis() * exp_h.col(0))
                                             : Vector(beta * process.basis() * phi1_h.col(0));
        };
        if (!extended) {
            return result();
        }
        estimate = beta * std::abs(t) * process.next_subdiag() * std::abs(phi1_h(m - 1, 0));
        if (estimate <= tol * beta) {
            return result();
        }
        if (m >= capacity) break;
    }
    throw KrylovNotConverged(process.dim(), estimate);
}

}  // namespace

ArnoldiFactorization arnoldi(const LinearOperator& apply_a, const Vector& seed, int m,
                             double breakdown_tol) {
    if (m < 1 || m > seed.size()) {
        throw std::invalid_argument("Arnoldi dimension must satisfy 1 <= m <= K");
    }
    ArnoldiProcess process(apply_a, seed, m, breakdown_tol);
    while (process.dim() < m && process.extend()) {
    }
    return ArnoldiFactorization{
        .V = process.basis(),
        .H = process.hessenberg(),
        .m_eff = process.dim(),
        .beta = process.beta(),
        .breakdown = process.breakdown(),
        .next_subdiag = process.next_subdiag(),
    };
}

Vector expm_action(const LinearOperator& apply_a, double t, const Vector& x, int m_max,
                   double tol, double breakdown_tol) {
    return krylov_action(apply_a, t, x, m_max, tol, breakdown_tol, KrylovFunction::Exp);
}

Vector phi1_action(const LinearOperator& apply_a, double t, const Vector& x, int m_max,
                   double tol, double breakdown_tol) {
    return krylov_action(apply_a, t, x, m_max, tol, breakdown_tol, KrylovFunction::Phi1);
}

}  // namespace mstrang
