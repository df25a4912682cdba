#include <doctest.h>

#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "mstrang/matfun.hpp"
#include "mstrang/model.hpp"

using namespace mstrang;

namespace {

double rel_err(const Matrix& a, const Matrix& b) {
    return (a - b).norm() / b.norm();
}

double rel_err(const Vector& a, const Vector& b) {
    return (a - b).norm() / b.norm();
}

LinearOperator dense_op(const Matrix& a) {
    return [a](const Vector& v) -> Vector { return a * v; };
}

Matrix laplacian(Eigen::Index k) {
    const ProblemSpec spec = case1_problem(static_cast<std::size_t>(k));
    return naive_heat_parts(spec, 0.0).A.to_dense();
}

Vector random_vector(std::mt19937_64& rng, Eigen::Index n) {
    std::normal_distribution<double> g;
    Vector v(n);
    for (auto& x : v) x = g(rng);
    return v;
}

Matrix random_tridiagonal(std::mt19937_64& rng, Eigen::Index n) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    Matrix a = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        a(i, i) = unif(rng);
        if (i > 0) a(i, i - 1) = unif(rng);
        if (i + 1 < n) a(i, i + 1) = unif(rng);
    }
    return a;
}

}  // namespace

TEST_CASE("dense_expm closed forms") {
    CHECK(dense_expm(Matrix::Zero(4, 4)).isApprox(Matrix::Identity(4, 4), 1e-15));

    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = -2.0;
    const Matrix ed = dense_expm(d);
    CHECK(ed(0, 0) == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
    CHECK(ed(1, 1) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
    CHECK(ed(0, 1) == 0.0);

    Matrix n(2, 2);
    n << 0, 1, 0, 0;
    Matrix expected(2, 2);
    expected << 1, 1, 0, 1;
    CHECK(dense_expm(n).isApprox(expected, 1e-15));
}

TEST_CASE("dense_expm agrees with Eigen's MatrixExponential across Padé degrees") {
    std::mt19937_64 rng(1);
    // Norms chosen to hit every degree and the scaled branch.
    for (double scale : {1e-3, 0.1, 0.5, 1.5, 4.0, 30.0}) {
        Matrix a = Matrix::Random(6, 6);
        a *= scale / a.cwiseAbs().colwise().sum().maxCoeff();
        const Matrix oracle = a.exp();
        CHECK(rel_err(dense_expm(a), oracle) < 1e-13);
    }
    const Matrix stiff = 0.01 * laplacian(40);
    CHECK(rel_err(dense_expm(stiff), Matrix(stiff.exp())) < 1e-12);
}

TEST_CASE("dense_expm rejects bad input") {
    CHECK_THROWS_AS(dense_expm(Matrix::Zero(2, 3)), std::invalid_argument);
    Matrix bad = Matrix::Zero(2, 2);
    bad(0, 1) = NAN;
    CHECK_THROWS_AS(dense_expm(bad), std::invalid_argument);
    CHECK_THROWS_AS(dense_phi1(bad), std::invalid_argument);
}

TEST_CASE("dense_phi1 closed forms") {
    CHECK(dense_phi1(Matrix::Zero(3, 3)).isApprox(Matrix::Identity(3, 3), 1e-15));

    Matrix one(1, 1);
    one << 1.0;
    CHECK(dense_phi1(one)(0, 0) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));

    Matrix n(2, 2);
    n << 0, 1, 0, 0;
    Matrix expected(2, 2);
    expected << 1, 0.5, 0, 1;
    CHECK(dense_phi1(n).isApprox(expected, 1e-15));
}

TEST_CASE("phi1 identity and semigroup on model operators") {
    for (Eigen::Index k : {1, 10, 50}) {
        const ProblemSpec spec = case2_problem(1.0, 3.0, static_cast<std::size_t>(k));
        for (const Matrix& a : {naive_heat_parts(spec, 0.0).A.to_dense(),
                                modified_linear_parts(spec, 0.0).A.to_dense()}) {
            const Matrix m = 1e-3 * a;
            const Matrix e = dense_expm(m);
            const Matrix lhs = m * dense_phi1(m);
            const Matrix rhs = e - Matrix::Identity(k, k);
            CHECK(rel_err(lhs, rhs) <= 1e-11);
            CHECK(rel_err(Matrix(e * e), dense_expm(2.0 * m)) <= 1e-11);
        }
    }
}

TEST_CASE("dense_phi1_action matches the dense phi1 matrix") {
    std::mt19937_64 rng(2);
    const Matrix m = 2e-3 * laplacian(30);
    const Vector x = random_vector(rng, 30);
    CHECK(rel_err(dense_phi1_action(m, x), Vector(dense_phi1(m) * x)) < 1e-12);
}

TEST_CASE("arnoldi on an eigenvector breaks down after one step") {
    const Eigen::Index k = 8;
    const Matrix a = laplacian(k);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(a);
    const Vector seed = 3.0 * eig.eigenvectors().col(2);
    const ArnoldiFactorization f = arnoldi(dense_op(a), seed, 5);
    CHECK(f.breakdown);
    CHECK(f.m_eff == 1);
    CHECK(f.H(0, 0) == doctest::Approx(eig.eigenvalues()[2]).epsilon(1e-12));
    CHECK(f.beta == doctest::Approx(3.0));
}

TEST_CASE("arnoldi on the identity") {
    const Vector seed = Vector::LinSpaced(6, 1.0, 6.0);
    const ArnoldiFactorization f = arnoldi(dense_op(Matrix::Identity(6, 6)), seed, 4);
    CHECK(f.breakdown);
    CHECK(f.m_eff == 1);
    CHECK(f.H(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("arnoldi factorization invariants on random tridiagonal operators") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix a = random_tridiagonal(rng, 50);
        const Vector seed = random_vector(rng, 50);
        const ArnoldiFactorization f = arnoldi(dense_op(a), seed, 20);
        REQUIRE(f.m_eff == 20);
        CHECK_FALSE(f.breakdown);
        const Matrix gram = f.V.transpose() * f.V;
        CHECK((gram - Matrix::Identity(20, 20)).cwiseAbs().maxCoeff() <= 1e-10);
        const Matrix av = a * f.V;
        CHECK((f.V.transpose() * av - f.H).cwiseAbs().maxCoeff() <= 1e-8 * av.cwiseAbs().maxCoeff());
        CHECK((f.V.col(0) - seed / f.beta).cwiseAbs().maxCoeff() <= 1e-15);
        for (Eigen::Index i = 2; i < 20; ++i)
            for (Eigen::Index j = 0; j + 1 < i; ++j) CHECK(f.H(i, j) == 0.0);
    }
}

TEST_CASE("arnoldi rejects bad arguments") {
    const Matrix a = laplacian(5);
    CHECK_THROWS_AS(arnoldi(dense_op(a), Vector::Zero(5), 3), std::invalid_argument);
    CHECK_THROWS_AS(arnoldi(dense_op(a), Vector::Ones(5), 0), std::invalid_argument);
    CHECK_THROWS_AS(arnoldi(dense_op(a), Vector::Ones(5), 6), std::invalid_argument);
}

TEST_CASE("Krylov actions on scalar problems") {
    Matrix a(1, 1);
    a << -8.0;
    const Vector one = Vector::Ones(1);
    CHECK(expm_action(dense_op(a), 0.1, Vector::Zero(1), 30, 1e-12).isZero(0.0));
    CHECK(phi1_action(dense_op(a), 0.1, Vector::Zero(1), 30, 1e-12).isZero(0.0));
    CHECK(expm_action(dense_op(a), 0.1, one, 30, 1e-12)[0] ==
          doctest::Approx(0.44932896411722156).epsilon(1e-14));
    CHECK(phi1_action(dense_op(a), 0.1, one, 30, 1e-12)[0] ==
          doctest::Approx(0.688338794853473).epsilon(1e-14));
}

TEST_CASE("Krylov actions match the dense oracle on the Dirichlet Laplacian") {
    std::mt19937_64 rng(23);
    const Matrix a = laplacian(50);
    const Vector x = random_vector(rng, 50);
    for (double t : {1e-4, 0.01}) {
        CHECK(rel_err(expm_action(dense_op(a), t, x, 50, 1e-12), Vector(dense_expm(t * a) * x)) <= 1e-10);
        CHECK(rel_err(phi1_action(dense_op(a), t, x, 50, 1e-12), Vector(dense_phi1(t * a) * x)) <= 1e-10);
    }
}

TEST_CASE("Krylov action signals non-convergence") {
    std::mt19937_64 rng(29);
    const Matrix a = laplacian(200);
    const Vector x = random_vector(rng, 200);
    CHECK_THROWS_AS(expm_action(dense_op(a), 0.05, x, 10, 1e-12), KrylovNotConverged);
}

TEST_CASE("Krylov result is exact after breakdown") {
    // Seed in a 3-dimensional invariant subspace of a symmetric operator.
    const Matrix a = laplacian(12);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(a);
    const Vector x = eig.eigenvectors().col(0) - 2.0 * eig.eigenvectors().col(5) +
                     0.5 * eig.eigenvectors().col(9);
    const double t = 1e-3;
    const Vector krylov = expm_action(dense_op(a), t, x, 12, 1e-30);
    CHECK(rel_err(krylov, Vector(dense_expm(t * a) * x)) <= 1e-12);
    const ArnoldiFactorization f = arnoldi(dense_op(a), x, 12);
    CHECK(f.breakdown);
    CHECK(f.m_eff == 3);
}
