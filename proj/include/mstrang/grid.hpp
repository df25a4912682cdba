#pragma once

#include <cstddef>

#include <Eigen/Dense>

namespace mstrang {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Uniform grid on [0, L] with K interior nodes x_k = k*dx, k = 1..K.
/// Boundary nodes are never part of a state vector.
class Grid1D {
public:
    Grid1D(double length, std::size_t interior_count);

    double length() const { return length_; }
    std::size_t interior_count() const { return interior_count_; }
    double spacing() const { return spacing_; }

    /// Position of interior node k, 1-based.
    double node(std::size_t k) const { return static_cast<double>(k) * spacing_; }

    /// Interior node positions as a vector (entry i holds x_{i+1}).
    Vector nodes() const;

private:
    double length_;
    std::size_t interior_count_;
    double spacing_;
};

Grid1D build_grid(double length, std::size_t interior_count);

// Central differences over the interior. The caller supplies the Dirichlet
// values at x = 0 and x = L; they stand in for values[-1] and values[K].

void diff1(const Vector& values, double left, double right, double dx, Vector& out);
void diff2(const Vector& values, double left, double right, double dx, Vector& out);

Vector diff1(const Vector& values, double left, double right, double dx);
Vector diff2(const Vector& values, double left, double right, double dx);

}  // namespace mstrang
