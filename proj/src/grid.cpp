#include "mstrang/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mstrang {

Grid1D::Grid1D(double length, std::size_t interior_count)
    : length_(length), interior_count_(interior_count) {
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw std::invalid_argument("grid length must be positive and finite, got " +
                                    std::to_string(length));
    }
    if (interior_count == 0) {
        throw std::invalid_argument("grid needs at least one interior node");
    }
    spacing_ = length_ / static_cast<double>(interior_count_ + 1);
}

Vector Grid1D::nodes() const {
    Vector x(static_cast<Eigen::Index>(interior_count_));
    for (std::size_t k = 0; k < interior_count_; ++k) {
        x[static_cast<Eigen::Index>(k)] = node(k + 1);
    }
    return x;
}

Grid1D build_grid(double length, std::size_t interior_count) {
    return Grid1D(length, interior_count);
}

namespace {

void check_spacing(double dx) {
    if (!(dx > 0.0)) {
        throw std::invalid_argument("difference operator needs dx > 0");
    }
}

void check_sizes(const Vector& values, const Vector& out) {
    if (values.size() == 0) {
        throw std::invalid_argument("difference operator needs a non-empty vector");
    }
    if (out.size() != values.size()) {
        throw std::invalid_argument("difference operator output has the wrong length");
    }
}

}  // namespace

void diff1(const Vector& values, double left, double right, double dx, Vector& out) {
    check_spacing(dx);
    check_sizes(values, out);
    const Eigen::Index n = values.size();
    const double inv = 1.0 / (2.0 * dx);
    if (n == 1) {
        out[0] = (right - left) * inv;
        return;
    }
    out[0] = (values[1] - left) * inv;
    for (Eigen::Index k = 1; k + 1 < n; ++k) {
        out[k] = (values[k + 1] - values[k - 1]) * inv;
    }
    out[n - 1] = (right - values[n - 2]) * inv;
}

void diff2(const Vector& values, double left, double right, double dx, Vector& out) {
    check_spacing(dx);
    check_sizes(values, out);
    const Eigen::Index n = values.size();
    const double inv = 1.0 / (dx * dx);
    if (n == 1) {
        out[0] = (right - 2.0 * values[0] + left) * inv;
        return;
    }
    out[0] = (values[1] - 2.0 * values[0] + left) * inv;
    for (Eigen::Index k = 1; k + 1 < n; ++k) {
        out[k] = (values[k + 1] - 2.0 * values[k] + values[k - 1]) * inv;
    }
    out[n - 1] = (right - 2.0 * values[n - 1] + values[n - 2]) * inv;
}

Vector diff1(const Vector& values, double left, double right, double dx) {
    Vector out(values.size());
    diff1(values, left, right, dx, out);
    return out;
}

Vector diff2(const Vector& values, double left, double right, double dx) {
    Vector out(values.size());
    diff2(values, left, right, dx, out);
    return out;
}

}  // namespace mstrang
