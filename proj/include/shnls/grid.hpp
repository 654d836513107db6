#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace shnls {

using Complex = std::complex<double>;

/// Raised when a field carries NaN/Inf into an operation, or an update produces one.
class NonFiniteError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Uniform periodic box in 1, 2 or 3 dimensions.
///
/// Sample j on axis d sits at x = -L_d/2 + j*L_d/n_d, so the box center is the
/// origin and lies on a grid point. Samples are stored row-major with axis 0
/// slowest. Unused axes have n = 1 and length 1 and are ignored everywhere.
class Grid {
public:
    Grid() = default;
    Grid(int dim, std::array<std::size_t, 3> n, std::array<double, 3> length);

    /// Cubic box with the same n and L on every axis.
    static Grid cube(int dim, std::size_t n, double length);

    int dim() const { return dim_; }
    std::size_t n(int axis) const { return n_[static_cast<std::size_t>(axis)]; }
    double length(int axis) const { return length_[static_cast<std::size_t>(axis)]; }
    double spacing(int axis) const { return length(axis) / static_cast<double>(n(axis)); }
    std::size_t size() const { return n_[0] * n_[1] * n_[2]; }
    double cell_volume() const;
    double volume() const;

    /// Signed FFT mode index for storage position j: 0, 1, ..., n/2-1, -n/2, ..., -1.
    static long mode_index(std::size_t j, std::size_t n);

    /// k = 2*pi*m/L for storage position j along axis.
    double wavenumber(int axis, std::size_t j) const;
    std::vector<double> wavenumbers(int axis) const;

    /// Physical coordinate of sample j along axis.
    double coordinate(int axis, std::size_t j) const;

    /// Per-axis multi-index of flat sample position.
    std::array<std::size_t, 3> unflatten(std::size_t flat) const;

    /// |k|^2 for every flat position, in storage order.
    std::vector<double> wavenumber_sq_table() const;

    /// Squared distance from the box center for every sample.
    std::vector<double> radius_sq_table() const;

    std::string describe() const;

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    int dim_ = 1;
    std::array<std::size_t, 3> n_{8, 1, 1};
    std::array<double, 3> length_{1.0, 1.0, 1.0};
};

/// Sampled complex field on a grid.
struct ComplexField {
    Grid grid;
    std::vector<Complex> values;

    ComplexField() = default;
    explicit ComplexField(const Grid& g) : grid(g), values(g.size(), Complex{}) {}
    ComplexField(const Grid& g, std::vector<Complex> v);

    std::size_t size() const { return values.size(); }
    Complex& operator[](std::size_t i) { return values[i]; }
    const Complex& operator[](std::size_t i) const { return values[i]; }

    bool all_finite() const;
    /// Throws NonFiniteError naming `where` if any sample is NaN/Inf.
    void require_finite(const char* where) const;
};

using RealField = std::vector<double>;

}  // namespace shnls
