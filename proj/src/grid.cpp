#include "shnls/grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace shnls {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

Grid::Grid(int dim, std::array<std::size_t, 3> n, std::array<double, 3> length)
    : dim_(dim), n_(n), length_(length) {
    if (dim < 1 || dim > 3) {
        throw std::invalid_argument("grid dimension must be 1, 2 or 3");
    }
    for (int d = 0; d < 3; ++d) {
        const auto ud = static_cast<std::size_t>(d);
        if (d < dim) {
            if (n_[ud] < 8 || !is_power_of_two(n_[ud])) {
                throw std::invalid_argument("grid axis " + std::to_string(d) +
                                            ": sample count must be a power of two >= 8");
            }
            if (!(length_[ud] > 0.0) || !std::isfinite(length_[ud])) {
                throw std::invalid_argument("grid axis " + std::to_string(d) +
                                            ": box length must be positive");
            }
        } else {
            n_[ud] = 1;
            length_[ud] = 1.0;
        }
    }
}

Grid Grid::cube(int dim, std::size_t n, double length) {
    return Grid(dim, {n, n, n}, {length, length, length});
}

double Grid::cell_volume() const {
    double dv = 1.0;
    for (int d = 0; d < dim_; ++d) dv *= spacing(d);
    return dv;
}

double Grid::volume() const {
    double v = 1.0;
    for (int d = 0; d < dim_; ++d) v *= length(d);
    return v;
}

long Grid::mode_index(std::size_t j, std::size_t n) {
    const auto sj = static_cast<long>(j);
    const auto sn = static_cast<long>(n);
    return sj < sn / 2 ? sj : sj - sn;
}

double Grid::wavenumber(int axis, std::size_t j) const {
    if (axis >= dim_) return 0.0;
    return 2.0 * std::numbers::pi * static_cast<double>(mode_index(j, n(axis))) / length(axis);
}

std::vector<double> Grid::wavenumbers(int axis) const {
    std::vector<double> k(n(axis));
    for (std::size_t j = 0; j < k.size(); ++j) k[j] = wavenumber(axis, j);
    return k;
}

double Grid::coordinate(int axis, std::size_t j) const {
    return -0.5 * length(axis) + static_cast<double>(j) * spacing(axis);
}

std::array<std::size_t, 3> Grid::unflatten(std::size_t flat) const {
    const std::size_t i2 = flat % n_[2];
    flat /= n_[2];
    const std::size_t i1 = flat % n_[1];
    return {flat / n_[1], i1, i2};
}

std::vector<double> Grid::wavenumber_sq_table() const {
    std::array<std::vector<double>, 3> ksq;
    for (int d = 0; d < 3; ++d) {
        auto& t = ksq[static_cast<std::size_t>(d)];
        t = wavenumbers(d);
        for (auto& k : t) k *= k;
    }
    std::vector<double> table(size());
    std::size_t flat = 0;
    for (std::size_t i = 0; i < n_[0]; ++i)
        for (std::size_t j = 0; j < n_[1]; ++j)
            for (std::size_t l = 0; l < n_[2]; ++l) table[flat++] = ksq[0][i] + ksq[1][j] + ksq[2][l];
    return table;
}

std::vector<double> Grid::radius_sq_table() const {
    std::array<std::vector<double>, 3> xsq;
    for (int d = 0; d < 3; ++d) {
        auto& t = xsq[static_cast<std::size_t>(d)];
        t.assign(n(d), 0.0);
        if (d >= dim_) continue;
        for (std::size_t j = 0; j < t.size(); ++j) {
            const double x = coordinate(d, j);
            t[j] = x * x;
        }
    }
    std::vector<double> table(size());
    std::size_t flat = 0;
    for (std::size_t i = 0; i < n_[0]; ++i)
        for (std::size_t j = 0; j < n_[1]; ++j)
            for (std::size_t l = 0; l < n_[2]; ++l) table[flat++] = xsq[0][i] + xsq[1][j] + xsq[2][l];
    return table;
}

std::string Grid::describe() const {
    std::ostringstream os;
    os << dim_ << "D grid n=[";
    for (int d = 0; d < dim_; ++d) os << (d ? "," : "") << n(d);
    os << "] L=[";
    for (int d = 0; d < dim_; ++d) os << (d ? "," : "") << length(d);
    os << "]";
    return os.str();
}

ComplexField::ComplexField(const Grid& g, std::vector<Complex> v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.size()) {
        throw std::invalid_argument("field length " + std::to_string(values.size()) +
                                    " does not match grid size " + std::to_string(grid.size()));
    }
}

bool ComplexField::all_finite() const {
    for (const auto& z : values) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

void ComplexField::require_finite(const char* where) const {
    if (!all_finite()) throw NonFiniteError(std::string(where) + ": field contains non-finite samples");
}

}  // namespace shnls
