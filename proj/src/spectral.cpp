#include "shnls/spectral.hpp"

#include <omp.h>

#include <cmath>
#include <stdexcept>
#include <string>

#include "shnls/kernels.hpp"
#include "spectral_plans.hpp"

namespace shnls::spectral {

namespace detail {

namespace {

// FFTW's planner is not re-entrant; plan creation and destruction go through here.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

GridPlans::GridPlans(const Grid& grid) : ksq_(grid.wavenumber_sq_table()) {
    int dims[3];
    for (int d = 0; d < grid.dim(); ++d) dims[d] = static_cast<int>(grid.n(d));

    std::vector<Complex> scratch(grid.size());
    {
        std::lock_guard lock(planner_mutex());
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        forward_ = fftw_plan_dft(grid.dim(), dims, as_fftw(scratch.data()), as_fftw(scratch.data()),
                                 FFTW_FORWARD, flags);
        backward_ = fftw_plan_dft(grid.dim(), dims, as_fftw(scratch.data()), as_fftw(scratch.data()),
                                  FFTW_BACKWARD, flags);
    }
    if (forward_ == nullptr || backward_ == nullptr) {
        throw std::runtime_error("FFTW failed to plan transforms for " + grid.describe());
    }

    tail_mask_.assign(grid.size(), 0);
    for (std::size_t flat = 0; flat < grid.size(); ++flat) {
        const auto idx = grid.unflatten(flat);
        for (int d = 0; d < grid.dim(); ++d) {
            const auto n = grid.n(d);
            const long m = Grid::mode_index(idx[static_cast<std::size_t>(d)], n);
            if (3 * std::abs(m) > static_cast<long>(n)) {
                tail_mask_[flat] = 1;
                break;
            }
        }
    }
}

GridPlans::~GridPlans() {
    std::lock_guard lock(planner_mutex());
    if (forward_ != nullptr) fftw_destroy_plan(forward_);
    if (backward_ != nullptr) fftw_destroy_plan(backward_);
}

void GridPlans::forward(Complex* data) const { fftw_execute_dft(forward_, as_fftw(data), as_fftw(data)); }

void GridPlans::backward(Complex* data) const { fftw_execute_dft(backward_, as_fftw(data), as_fftw(data)); }

PlanCache::PlanCache() {
    std::lock_guard lock(planner_mutex());
    fftw_init_threads();
    fftw_plan_with_nthreads(omp_get_max_threads());
}

PlanCache& PlanCache::instance() {
    static PlanCache cache;
    return cache;
}

std::shared_ptr<const GridPlans> PlanCache::get(const Grid& grid) {
    const Key key{grid.dim(), grid.n(0), grid.n(1), grid.n(2), grid.length(0), grid.length(1), grid.length(2)};
    std::lock_guard lock(mutex_);
    auto it = plans_.find(key);
    if (it == plans_.end()) it = plans_.emplace(key, std::make_shared<const GridPlans>(grid)).first;
    return it->second;
}

void PlanCache::set_threads(int count) {
    std::lock_guard lock(mutex_);
    {
        std::lock_guard planner(planner_mutex());
        fftw_plan_with_nthreads(count);
    }
    plans_.clear();
}

}  // namespace detail

namespace {

std::shared_ptr<const detail::GridPlans> plans_for(const Grid& grid) {
    return detail::PlanCache::instance().get(grid);
}

void require_alpha(double alpha, bool allow_zero, const char* op) {
    if (!std::isfinite(alpha) || alpha < 0.0 || (!allow_zero && alpha == 0.0)) {
        throw std::invalid_argument(std::string(op) + ": alpha must be " + (allow_zero ? ">= 0" : "> 0") +
                                    ", got " + std::to_string(alpha));
    }
}

ComplexField apply_multiplier(const ComplexField& f, const RealField& mult) {
    ComplexField out = f;
    to_spectral_inplace(out);
    kernels::multiply_real(out.values, mult);
    from_spectral_inplace(out);
    return out;
}

// Round trip of real data through a real multiplier; the imaginary residue must be roundoff.
RealField apply_real_multiplier(const Grid& grid, const RealField& f, const RealField& mult, const char* op) {
    if (f.size() != grid.size()) throw std::invalid_argument(std::string(op) + ": size mismatch");
    ComplexField z = as_complex(grid, f);
    z.require_finite(op);
    to_spectral_inplace(z);
    kernels::multiply_real(z.values, mult);
    from_spectral_inplace(z);
    const double re = kernels::max_abs_real(z.values);
    const double im = kernels::max_abs_imag(z.values);
    if (im > 1e-12 * re + 1e-300) {
        throw std::runtime_error(std::string(op) + ": imaginary residue " + std::to_string(im) +
                                 " exceeds 1e-12 relative");
    }
    RealField out(z.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = z.values[i].real();
    return out;
}

RealField poisson_multiplier(const Grid& grid, double alpha) {
    const auto& ksq = wavenumber_sq(grid);
    RealField m(ksq.size());
    const double a2 = alpha * alpha;
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = ksq[i] > 0.0 ? 1.0 / (a2 * ksq[i]) : 0.0;
    return m;
}

}  // namespace

void to_spectral_inplace(ComplexField& f) {
    f.require_finite("to_spectral");
    plans_for(f.grid)->forward(f.values.data());
    kernels::scale(f.values, 1.0 / static_cast<double>(f.size()));
}

void from_spectral_inplace(ComplexField& coeffs) {
    coeffs.require_finite("from_spectral");
    plans_for(coeffs.grid)->backward(coeffs.values.data());
}

ComplexField to_spectral(const ComplexField& f) {
    ComplexField out = f;
    to_spectral_inplace(out);
    return out;
}

ComplexField from_spectral(const ComplexField& coeffs) {
    ComplexField out = coeffs;
    from_spectral_inplace(out);
    return out;
}

const RealField& wavenumber_sq(const Grid& grid) {
    // The cache keeps the plans (and this table) alive until thread reconfiguration.
    return plans_for(grid)->wavenumber_sq();
}

RealField helmholtz_multiplier(const Grid& grid, double alpha) {
    require_alpha(alpha, true, "helmholtz_multiplier");
    const auto& ksq = wavenumber_sq(grid);
    RealField m(ksq.size());
    const double a2 = alpha * alpha;
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = 1.0 / (1.0 + a2 * ksq[i]);
    return m;
}

RealField elliptic_gain_table(const Grid& grid, double alpha) {
    require_alpha(alpha, false, "elliptic_gain_table");
    const auto& ksq = wavenumber_sq(grid);
    const RealField b = helmholtz_multiplier(grid, alpha);
    RealField g(ksq.size());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = (1.0 + ksq[i]) * b[i];
    return g;
}

ComplexField helmholtz_inverse(const ComplexField& f, double alpha) {
    require_alpha(alpha, true, "helmholtz_inverse");
    f.require_finite("helmholtz_inverse");
    if (alpha == 0.0) return f;
    return apply_multiplier(f, helmholtz_multiplier(f.grid, alpha));
}

RealField helmholtz_inverse_real(const Grid& grid, const RealField& f, double alpha) {
    require_alpha(alpha, true, "helmholtz_inverse");
    if (alpha == 0.0) return f;
    return apply_real_multiplier(grid, f, helmholtz_multiplier(grid, alpha), "helmholtz_inverse");
}

ComplexField poisson_inverse_zero_mean(const ComplexField& f, double alpha) {
    require_alpha(alpha, false, "poisson_inverse_zero_mean");
    f.require_finite("poisson_inverse_zero_mean");
    return apply_multiplier(f, poisson_multiplier(f.grid, alpha));
}

RealField poisson_inverse_zero_mean_real(const Grid& grid, const RealField& f, double alpha) {
    require_alpha(alpha, false, "poisson_inverse_zero_mean");
    return apply_real_multiplier(grid, f, poisson_multiplier(grid, alpha), "poisson_inverse_zero_mean");
}

void free_propagate_inplace(ComplexField& f, double t) {
    if (t == 0.0) {
        f.require_finite("free_propagator");
        return;
    }
    to_spectral_inplace(f);
    kernels::dispersive_phase(f.values, wavenumber_sq(f.grid), t);
    from_spectral_inplace(f);
}

ComplexField free_propagator(const ComplexField& f, double t) {
    ComplexField out = f;
    free_propagate_inplace(out, t);
    return out;
}

double gradient_sq_from_coeffs(const ComplexField& coeffs) {
    return coeffs.grid.volume() * kernels::weighted_sum_abs_sq(coeffs.values, wavenumber_sq(coeffs.grid));
}

double gradient_sq_integral(const ComplexField& f) { return gradient_sq_from_coeffs(to_spectral(f)); }

ComplexField derivative(const ComplexField& f, int axis) {
    ComplexField out = to_spectral(f);
    const auto k = f.grid.wavenumbers(axis);
    const std::size_t n_axis = f.grid.n(axis);
    for (std::size_t flat = 0; flat < out.size(); ++flat) {
        const auto idx = f.grid.unflatten(flat);
        const std::size_t j = idx[static_cast<std::size_t>(axis)];
        // The unpaired Nyquist mode has no real derivative partner; drop it.
        const double kj = (2 * j == n_axis) ? 0.0 : k[j];
        out.values[flat] *= Complex(0.0, kj);
    }
    from_spectral_inplace(out);
    return out;
}

double tail_fraction_from_coeffs(const ComplexField& coeffs) {
    const auto plans = plans_for(coeffs.grid);
    const auto& mask = plans->tail_mask();
    double total = 0.0;
    double tail = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const double e = std::norm(coeffs.values[i]);
        total += e;
        if (mask[i]) tail += e;
    }
    if (!(total > 0.0)) return 0.0;
    return std::min(1.0, tail / total);
}

ComplexField as_complex(const Grid& grid, const RealField& values) {
    if (values.size() != grid.size()) throw std::invalid_argument("as_complex: size mismatch");
    ComplexField out(grid);
    for (std::size_t i = 0; i < values.size(); ++i) out.values[i] = Complex(values[i], 0.0);
    return out;
}

}  // namespace shnls::spectral
