#pragma once

// FFTW plan cache shared by the spectral operators. Internal to the library.

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "shnls/grid.hpp"

namespace shnls::spectral::detail {

/// In-place forward/backward plans and the |k|^2 table for one grid shape.
class GridPlans {
public:
    explicit GridPlans(const Grid& grid);
    ~GridPlans();
    GridPlans(const GridPlans&) = delete;
    GridPlans& operator=(const GridPlans&) = delete;

    /// Unnormalized in-place transforms; safe to call concurrently on distinct buffers.
    void forward(Complex* data) const;
    void backward(Complex* data) const;

    const RealField& wavenumber_sq() const { return ksq_; }
    /// 1 for modes with |m_d| > n_d/3 on any active axis.
    const std::vector<unsigned char>& tail_mask() const { return tail_mask_; }

private:
    fftw_plan forward_ = nullptr;
    fftw_plan backward_ = nullptr;
    RealField ksq_;
    std::vector<unsigned char> tail_mask_;
};

class PlanCache {
public:
    static PlanCache& instance();

    std::shared_ptr<const GridPlans> get(const Grid& grid);
    void set_threads(int count);

private:
    using Key = std::tuple<int, std::size_t, std::size_t, std::size_t, double, double, double>;
    PlanCache();

    std::mutex mutex_;
    std::map<Key, std::shared_ptr<const GridPlans>> plans_;
};

}  // namespace shnls::spectral::detail
