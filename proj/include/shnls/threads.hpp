#pragma once

namespace shnls {

/// Caps OpenMP kernels and FFTW plans at `count` threads (count < 1 means hardware count).
/// Cached FFT plans are dropped so the next transform replans with the new count.
void set_thread_count(int count);

/// Applies SHNLS_THREADS if set; returns the effective thread count.
int configure_threads_from_env();

int thread_count();

}  // namespace shnls
