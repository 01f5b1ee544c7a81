#pragma once

namespace ulnse {

/// Applies the UL_NSE_THREADS cap (if set) to the OpenMP runtime. Returns the
/// thread count in effect.
int configure_threads();
int max_threads();

}  // namespace ulnse
