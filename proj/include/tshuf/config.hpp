#pragma once

#include <atomic>

namespace tshuf {

// Process-wide knobs. Defaults suit desk-scale computations; the CLI reads
// TSHUF_ARITY_CAP / TSHUF_TRUNC_BOUND from the environment.
struct Settings {
    std::atomic<int> arity_cap{6};
    // Total-degree truncation bound for ordered constant terms; 0 selects the
    // bound derived from the numerator's exponent span.
    std::atomic<int> trunc_bound{0};
};

Settings& settings();

// Applies TSHUF_ARITY_CAP and TSHUF_TRUNC_BOUND when set.
void load_env_overrides();

// Throws ArityCapExceeded when n exceeds the configured cap.
void check_arity_cap(int n, const char* what);

}  // namespace tshuf
