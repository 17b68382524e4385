#include "rgg/kernels.hpp"

#include <cstdlib>
#include <stdexcept>

namespace rgg::kern {

const Backend* avx2_backend_impl(); // kernels_avx2.cpp

const Backend* avx2_backend() {
#if defined(__x86_64__) || defined(_M_X64)
    static const Backend* backend = __builtin_cpu_supports("avx2") ? avx2_backend_impl() : nullptr;
    return backend;
#else
    return nullptr;
#endif
}

namespace {

const Backend* pick_default() {
    if (const char* env = std::getenv("RGG_KERNEL")) {
        const std::string name(env);
        if (name == "scalar") return &scalar_backend();
        if (name == "avx2" && avx2_backend()) return avx2_backend();
        // fall through to auto on anything else
    }
    if (const Backend* b = avx2_backend()) return b;
    return &scalar_backend();
}

const Backend*& active_slot() {
    static const Backend* active = pick_default();
    return active;
}

} // namespace

const Backend& active_backend() { return *active_slot(); }

void set_active_backend(const std::string& name) {
    if (name == "scalar") {
        active_slot() = &scalar_backend();
    } else if (name == "avx2") {
        const Backend* b = avx2_backend();
        if (!b) throw std::runtime_error("avx2 kernels unavailable on this host");
        active_slot() = b;
    } else if (name == "auto") {
        active_slot() = avx2_backend() ? avx2_backend() : &scalar_backend();
    } else {
        throw std::runtime_error("unknown kernel backend: " + name);
    }
}

} // namespace rgg::kern
