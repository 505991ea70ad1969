#include "fadecap/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace fadecap::kernels {

const Ops& scalar_ops();
const Ops* avx2_ops_or_null();

bool backend_available(Backend b) {
  if (b == Backend::scalar) return true;
#if defined(__x86_64__) || defined(__i386__)
  return avx2_ops_or_null() != nullptr && __builtin_cpu_supports("avx2") &&
         __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Ops& ops(Backend b) {
  if (b == Backend::scalar) return scalar_ops();
  if (!backend_available(Backend::avx2))
    throw std::runtime_error("avx2 kernel backend not available on this host");
  return *avx2_ops_or_null();
}

namespace {

Backend resolve_initial() {
  const char* env = std::getenv("FADECAP_SIMD");
  std::string v = env ? env : "auto";
  if (v == "scalar") return Backend::scalar;
  if (v == "avx2") {
    if (!backend_available(Backend::avx2))
      throw std::runtime_error("FADECAP_SIMD=avx2 requested but unsupported");
    return Backend::avx2;
  }
  return backend_available(Backend::avx2) ? Backend::avx2 : Backend::scalar;
}

Backend& current() {
  static Backend b = resolve_initial();
  return b;
}

}  // namespace

Backend active_backend() { return current(); }

void set_active_backend(Backend b) {
  if (!backend_available(b)) throw std::runtime_error("backend unavailable");
  current() = b;
}

const Ops& active() { return ops(current()); }

}  // namespace fadecap::kernels
