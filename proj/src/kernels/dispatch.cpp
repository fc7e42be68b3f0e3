#include <atomic>
#include <cstdlib>
#include <string>

#include "backends.hpp"
#include "peakon/error.hpp"

namespace peakon::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(PEAKON_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* initial_table() {
  const char* forced = std::getenv("PEAKON_KERNELS");
  if (forced != nullptr) {
    const std::string name(forced);
    if (name == "scalar") return &detail::kScalarTable;
    if (name == "avx2" && backend_supported(Backend::avx2)) return &table(Backend::avx2);
  }
  return backend_supported(Backend::avx2) ? &table(Backend::avx2) : &detail::kScalarTable;
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> ptr{initial_table()};
  return ptr;
}

}  // namespace

std::string_view backend_name(Backend backend) {
  switch (backend) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
  }
  return "unknown";
}

bool backend_supported(Backend backend) {
  if (backend == Backend::scalar) return true;
  static const bool avx2 = cpu_has_avx2();
  return avx2;
}

const KernelTable& table(Backend backend) {
  if (!backend_supported(backend))
    throw InvalidInput("kernels", std::string("backend not supported: ") +
                                      std::string(backend_name(backend)));
#if defined(PEAKON_HAVE_AVX2)
  if (backend == Backend::avx2) return detail::kAvx2Table;
#endif
  return detail::kScalarTable;
}

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

Backend active_backend() {
  return &active() == &detail::kScalarTable ? Backend::scalar : Backend::avx2;
}

void select_backend(Backend backend) {
  current().store(&table(backend), std::memory_order_release);
}

}  // namespace peakon::kernels
