#include <atomic>
#include <cstdlib>
#include <string_view>

#include "deflag/kernels/kernels.hpp"

namespace deflag::kernels {

#ifndef DEFLAG_HAVE_AVX2
const Table* avx2_table() { return nullptr; }
#endif

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

bool cpu_supports_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

namespace {

const Table* initial_choice() {
  if (const char* env = std::getenv("DEFLAG_ISA"); env && std::string_view(env) == "scalar") {
    return &scalar_table();
  }
  if (avx2_table() && cpu_supports_avx2()) return avx2_table();
  return &scalar_table();
}

std::atomic<const Table*>& current() {
  static std::atomic<const Table*> table{initial_choice()};
  return table;
}

}  // namespace

const Table& active() { return *current().load(std::memory_order_acquire); }

bool select(Isa isa) {
  if (isa == Isa::scalar) {
    current().store(&scalar_table(), std::memory_order_release);
    return true;
  }
  if (avx2_table() && cpu_supports_avx2()) {
    current().store(avx2_table(), std::memory_order_release);
    return true;
  }
  return false;
}

}  // namespace deflag::kernels
