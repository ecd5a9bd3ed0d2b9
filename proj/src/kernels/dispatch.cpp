#include "pretsums/kernels.hpp"

#include <cstdlib>
#include <string>

namespace pretsums::kernels {

bool isa_supported(Isa isa) {
    switch (isa) {
        case Isa::scalar:
            return true;
        case Isa::avx2:
#if defined(__x86_64__) || defined(_M_X64)
            __builtin_cpu_init();
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
    }
    return false;
}

const KernelTable& kernel_table(Isa isa) {
#if defined(__x86_64__) || defined(_M_X64)
    if (isa == Isa::avx2 && isa_supported(Isa::avx2)) return detail::avx2_table;
#endif
    (void)isa;
    return detail::scalar_table;
}

Isa active_isa() {
    static const Isa chosen = [] {
        if (const char* env = std::getenv("PRETSUMS_SIMD"); env && std::string(env) == "scalar")
            return Isa::scalar;
        return isa_supported(Isa::avx2) ? Isa::avx2 : Isa::scalar;
    }();
    return chosen;
}

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

}  // namespace pretsums::kernels
