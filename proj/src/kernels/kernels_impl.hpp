#pragma once

#include "dirtymac/kernels.hpp"

namespace dirtymac::kernels::detail {

struct KernelTable {
    void (*mod_fold)(const double*, double*, std::size_t, double);
    void (*axpy)(double, const double*, double*, std::size_t);
    void (*scale)(double, const double*, double*, std::size_t);
    MomentSums (*moments)(const double*, std::size_t);
    double (*dot)(const double*, const double*, std::size_t);
    double (*max_abs_diff)(const double*, const double*, std::size_t);
};

const KernelTable& scalar_table();

// Return nullptr when the variant is not compiled in or the CPU lacks it.
const KernelTable* avx2_table();
const KernelTable* neon_table();

} // namespace dirtymac::kernels::detail
