#include "dirtymac/lattice.hpp"

#include "dirtymac/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace dirtymac {

ScalarLattice::ScalarLattice(double step) : step_(step) {
    if (!std::isfinite(step) || step <= 0.0)
        throw std::invalid_argument("lattice step must be finite and positive");
}

double ScalarLattice::entropy_bits() const {
    return std::log2(step_);
}

ScalarLattice lattice_for_power(double power) {
    if (!std::isfinite(power) || power <= 0.0)
        throw std::invalid_argument("lattice power must be finite and positive");
    return ScalarLattice(std::sqrt(12.0 * power));
}

double quantize(const ScalarLattice& lattice, double x) {
    if (!std::isfinite(x))
        throw std::invalid_argument("quantize: non-finite input");
    double q = std::ceil(x / lattice.step() - 0.5);
    return lattice.step() * q;
}

double mod_lattice(const ScalarLattice& lattice, double x) {
    if (!std::isfinite(x))
        throw std::invalid_argument("mod_lattice: non-finite input");
    double out;
    kernels::mod_fold(&x, &out, 1, lattice.step());
    return out;
}

void mod_lattice(const ScalarLattice& lattice, const double* x, double* out, std::size_t n) {
    kernels::mod_fold(x, out, n, lattice.step());
}

double normalized_second_moment(const ScalarLattice&) {
    return kScalarLatticeNsm;
}

double shaping_penalty_bits(double nsm) {
    return 0.5 * std::log2(2.0 * std::numbers::pi * std::numbers::e * nsm);
}

double shaping_penalty_bits(const ScalarLattice&) {
    return shaping_penalty_bits(kScalarLatticeNsm);
}

double shaping_penalty_bits() {
    return shaping_penalty_bits(kScalarLatticeNsm);
}

bool is_scaled_copy(const ScalarLattice& coarse, const ScalarLattice& fine,
                    double factor, double rel_tol) {
    if (!(factor > 0.0))
        throw std::invalid_argument("is_scaled_copy: factor must be positive");
    double scaled = coarse.step() * factor;
    return std::fabs(scaled - fine.step()) <= rel_tol * fine.step();
}

} // namespace dirtymac
