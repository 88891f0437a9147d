#pragma once

#include <cstddef>
#include <numbers>

namespace dirtymac {

// One-dimensional lattice step*Z, applied per dimension. Every scheme in this
// codebase uses only scaled copies of one base lattice, so the product lattice
// step*Z^n preserves all nesting identities exactly.
class ScalarLattice {
public:
    // Throws std::invalid_argument unless step is finite and > 0.
    explicit ScalarLattice(double step);

    double step() const { return step_; }
    double second_moment() const { return step_ * step_ / 12.0; }
    // Differential entropy of the uniform law on the fundamental cell, bits.
    double entropy_bits() const;

private:
    double step_;
};

// Lattice whose fundamental-cell uniform law has the given second moment.
ScalarLattice lattice_for_power(double power);

// Nearest lattice point; ties round toward -infinity, so the fundamental cell
// is the half-open interval (-step/2, step/2]. Throws on non-finite x.
double quantize(const ScalarLattice& lattice, double x);

// x - quantize(x); quantize(mod_lattice(x)) == 0.
double mod_lattice(const ScalarLattice& lattice, double x);

// Batch fold, SIMD-dispatched. No per-element finiteness checks.
void mod_lattice(const ScalarLattice& lattice, const double* x, double* out, std::size_t n);

// Normalized second moment G of any scalar lattice.
inline constexpr double kScalarLatticeNsm = 1.0 / 12.0;
// G in the good-quantizer limit (high dimension).
inline constexpr double kGoodLatticeNsm =
        1.0 / (2.0 * std::numbers::pi * std::numbers::e);

double normalized_second_moment(const ScalarLattice& lattice);

// (1/2) log2(2*pi*e*G) in bits: the rate lost to cubic shaping relative to a
// lattice that is good for quantization. Zero at G = 1/(2*pi*e).
double shaping_penalty_bits(double nsm);
double shaping_penalty_bits(const ScalarLattice& lattice);
double shaping_penalty_bits(); // scalar-lattice value, ~0.2546 bits

// True iff coarse.step * factor == fine.step to rel_tol. When true,
// factor * Q_coarse(x) is a point of `fine` for every x, so that term
// vanishes under mod-`fine`.
bool is_scaled_copy(const ScalarLattice& coarse, const ScalarLattice& fine,
                    double factor, double rel_tol = 1e-12);

} // namespace dirtymac
