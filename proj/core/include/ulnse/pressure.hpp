#pragma once

#include <array>

#include "ulnse/estimate.hpp"
#include "ulnse/fields.hpp"

namespace ulnse {

/// Symmetric 2x2 matrix.
struct Sym2 {
    double xx = 0.0;
    double xy = 0.0;
    double yy = 0.0;
};

/// K_ij(x) = (|x|^2 delta_ij - 2 x_i x_j) / (2 pi |x|^4). Throws at x = 0.
Sym2 kernel_eval(Vec2 x);
/// d/dx_l K_ij(x) for l = 0 (x1) and l = 1 (x2).
std::array<Sym2, 2> kernel_gradient(Vec2 x);

/// Radial splitting profile psi_R: 1 for r <= R/4, 0 for r >= R/2.
struct SplitSpec {
    double R = 4.0;
    /// Lattice refinement for the tail quadrature, a power of two (w is
    /// upsampled spectrally).
    int refine = 2;

    double psi(double r) const;
    double psi_derivative(double r) const;
};

/// Kernel of the smooth tail operator: grad of (1 - psi_R) K, per component l.
std::array<Sym2, 2> tail_kernel_gradient(Vec2 z, const SplitSpec& spec);
/// Frobenius-type size sqrt(sum_{l,i,j} |d_l F_ij|^2) of the same.
double tail_kernel_gradient_norm(Vec2 z, const SplitSpec& spec);

/// Periodic pressure p with Delta p = sum_ij d_i d_j w_ij and zero mean.
ScalarField pressure_spectral(const TensorField& w);
/// grad p of the same.
VectorField grad_p_spectral(const TensorField& w);

/// Factor G(rho) in the Fourier transform of psi_R * PV K, which equals
/// (2 xi_i xi_j / |xi|^2 - delta_ij) G(|xi|).
double near_field_profile(double rho, const SplitSpec& spec);

/// Near (singular, compact) and far (smooth tail) parts of the split
/// pressure gradient.
struct SplitGradient {
    VectorField near;
    VectorField far;
    VectorField total() const { return near + far; }
};

/// Whole-space grad P(w) for compactly supported w, as near + far. The near
/// part is applied spectrally, the far part by lattice quadrature of the tail
/// kernel against w on a refined grid, summed as an aperiodic discrete
/// convolution through a zero-padded FFT. Requires the support to keep distance >= R from the box
/// boundary (std::domain_error otherwise).
SplitGradient grad_p_split_parts(const TensorField& w, const SplitSpec& spec);
VectorField grad_p_kernel_split(const TensorField& w, const SplitSpec& spec);

/// Constant p_{x0}: the smooth-tail pressure evaluated at x0 (periodic
/// minimum-image displacements).
double tail_pressure_at(const TensorField& w, Vec2 x0, const SplitSpec& spec);

/// max_ij |Kbar_ij(x, y)| for the subtracted tail kernel
/// (1 - psi_R)K(x - y) - (1 - psi_R)K(x - x0).
double subtracted_tail_kernel(Vec2 x, Vec2 y, Vec2 x0, const SplitSpec& spec);

/// lhs = |(grad P(w), phi_{R,x0} v)|, rhs = [integral of theta_{R,x0}(x)
/// ||w||_{L^p(B^R_x)} dx] * ||phi^{1/2} v||_{L^q}. Params carry p_x0 and the
/// integration-by-parts value of the lhs. Throws std::domain_error when v is
/// not divergence free and std::invalid_argument when 1/p + 1/q != 1.
EstimateReport lemma02_bound(const TensorField& w, const VectorField& v, double R, Vec2 x0, double p, double q);

/// (grad P(w), phi_{R,x0} v) evaluated after integrating by parts:
/// -(p - c, grad phi . v).
double pressure_pairing_by_parts(const TensorField& w, const VectorField& v, double R, Vec2 x0, double c);

}  // namespace ulnse
