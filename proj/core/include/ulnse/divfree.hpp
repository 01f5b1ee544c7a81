#pragma once

#include <vector>

#include "ulnse/fields.hpp"
#include "ulnse/weights.hpp"

namespace ulnse {

/// Base points of the averaged path integral: 16 sunflower-spiral points in
/// the unit disk.
std::vector<Vec2> stream_base_points();

/// Stream function Theta with u = (d2 Theta, -d1 Theta), built from the
/// two-leg path integral (horizontal from the base point, then vertical)
/// of -u2 dx + u1 dy, averaged over the base points. Legs use the trapezoid
/// rule with Euler-Maclaurin derivative end corrections (derivatives taken
/// spectrally). Normalized to zero box mean. Throws std::domain_error when
/// div u exceeds 1e-8 (scaled by max(1, |u|)).
ScalarField stream_function(const VectorField& u);
/// Same object from the spectral inversion Theta^ = (rot u)^ / |k|^2, plus
/// the linear part m1 x2 - m2 x1 carrying the box mean m of u. Zero box mean.
ScalarField stream_function_spectral(const VectorField& u);

struct Truncation {
    VectorField field;
    /// Grid max of the analytic product-rule divergence
    /// phi div u + u . grad phi + grad Theta . perp grad phi.
    double divergence_residual = 0.0;
    /// Grid max of the spectral divergence of `field`.
    double spectral_divergence = 0.0;
};

/// u^N = u phi_{N,0} + Theta perp_grad phi_{N,0}, assembled pointwise with
/// the analytic cutoff gradient. Theta defaults to the spectral stream
/// function; it is shifted by its mean over the annulus N <= |x| <= 2N.
/// Requires 2N <= L/2.
Truncation truncate_divfree(const VectorField& u, double N, WeightKind cutoff = WeightKind::cutoff_smooth);
Truncation truncate_divfree(const VectorField& u, double N, const ScalarField& theta,
                            WeightKind cutoff = WeightKind::cutoff_smooth);

/// Grid max of the spectral divergence.
double divfree_check(const VectorField& u);

/// (|x0| + 1)^{-1} ||Theta||_{L^2(B^1_{x0})}.
double stream_growth(const ScalarField& theta, Vec2 x0);

}  // namespace ulnse
