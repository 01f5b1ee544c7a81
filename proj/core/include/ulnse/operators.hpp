#pragma once

#include "ulnse/fields.hpp"
#include "ulnse/spectral.hpp"

namespace ulnse {

/// Spectral differential operators. First derivatives use the symbol i k with
/// the Nyquist mode dropped; the Laplacian keeps it.
ScalarField partial_x(const ScalarField& f);
ScalarField partial_y(const ScalarField& f);
VectorField gradient(const ScalarField& f);
/// (d2 f, -d1 f).
VectorField perp_gradient(const ScalarField& f);
ScalarField divergence(const VectorField& u);
/// rot u = d1 u2 - d2 u1.
ScalarField curl(const VectorField& u);
ScalarField laplacian(const ScalarField& f);

/// Tolerance used when a zero box mean is required.
double mean_tolerance(const ScalarField& f);

/// Solves Delta g = f with zero-mean g; throws std::domain_error when f has a
/// nonzero mean (no periodic solution).
ScalarField inverse_laplacian(const ScalarField& f);

/// Velocity with rot u = omega, div u = 0 and zero box mean:
/// u = perp grad Theta with Theta = -Delta^{-1} omega.
VectorField biot_savart(const ScalarField& omega);
/// Same, from the coefficients directly (the k = 0 coefficient is ignored).
VectorField biot_savart(const Spectrum& omega_hat);

/// True when the mode survives 2/3-rule truncation, i.e. max(|m1|,|m2|) <= n/3.
bool retained_by_dealias(const Wave& w, int n);
Spectrum& dealias(Spectrum& s);
ScalarField dealias(const ScalarField& f);
/// Pointwise product of the truncated inputs, truncated again.
ScalarField dealiased_product(const ScalarField& a, const ScalarField& b);

}  // namespace ulnse
