#pragma once

#include <utility>
#include <vector>

#include "ulnse/estimate.hpp"
#include "ulnse/fields.hpp"

namespace ulnse {

enum class WeightKind {
    theta,         ///< 1/(1 + |x - x0|^3)
    theta_scaled,  ///< 1/(R^3 + |x - x0|^3)
    exp,           ///< exp(-eps |x - x0|)
    exp_smooth,    ///< exp(-sqrt(1 + eps^2 |x - x0|^2)), smooth at the center
    cutoff,        ///< S(2 - |x - x0|/R) with the cubic smoothstep S
    cutoff_smooth, ///< same support, with the C-infinity step f(t)/(f(t)+f(1-t)), f(t) = exp(-1/t)
};

struct WeightFamily {
    WeightKind kind = WeightKind::theta;
    double R = 1.0;
    Vec2 x0{};
    double eps = 0.0;

    static WeightFamily theta(Vec2 x0 = {}) { return {WeightKind::theta, 1.0, x0, 0.0}; }
    static WeightFamily theta_scaled(double R, Vec2 x0 = {}) { return {WeightKind::theta_scaled, R, x0, 0.0}; }
    static WeightFamily exponential(double eps, Vec2 x0 = {}) { return {WeightKind::exp, 1.0, x0, eps}; }
    static WeightFamily exponential_smooth(double eps, Vec2 x0 = {}) {
        return {WeightKind::exp_smooth, 1.0, x0, eps};
    }
    static WeightFamily cutoff(double R, Vec2 x0 = {}) { return {WeightKind::cutoff, R, x0, 0.0}; }
    static WeightFamily cutoff_smooth(double R, Vec2 x0 = {}) { return {WeightKind::cutoff_smooth, R, x0, 0.0}; }

    /// Throws std::invalid_argument for R <= 0 or negative eps.
    void validate() const;
};

/// Clamped cubic smoothstep 3t^2 - 2t^3 and its derivative.
double smoothstep(double t);
double smoothstep_derivative(double t);
/// C-infinity step: 0 for t <= 0, 1 for t >= 1.
double smooth_step(double t);
double smooth_step_derivative(double t);

/// sup over the cutoff profile of |grad phi| R / phi^{1/2}.
double cutoff_gradient_constant();

/// Pointwise value and gradient with the Euclidean distance |x - x0|.
double eval_weight(const WeightFamily& w, Vec2 x);
Vec2 weight_gradient(const WeightFamily& w, Vec2 x);

/// Grid samples using the minimum-image distance to x0.
ScalarField sample_weight(const WeightFamily& w, const Grid& grid);
VectorField sample_weight_gradient(const WeightFamily& w, const Grid& grid);

/// (sum w |f|^p h^2)^{1/p}, p finite.
double weighted_norm(const ScalarField& f, const WeightFamily& w, double p);
double weighted_norm(const VectorField& u, const WeightFamily& w, double p);

/// Center spacing used for sup/integral scans over x0: max(1, round(R/(4h))).
int default_center_stride(const Grid& grid, double R);

/// sup over the sampled centers of ||f||_{L^p(B^R_{x0})}. stride <= 0 selects
/// the default.
double ul_norm(const ScalarField& f, double p, double R, int stride = 0);
double ul_norm(const VectorField& u, double p, double R, int stride = 0);
double ul_norm(const ScalarField& f, double p, double R, const std::vector<std::pair<int, int>>& centers);

/// sum over centers x_c of weight(x_c) ||f||^s_{L^p(B^R_{x_c})} times the
/// center cell area: the discrete form of the integral over x0 of a weighted
/// family of ball norms.
double weighted_ball_integral(const ScalarField& f, double p, double R, const WeightFamily& weight,
                              double s, int stride = 0);

/// Z_{R,y0}(u) = integral of theta_{R,y0}(x0) ||u||^2_{L^2_{phi_{R,x0}}} over x0.
/// Requires 2R <= L/2 so the cutoff support does not wrap onto itself.
double z_functional(const VectorField& u, double R, Vec2 y0, int stride = 0);

/// Tail of the integral of theta_{R,x0} theta_{R,y0} outside the disk of
/// radius L/2, bounded from the r^-3 decay.
double theta_convolution_tail(double L, Vec2 x0, Vec2 y0);

/// lhs = quadrature of theta_{R,x0} theta_{R,y0} over `quad`,
/// rhs = R^{-1} theta_{R,x0}(y0). Throws std::domain_error when the analytic
/// tail bound exceeds 1% of lhs.
EstimateReport theta_convolution_check(double R, Vec2 x0, Vec2 y0, const Grid& quad);

}  // namespace ulnse
