#pragma once

#include <functional>

#include "hokdv/equation.hpp"
#include "hokdv/spectral_field.hpp"

namespace hokdv {

// Fourier multiplier: result_hat(xi) = symbol(xi) * uhat(xi).
SpectralField apply_multiplier(const SpectralField& u,
                               const std::function<Complex(double)>& symbol);

// Linear propagator S(t): multiplication by exp(i t xi^n), solving
// d_t u + (-1)^{(n+1)/2} d_x^n u = 0.
SpectralField apply_propagator(const SpectralField& u, int n, double t);

// D^beta = |xi|^beta (fractional) or (i xi)^beta (signed integer variant).
enum class DerivativeKind { absolute, signed_integer };
SpectralField fractional_derivative(const SpectralField& u, double beta,
                                    DerivativeKind kind = DerivativeKind::absolute);

// Multiplier -i sign(xi), 0 at xi = 0.
SpectralField hilbert_transform(const SpectralField& u);

// Interaction-picture maps f = S(-t)u and u = S(t)f.
SpectralField to_profile_field(const SpectralField& u, int n, double t);
SpectralField from_profile_field(const SpectralField& f, int n, double t);

// Fraction of the L2 mass held in the outer 5% of the domain. Decay and
// weighted-norm measurements are only valid while this stays below
// kBoundaryMassTol (wrap-around silently destroys them otherwise).
inline constexpr double kBoundaryMassTol = 1e-8;
double boundary_mass_fraction(const SpectralField& u);

double l2_norm(const SpectralField& u);
double sobolev_norm(const SpectralField& u, double s);
double linf_fourier(const SpectralField& u);
// ||x u||_{L2} with the sawtooth coordinate; throws if the boundary-mass
// monitor fails (unless check_boundary is disabled).
double weighted_x_norm(const SpectralField& u, bool check_boundary = true);

double linf_norm(const SpectralField& u);
double lp_norm(const SpectralField& u, double p);

// Max relative deviation from uhat(-xi) = conj(uhat(xi)) (Nyquist excluded).
double conjugate_symmetry_error(const SpectralField& u);

}  // namespace hokdv
