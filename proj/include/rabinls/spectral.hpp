// spectral.hpp — FFT-based differentiation, free flow, and quadrature.

#pragma once

#include <complex>
#include <vector>

#include "rabinls/field.hpp"

namespace rabinls {

// Unnormalized forward DFT / normalized inverse (round trip is identity).
std::vector<Complex> forward_fft(const ScalarField& f);
ScalarField inverse_fft(const GridPtr& grid, const std::vector<Complex>& spectrum);

// Exact flow of i df/dt = -(1/2) Laplacian f over time tau (unitary).
ScalarField apply_kinetic(const ScalarField& f, double tau);

// Same flow with the Fourier multiplier precomputed; the time-stepping loop
// reuses one of these across steps of equal size.
class KineticPropagator {
public:
    KineticPropagator(GridPtr grid, double tau);
    ScalarField apply(const ScalarField& f) const;
    double tau() const { return tau_; }

private:
    GridPtr grid_;
    double tau_;
    std::vector<Complex> multiplier_;  // includes the inverse-transform scale
};

// Spectral derivative along each axis (Nyquist multiplier zeroed).
std::vector<ScalarField> spectral_gradient(const ScalarField& f);

// Rectangle-rule integral h^dim * sum: spectrally accurate for smooth
// periodic integrands.
Complex integrate(const ScalarField& f);
double integrate(const GridPtr& grid, const std::vector<double>& density);

}  // namespace rabinls
