#pragma once

#include "fastspread/field.hpp"

namespace fastspread::fft {

/// Forward DFT of a real field (unnormalized: F_m = sum_j f_j exp(-i k_m x_j)
/// up to the usual index-space phase). Requires power-of-two axis sizes.
SpectralField forward(const ScalarField& f);

/// Inverse DFT, normalized so that inverse(forward(f)) == f.
ScalarField inverse(const SpectralField& F);

/// Zero all modes with |mode_number| > n/3 on any axis (2/3-rule truncation
/// for quadratic products).
void dealias(SpectralField& F);

/// h^d * sum f^2 computed from the spectrum (Parseval form).
double mode_energy(const SpectralField& F);

/// Share of mode energy carried by the top-1/3 wavenumber shell,
/// max_a |m_a|/band_a >= 2/3. The band is the full resolved spectrum
/// (band = n/2), or the active band n/3 when the run dealiases quadratic
/// products — under the 2/3 rule a collapsing solution piles energy at the
/// cutoff rather than beyond it. Zero field reports 0.
double tail_fraction(const SpectralField& F, bool dealias_band = false);

}  // namespace fastspread::fft
