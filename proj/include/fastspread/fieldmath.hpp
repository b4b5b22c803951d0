#pragma once

#include <array>
#include <limits>

#include "fastspread/field.hpp"

namespace fastspread {

/// Rectangle-rule integral h * sum(values); spectrally accurate for smooth
/// decaying data on the truncation box.
double integrate(const ScalarField& f);

/// (h * sum |v|^p)^(1/p); p = infinity returns max |v|.
double lp_norm(const ScalarField& f, double p);

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// h * sum v * |x|^2 with x measured from the box center. FullSpace only.
double second_moment(const ScalarField& f);

double min_value(const ScalarField& f);
double max_abs_value(const ScalarField& f);

/// Normalized Gaussian bump: mass * (2 pi sigma^2)^(-d/2) exp(-|x-c|^2/(2 sigma^2)).
ScalarField sample_gaussian(const GridSpec& grid, std::array<double, 3> center,
                            double sigma, double mass);

/// max |value| over the outer 10% shell of `axis` divided by the global
/// max |value| (0 for a zero field). The shell is the set of nodes with
/// |x_axis| >= 0.9 * L_axis.
double boundary_shell_ratio(const ScalarField& f, int axis);

/// Worst shell ratio over all truncated axes (FullSpace: all axes;
/// Channel: axis 0 only).
double boundary_shell_ratio(const ScalarField& f);

}  // namespace fastspread
