#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "lowlying/density.hpp"
#include "lowlying/harness.hpp"

namespace lowlying::cli {

/// Shortest round-trip decimal form.
std::string fmt_real(double v);

/// X,nu,W,P1_over_W,P2_over_W,C_lo,C,C_hi,assembled,predicted,gap
void write_density_csv(std::ostream& out, std::span<const DensityReport> reports);

/// JSON array of report objects; timings included, so not byte-stable across runs.
std::string density_json(std::span<const DensityReport> reports);

/// name,exponent,D,sum,slope,local_slope
void write_growth_csv(std::ostream& out, std::span<const GrowthFit> fits);

}  // namespace lowlying::cli
