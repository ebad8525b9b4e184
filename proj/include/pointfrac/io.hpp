#pragma once

#include <string>

#include "pointfrac/operators.hpp"
#include "pointfrac/spectral.hpp"

namespace pointfrac::io {

inline constexpr const char* kVersion = "1.0.0";

// Fixed float formatting for byte-stable emission.
std::string fmt12e(double v);

// RadialFunction round trip: CSV "r,re,im" plus a JSON sidecar
// (path + ".json") holding the grid spec, dimension and tail descriptor.
void write_radial_function(const RadialFunction& f, const std::string& path);
RadialFunction read_radial_function(const std::string& path);

void write_domain_element(const DomainElement& e, const std::string& path,
                          const std::string& regular_csv);

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path);
std::string sweep_csv_text(const std::vector<SweepRow>& rows);

}  // namespace pointfrac::io
