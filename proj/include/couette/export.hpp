#pragma once

// File formats shared with the figure renderer. Every CSV starts with one
// "# key=value ..." line recording the run parameters, then a column header.
// Numbers are written with 17 significant digits so files round-trip exactly.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "couette/heat_layer.hpp"
#include "couette/orr_sommerfeld.hpp"
#include "couette/rayleigh_shooting.hpp"
#include "couette/rayleigh_spectral.hpp"

namespace couette {

using RunParameters = std::vector<std::pair<std::string, std::string>>;

std::string format_double(double value);

/// Columns Y,V,Vpp. The parameter line always carries t, h, Y0 and convention.
void write_profile_csv(std::ostream& out, const Profile& profile,
                       const RunParameters& extra = {});

/// Columns re_c,im_c,class.
void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum,
                        const RunParameters& params);

/// Columns t,im_c_max.
void write_sweep_csv(std::ostream& out, const SweepResult& sweep, const RunParameters& params);

/// Columns Y,re_psi,im_psi,re_omega,im_omega.
void write_eigenpair_csv(std::ostream& out, const EigenPair& pair, const RunParameters& params);

nlohmann::json to_json(Complex c);
nlohmann::json eigenpair_summary(const EigenPair& pair, const RunParameters& params);
nlohmann::json expansion_to_json(const ExpansionReport& report, const RunParameters& params);

}  // namespace couette
