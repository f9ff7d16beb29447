#include "couette/export.hpp"

#include <cstdio>
#include <ostream>

namespace couette {

namespace {

void write_parameter_line(std::ostream& out, const RunParameters& params) {
  out << '#';
  for (const auto& [key, value] : params) out << ' ' << key << '=' << value;
  out << '\n';
}

nlohmann::json parameters_json(const RunParameters& params) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [key, value] : params) j[key] = value;
  return j;
}

}  // namespace

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

void write_profile_csv(std::ostream& out, const Profile& profile, const RunParameters& extra) {
  RunParameters params{{"t", format_double(profile.t)},
                       {"h", format_double(profile.grid.h)},
                       {"Y0", format_double(profile.grid.Y0)},
                       {"convention", to_string(profile.convention)}};
  params.insert(params.end(), extra.begin(), extra.end());
  write_parameter_line(out, params);
  out << "Y,V,Vpp\n";
  for (Index k = 0; k < profile.grid.size(); ++k) {
    out << format_double(profile.grid.node(k)) << ',' << format_double(profile.V[k]) << ','
        << format_double(profile.Vpp[k]) << '\n';
  }
}

void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum,
                        const RunParameters& params) {
  write_parameter_line(out, params);
  out << "re_c,im_c,class\n";
  for (Index i = 0; i < spectrum.eigenvalues.size(); ++i) {
    const Complex c = spectrum.eigenvalues[i];
    out << format_double(c.real()) << ',' << format_double(c.imag()) << ','
        << to_string(spectrum.classes[static_cast<std::size_t>(i)]) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const SweepResult& sweep, const RunParameters& params) {
  write_parameter_line(out, params);
  out << "t,im_c_max\n";
  for (const SweepPoint& point : sweep.points) {
    if (!point.error.empty()) continue;
    out << format_double(point.t) << ',' << format_double(point.im_c_max) << '\n';
  }
}

void write_eigenpair_csv(std::ostream& out, const EigenPair& pair, const RunParameters& params) {
  write_parameter_line(out, params);
  out << "Y,re_psi,im_psi,re_omega,im_omega\n";
  for (Index k = 0; k < pair.psi.size(); ++k) {
    out << format_double(pair.Y[k]) << ',' << format_double(pair.psi[k].real()) << ','
        << format_double(pair.psi[k].imag()) << ',' << format_double(pair.omega[k].real())
        << ',' << format_double(pair.omega[k].imag()) << '\n';
  }
}

nlohmann::json to_json(Complex c) { return {{"re", c.real()}, {"im", c.imag()}}; }

nlohmann::json eigenpair_summary(const EigenPair& pair, const RunParameters& params) {
  return {{"parameters", parameters_json(params)},
          {"c", to_json(pair.c)},
          {"psi0_residual", pair.psi0_residual},
          {"dpsi0", to_json(pair.dpsi0)},
          {"newton_iterations", pair.iterations}};
}

nlohmann::json expansion_to_json(const ExpansionReport& report, const RunParameters& params) {
  nlohmann::json c_os = nlohmann::json::array();
  for (const Complex& c : report.c_os) c_os.push_back(to_json(c));
  return {{"parameters", parameters_json(params)},
          {"nu_hat", report.nu_hat},
          {"c_os", c_os},
          {"c_ray", to_json(report.c_ray)},
          {"fitted_exponent", report.fitted_exponent},
          {"gamma", to_json(report.gamma)},
          {"sublayer_width", report.sublayer_width}};
}

}  // namespace couette
