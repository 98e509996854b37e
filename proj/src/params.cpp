#include "bosegas/params.hpp"

#include <cmath>

namespace bosegas {

double scaled_scattering_length(double a_v, const TrapParams& params) {
    params.validate();
    if (a_v < 0.0) throw std::invalid_argument("scaled_scattering_length: a_v must be >= 0");
    return a_v / (std::sqrt(params.omega) * static_cast<double>(params.n_particles));
}

ScatteringData make_scattering_data(double a_v, const TrapParams& params) {
    ScatteringData d;
    d.a_v = a_v;
    d.a_n = scaled_scattering_length(a_v, params);
    d.gp_coupling = static_cast<double>(params.n_particles) * std::sqrt(params.omega) * d.a_n;
    return d;
}

RegimeReport regime_report(const TrapParams& params) {
    params.validate();
    const double n = static_cast<double>(params.n_particles);
    const double bw = params.beta * params.omega;
    RegimeReport r;
    r.ell_osc = 1.0 / std::sqrt(params.omega);
    r.ell_th = std::sqrt(params.beta);
    r.r_th = 1.0 / (params.omega * std::sqrt(params.beta));
    r.d_th = std::pow(n, -1.0 / 3.0) * r.r_th;
    r.thermo_parameter = n * bw * bw * bw;
    const double tc = params.omega * std::cbrt(n / kZeta3);
    r.t_over_tc = params.temperature() / tc;
    r.scale_separation = std::sqrt(bw);
    r.density_ratio = bw * std::sqrt(bw);
    r.bec_expected = r.thermo_parameter > kZeta3;
    return r;
}

}  // namespace bosegas
