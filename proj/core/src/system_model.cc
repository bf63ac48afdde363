#include "fdnoma/system_model.hpp"

#include <cmath>
#include <sstream>
#include <string_view>

#include "fdnoma/error.hpp"

namespace fdnoma {
namespace {

void require_positive(double value, std::string_view field) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    std::ostringstream os;
    os << field << " must be positive and finite (got " << value << ")";
    throw ConfigError(os.str());
  }
}

void require_allocation(double value, std::string_view field) {
  if (!(value >= 0.0 && value <= kMaxPowerAllocation)) {
    std::ostringstream os;
    os << field << " must lie in [0, 1/2] (got " << value << ")";
    throw ConfigError(os.str());
  }
}

}  // namespace

FadingProfile variances_from_topology(const Topology& topology, double nu, double var_si) {
  require_positive(topology.d_sr, "d_sr");
  require_positive(topology.d_rd1, "d_rd1");
  require_positive(topology.d_rd2, "d_rd2");
  require_positive(topology.d_se, "d_se");
  require_positive(topology.d_re, "d_re");
  require_positive(nu, "nu");
  require_positive(var_si, "var_si");

  auto variance = [nu](double d) { return std::pow(d, -nu); };
  FadingProfile profile;
  profile.var_sr = variance(topology.d_sr);
  profile.var_rd1 = variance(topology.d_rd1);
  profile.var_rd2 = variance(topology.d_rd2);
  profile.var_se = variance(topology.d_se);
  profile.var_re = variance(topology.d_re);
  profile.var_si = var_si;
  return profile;
}

SystemParams validate_params(const SystemParams& params) {
  require_positive(params.rho, "rho");
  if (!(params.rho_si >= 0.0) || !std::isfinite(params.rho_si)) {
    std::ostringstream os;
    os << "rho_si must be non-negative and finite (got " << params.rho_si << ")";
    throw ConfigError(os.str());
  }
  require_allocation(params.a_s, "a_s");
  require_allocation(params.a_r, "a_r");
  require_positive(params.profile.var_sr, "var_sr");
  require_positive(params.profile.var_rd1, "var_rd1");
  require_positive(params.profile.var_rd2, "var_rd2");
  require_positive(params.profile.var_se, "var_se");
  require_positive(params.profile.var_re, "var_re");
  require_positive(params.profile.var_si, "var_si");
  return params;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

SystemParams make_params(double rho_db, double rho_si_db, double a_s, double a_r,
                         const Topology& topology, double nu, double var_si) {
  SystemParams params;
  params.rho = db_to_linear(rho_db);
  params.rho_si = db_to_linear(rho_si_db);
  params.nu = nu;
  params.a_s = a_s;
  params.a_r = a_r;
  params.profile = variances_from_topology(topology, nu, var_si);
  return validate_params(params);
}

}  // namespace fdnoma
