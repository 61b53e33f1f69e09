#include "pvtau/error.hpp"

namespace pvtau {

const char* code_name(errc code) {
  switch (code) {
    case errc::pole: return "E_POLE";
    case errc::g_zero: return "E_G_ZERO";
    case errc::resonance: return "E_RESONANCE";
    case errc::non_invertible: return "E_NON_INVERTIBLE";
    case errc::cancellation_failure: return "E_CANCELLATION";
    case errc::series_margin: return "E_SERIES_MARGIN";
    case errc::pole_proximity: return "E_POLE_PROXIMITY";
    case errc::residual_drift: return "E_RESIDUAL_DRIFT";
    case errc::degenerate_monodromy: return "E_DEGENERATE_MONODROMY";
    case errc::genericity: return "E_GENERICITY";
    case errc::config: return "E_CONFIG";
    case errc::non_solvable_order: return "E_NON_SOLVABLE_ORDER";
    case errc::usage: return "E_USAGE";
  }
  return "E_UNKNOWN";
}

}  // namespace pvtau
