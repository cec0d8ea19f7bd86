#include "ddpol/polarizability.hpp"

namespace ddpol {

std::string_view to_string(FrequencyRegime r) { return r == FrequencyRegime::below ? "below" : "above"; }

std::string_view to_string(Method m) {
  switch (m) {
    case Method::closed_form: return "closed_form";
    case Method::quadrature: return "quadrature";
    case Method::grid: return "grid";
  }
  return "unknown";
}

}  // namespace ddpol
