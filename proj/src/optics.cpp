#include "braggsim/optics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace braggsim {

double BeamSplitter::r_mag() const {
  return std::sqrt(std::max(0.0, 1.0 - t_mag * t_mag));
}

cplx BeamSplitter::t() const { return std::polar(t_mag, phi); }

cplx BeamSplitter::t_prime() const { return std::polar(t_mag, phi_prime); }

cplx BeamSplitter::r() const { return cplx(0.0, 1.0) * std::polar(r_mag(), phi); }

cplx BeamSplitter::r_prime() const { return cplx(0.0, 1.0) * std::polar(r_mag(), phi_prime); }

BeamSplitter make_beam_splitter(double t_mag, double phi, double phi_prime) {
  if (!(t_mag >= 0.0 && t_mag <= 1.0)) {
    throw std::domain_error("make_beam_splitter: t_mag must lie in [0, 1], got " +
                            std::to_string(t_mag));
  }
  if (!std::isfinite(phi) || !std::isfinite(phi_prime)) {
    throw std::domain_error("make_beam_splitter: phases must be finite");
  }
  return BeamSplitter{t_mag, phi, phi_prime};
}

DetectorCouplings detector_couplings(const BeamSplitter& bs) {
  return DetectorCouplings{bs.r(), bs.t_prime(), bs.t(), bs.r_prime()};
}

}  // namespace braggsim
