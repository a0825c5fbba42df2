#include "unimod/accel.hpp"

namespace unimod {

void AccelConfig::validate() const {
  if (!(sbcd_probability > 0.0 && sbcd_probability <= 1.0))
    throw Error(ErrorKind::Config, "sbcd_probability: must lie in (0, 1]");
  if (!(agd_momentum >= 0.0 && agd_momentum < 1.0))
    throw Error(ErrorKind::Config, "agd_momentum: must lie in [0, 1)");
}

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Rng make_stream(std::uint64_t master_seed, std::uint64_t tag) {
  std::uint64_t z = master_seed + tag * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return Rng(z);
}

std::vector<bool> sbcd_select_mask(std::size_t count, double p, Rng& rng) {
  if (!(p > 0.0 && p <= 1.0)) throw Error(ErrorKind::Config, "selection probability must lie in (0, 1]");
  std::vector<bool> mask(count, true);
  if (p >= 1.0 || count == 0) return mask;
  for (;;) {
    bool any = false;
    for (std::size_t i = 0; i < count; ++i) {
      mask[i] = uniform01(rng) < p;
      any = any || mask[i];
    }
    if (any) return mask;
  }
}

LagSet sbcd_select(const LagSet& t, double p, Rng& rng) {
  const auto mask = sbcd_select_mask(t.size(), p, rng);
  std::vector<int> picked;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (mask[i]) picked.push_back(t.lags()[i]);
  return LagSet(std::move(picked), t.n_len());
}

PhaseMatrix agd_extrapolate_raw(const PhaseMatrix& phi_k, const PhaseMatrix& phi_prev, double omega) {
  if (phi_k.rows() != phi_prev.rows() || phi_k.cols() != phi_prev.cols())
    throw Error(ErrorKind::InvalidInput, "extrapolation operands differ in shape");
  if (omega == 0.0) return phi_k;
  return phi_k + omega * angular_difference(phi_k, phi_prev);
}

PhaseMatrix agd_extrapolate(const PhaseMatrix& phi_k, const PhaseMatrix& phi_prev, double omega) {
  return wrap_phase(agd_extrapolate_raw(phi_k, phi_prev, omega));
}

}  // namespace unimod
