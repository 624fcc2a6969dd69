#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "itespec/ite_nd.hpp"

namespace itespec {

struct ScatterEntry {
  int l;
  double lambda;
  std::complex<double> s;
  std::complex<double> a;
};

/// D(lambda) = H'_nu(lambda) J_nu(gamma lambda) - gamma H_nu(lambda) J'_nu(gamma lambda),
/// H = H^(1). Its real part is -F_nu.
std::complex<double> scattering_denominator(const DimensionConfig& cfg, int l, double lambda);

/// S_l(lambda) = -conj(D)/D, using H^(2) = conj(H^(1)) on the real axis.
std::complex<double> s_matrix_entry(const DimensionConfig& cfg, int l, double lambda);

/// S_l evaluated from the reduced functions lambda^{1-n/2} J_nu, lambda^{1-n/2} H_nu
/// with H^(2) taken from Y_nu directly. Only used to check the two forms agree.
std::complex<double> s_matrix_entry_reduced(const DimensionConfig& cfg, int l, double lambda);

/// A_l = S_l - 1 = 2 F_nu / D.
std::complex<double> amplitude_entry(const DimensionConfig& cfg, int l, double lambda);

ScatterEntry scatter_entry(const DimensionConfig& cfg, int l, double lambda);

struct CoincidenceMismatch {
  int l;
  double lambda;
  enum class Reason { MissingAmplitudeZero, MissingIte, AmplitudeNotSmall } reason;
};

const char* to_string(CoincidenceMismatch::Reason reason);

struct CoincidenceReport {
  double radius = 0.0;
  std::vector<RealIte> ites;              // from the ITE enumeration
  std::vector<RealIte> amplitude_zeros;   // from the scan of Re D
  std::vector<CoincidenceMismatch> mismatches;
  double max_amplitude_at_ite = 0.0;
  double max_unitarity_defect = 0.0;      // max ||S| - 1| over scanned points

  bool ok() const noexcept { return mismatches.empty(); }
};

struct CoincidenceOptions {
  double scan_step = 4e-3;
  double match_tol = 1e-9;       // relative, |a - b| <= match_tol (1 + a)
  double triple_match_tol = 1e-5;
  double amplitude_tol = 1e-8;
  int unitarity_stride = 64;     // check |S| every this many scan points
  NdOptions nd;
};

/// Compares the ITEs of the ball with the real zeros of every A_l on (0, r],
/// the latter located by an independent sign-change scan of Re D.
CoincidenceReport verify_ite_te_coincidence(const DimensionConfig& cfg, double r,
                                            const CoincidenceOptions& opts = {});

}  // namespace itespec
