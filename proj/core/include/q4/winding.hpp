#pragma once

// Argument-principle zero counting for elements P J1 + Q J2 of
// V_n = {P_n J1 + Q_{n-1} J2} on the cut plane C \ (-inf, 1].

#include <complex>
#include <string>
#include <vector>

#include "q4/picard_fuchs.hpp"

namespace q4 {

/// P of degree <= n and Q of degree <= n - 1 in s (ascending coefficients).
struct PolyPair {
  std::vector<double> P;
  std::vector<double> Q;

  /// DomainError if the degree bounds are violated.
  PolyPair(std::vector<double> p, std::vector<double> q, int n);
  int n() const { return n_; }
  std::complex<double> eval_P(std::complex<double> s) const;
  std::complex<double> eval_Q(std::complex<double> s) const;

 private:
  int n_ = 0;
};

enum class ContourPiece { small_circle, big_circle, cut_upper, cut_lower };
std::string_view to_string(ContourPiece p);

struct ContourOptions {
  double epsilon = 1e-3;  // radius of the circle around s = 1
  double radius = 1e3;    // radius of the big circle
  double eps_min = 1e-4;
  double tol = 1e-12;
  int samples_per_segment = 400;
};

/// J continued once along the boundary of D_eps (independent of the element):
/// small half circle below s = 1, lower cut edge, big circle, upper cut edge,
/// small half circle above.
class ContourTrace {
 public:
  ContourTrace(const ModelParams& params, const ContourOptions& options = {});

  struct Sample {
    double tau;
    JState state;
  };
  struct Segment {
    PathSegment path;
    ContourPiece piece;
    std::vector<Sample> samples;
  };

  const std::vector<Segment>& segments() const { return segments_; }
  const ModelParams& params() const { return params_; }
  const ContourOptions& options() const { return options_; }
  /// J at parameter tau of segment q, continued from the nearest stored sample below.
  JState state_at(std::size_t q, std::size_t sample, double tau) const;

 private:
  ModelParams params_;
  ContourOptions options_;
  std::vector<Segment> segments_;
};

struct WindingSegment {
  ContourPiece name;
  double arg_increment = 0.0;
};

struct WindingReport {
  int n = 0;
  double epsilon = 0.0;
  std::vector<WindingSegment> segments;  // one entry per traversed piece
  double total = 0.0;                     // sum of increments / 2 pi
  int winding = 0;
  double integrality_residual = 0.0;
  /// On the cut edges, Im F computed directly vs Q * w / |J1|^2 with the
  /// constant w = Im(J2 conj J1) of the upper edge; max relative mismatch.
  double cut_identity_mismatch = 0.0;
  bool exceeds_bound = false;  // winding > 2n
};

/// Winding number of F = (P J1 + Q J2) / J1 around the boundary of D_eps.
/// Arguments are accumulated with subdivision whenever a step turns by more
/// than pi/4. ConsistencyError if J1 vanishes on the contour or the total is
/// not within 0.2 of an integer.
WindingReport winding_count(const PolyPair& pair, const ContourTrace& trace);
WindingReport winding_count(const PolyPair& pair, const ModelParams& params, double epsilon = 1e-3);

/// Growth exponents of the fundamental matrix along the ray arg s = theta:
/// slopes of log sigma_max(W) and log sigma_min(W) against log |s| between r_lo and r_hi.
struct ExponentFit {
  double theta = 0.0;
  double slope_max = 0.0;
  double slope_min = 0.0;
};
ExponentFit fit_infinity_exponents(const ModelParams& params, double theta, double r_lo = 1e8,
                                   double r_hi = 1e10);

}  // namespace q4
