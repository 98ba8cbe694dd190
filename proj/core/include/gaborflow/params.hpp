#pragma once

#include <string>
#include <vector>

namespace gaborflow {

// Integer grid of a discrete Gabor transform.
//
//   N  samples per signal
//   K  spatial shifts, stride L = N/K
//   M  frequency bins, oversampling P = M/L
//   Q  phase resolution (k index runs mod Q)
//   a  window scale
//
// The grid steps in continuous units are dp = 1/K, dq = N/M, ds = 1/Q.
struct GaborParams {
  int N = 0;
  int K = 0;
  int M = 0;
  int L = 0;
  int Q = 0;
  int P = 0;
  double a = 0.0;

  // Validates the divisibility requirements (N = K*L, P = M/L, Q/(2P) and K/P
  // integral, a > 0) and derives L and P. Throws ValidationError on failure.
  static GaborParams create(int N, int K, int M, int Q, double a);

  // N = K = M = 128, L = 1, P = 128, Q = 256.
  static GaborParams paper128(double a = 1.0 / 8.0);

  double dp() const { return 1.0 / K; }
  double dq() const { return double(N) / M; }
  double ds() const { return 1.0 / Q; }
  // Half-twist step Q/(2P) used by the group law.
  int half_twist() const { return Q / (2 * P); }

  bool operator==(const GaborParams&) const = default;

  std::string to_json() const;
  static GaborParams from_json(const std::string& text);
};

// Conditions the quotient construction asks for but the flagship grids do not
// satisfy (odd L or odd N). Creation succeeds; callers may surface these.
std::vector<std::string> param_warnings(const GaborParams& p);

}  // namespace gaborflow
