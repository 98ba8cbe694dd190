#include "gaborflow/params.hpp"

#include <nlohmann/json.hpp>

#include "gaborflow/errors.hpp"

namespace gaborflow {

GaborParams GaborParams::create(int N, int K, int M, int Q, double a) {
  if (N <= 0 || K <= 0 || M <= 0 || Q <= 0)
    throw ValidationError("gabor-params: N, K, M, Q must be positive");
  if (N % K != 0) throw ValidationError("gabor-params: K must divide N (L = N/K)");
  GaborParams p;
  p.N = N;
  p.K = K;
  p.M = M;
  p.Q = Q;
  p.a = a;
  p.L = N / K;
  if (M % p.L != 0) throw ValidationError("gabor-params: L must divide M (P = M/L)");
  p.P = M / p.L;
  if (Q % (2 * p.P) != 0)
    throw ValidationError("gabor-params: Q/(2P) must be an integer (group law)");
  if (K % p.P != 0)
    throw ValidationError("gabor-params: K/P must be an integer (normal subgroup)");
  if (!(a > 0.0)) throw ValidationError("gabor-params: window scale a must be positive");
  return p;
}

GaborParams GaborParams::paper128(double a) { return create(128, 128, 128, 256, a); }

std::vector<std::string> param_warnings(const GaborParams& p) {
  std::vector<std::string> w;
  if (p.L % 2 != 0) w.push_back("gabor-params: L is odd (quotient construction asks for even L)");
  if (p.N % 2 != 0) w.push_back("gabor-params: N is odd (quotient construction asks for even N)");
  return w;
}

std::string GaborParams::to_json() const {
  nlohmann::json j;
  j["N"] = N;
  j["K"] = K;
  j["M"] = M;
  j["L"] = L;
  j["Q"] = Q;
  j["a"] = a;
  return j.dump();
}

GaborParams GaborParams::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("gabor-params: bad JSON: ") + e.what());
  }
  for (const char* key : {"N", "K", "M", "L", "Q", "a"})
    if (!j.contains(key))
      throw ValidationError(std::string("gabor-params: missing key \"") + key + "\"");
  GaborParams p = create(j["N"].get<int>(), j["K"].get<int>(), j["M"].get<int>(),
                         j["Q"].get<int>(), j["a"].get<double>());
  if (p.L != j["L"].get<int>())
    throw ValidationError("gabor-params: L inconsistent with N/K");
  return p;
}

}  // namespace gaborflow
