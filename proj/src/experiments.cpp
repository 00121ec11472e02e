#include <cmath>

#include "wfa/linalg.hpp"
#include "wfa/metric.hpp"
#include "wfa/rng.hpp"

namespace wfa {

std::vector<ContinuityRow> parameter_continuity_experiment(const Wfa& a, const std::vector<double>& scales,
                                                           double gamma, double eps, std::uint64_t seed,
                                                           const SearchOptions& opt) {
  const auto n = a.dim();
  Rng rng(seed);
  auto unit = [](Vector v) { return v.norm() > 0.0 ? Vector(v / v.norm()) : v; };
  const Vector da = unit(rng.vector(n));
  const Vector db = unit(rng.vector(n));
  std::vector<Matrix> dt;
  for (std::size_t s = 0; s < a.transitions().size(); ++s) {
    Matrix m = rng.matrix(n, n);
    const double nm = linalg::spectral_norm(m);
    dt.push_back(nm > 0.0 ? Matrix(m / nm) : m);
  }

  SearchOptions o = opt;
  o.eps = eps;
  std::vector<ContinuityRow> rows;
  for (double eta : scales) {
    if (!(eta >= 0.0)) throw ValidationError("perturbation scales must be non-negative");
    std::vector<Matrix> t;
    for (std::size_t s = 0; s < a.transitions().size(); ++s) t.push_back(a.transitions()[s] + eta * dt[s]);
    const Wfa b(a.alphabet(), a.alpha() + eta * da, a.beta() + eta * db, std::move(t));
    const CertifiedInterval d = distance(a, b, gamma, o);
    const TailBoundParams p = compute_joint_tail_params(a, b, gamma, o.tail);
    rows.push_back({eta, d.lower, d.upper, distance_upper_bound(a, b, gamma, p)});
  }
  return rows;
}

}  // namespace wfa
