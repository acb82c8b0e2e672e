#ifndef POLCAL_HOMOGENEITY_HPP
#define POLCAL_HOMOGENEITY_HPP

#include <optional>
#include <string>
#include <vector>

#include "polcal/polarization.hpp"
#include "polcal/rng.hpp"

namespace polcal {

inline constexpr std::uint64_t kDefaultSeed = 20140903;

enum class VerdictKind { ExactProof, SampledPass, Fail };

// Counterexample record; which fields are populated depends on the check
// that failed (lambda-scaling vs slot additivity/homogeneity).
struct Witness {
  std::string check;
  std::optional<Scalar> lambda;
  std::optional<int> slot;
  std::vector<Direction> vectors;
  Scalar lhs;
  Scalar rhs;
};

struct HomogeneityVerdict {
  VerdictKind kind = VerdictKind::Fail;
  std::optional<int> degree;  // nullopt renders as "indeterminate"
  std::vector<Witness> witnesses;
  int samples = 0;
  std::uint64_t seed = 0;
  TolerancePolicy tolerance;
  // Base point was singular and its value imputed as 0, the only value
  // compatible with the scaling law at degree >= 1.
  bool imputed_base_value = false;

  bool pass() const { return kind != VerdictKind::Fail; }
};

struct SampleOptions {
  std::uint64_t seed = kDefaultSeed;
  TolerancePolicy tolerance;
};

// The lambda probes always include negative values; sign-sensitive impostors
// like |x| must be caught.  Zero is probed separately for every sample.
const std::vector<Scalar>& homogeneity_lambdas();

// f(q + lambda v) = lambda^n f(q + v): exact decision for polynomial-backed
// fields, seeded sampling otherwise.
HomogeneityVerdict is_homogeneous(const ScalarField& f, const Point& q, int n, int samples,
                                  const SampleOptions& opts = {});

// Homogeneous AND delta^n f multilinear at q: the operational reading of the
// homogeneous-polynomial characterization.
HomogeneityVerdict is_homogeneous_polynomial(const ScalarField& f, const Point& q, int n, int samples,
                                             const SampleOptions& opts = {});

// Slot-wise additivity and rational-scalar homogeneity of an extended field
// at sampled exact vectors.
HomogeneityVerdict multilinearity_check(const ExtendedField& F, const Point& q, int n, int samples,
                                        const SampleOptions& opts = {});

// Top-down component extraction:
//   y^m(q) = (1/m!) Delta^m (f - sum_{j>m} y^j)(q0; q - q0).
// Polynomial-backed fields yield exact polynomials; expression-backed fields
// yield substituted expression trees.
std::vector<ScalarField> extract_homogeneous_components(const ScalarField& f, const Point& q0, int n);

// lhs = Delta^k f(q+v; lambda v), rhs = Delta^k chi^n(1; lambda) * f(q+v).
std::pair<Scalar, Scalar> euler_scaling_check(const ScalarField& f, const Point& q, int n, int k,
                                              const Direction& v, const Scalar& lambda);

}  // namespace polcal

#endif
