// Copyright 2026 The nlbox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Deterministic multistart derivative-free maximization over simplex blocks,
// box-bounded angle blocks, or their product, with affine equalities
// eliminated symbolically and smooth inequalities g(x) <= 1 enforced by
// rejection.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace nlbox {

/// Seedable generator.  The engine is std::mt19937_64, whose output sequence
/// is fixed by the C++ standard; doubles are formed from the top 53 bits so
/// no implementation-defined distribution is involved.  Stream seeds are
/// derived with the SplitMix64 finalizer.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream);

  /// Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// coeffs . x == rhs over the full parameter vector.
struct AffineEquality {
  std::vector<double> coeffs;
  double rhs = 0.0;
};

using ScalarFunction = std::function<double(std::span<const double>)>;

/// g(x) <= 1.
struct InequalityConstraint {
  std::string name;
  ScalarFunction g;
};

/// x = offset + basis * z, where z are the free coordinates.  Built by
/// reduced row echelon elimination of an equality system.
class AffineParameterization {
 public:
  /// Throws DomainError if the system is inconsistent.
  AffineParameterization(std::span<const AffineEquality> equalities, std::size_t dim);

  std::size_t dim() const { return dim_; }
  std::size_t free_count() const { return free_.size(); }
  const std::vector<std::size_t>& free_indices() const { return free_; }

  /// True when variable `i` takes the same value at every solution.
  bool is_determined(std::size_t i) const;
  /// Value of a determined variable.
  double determined_value(std::size_t i) const;

  std::vector<double> expand(std::span<const double> free_values) const;

 private:
  std::size_t dim_;
  std::vector<std::size_t> free_;
  std::vector<double> offset_;
  // basis_[i][k]: coefficient of free variable k in x_i.
  std::vector<std::vector<double>> basis_;
};

class SearchDomain {
 public:
  static SearchDomain simplex(std::size_t dim);
  static SearchDomain angles(std::vector<Interval> bounds);
  /// Simplex block first (indices [0, simplex_dim)), angle block after.
  static SearchDomain product(std::size_t simplex_dim, std::vector<Interval> bounds);

  SearchDomain& add_equality(AffineEquality eq);
  SearchDomain& add_inequality(InequalityConstraint c);

  std::size_t dimension() const { return simplex_dim_ + angle_bounds_.size(); }
  std::size_t simplex_dim() const { return simplex_dim_; }
  const std::vector<Interval>& angle_bounds() const { return angle_bounds_; }
  const std::vector<AffineEquality>& equalities() const { return equalities_; }
  const std::vector<InequalityConstraint>& inequalities() const { return inequalities_; }

  /// Bounds of variable i ([0,1] inside the simplex block).
  Interval bounds(std::size_t i) const;

  /// User equalities plus the simplex normalization row.
  std::vector<AffineEquality> all_equalities() const;

  /// Bounds, equalities and inequalities all hold within tol.
  bool contains(std::span<const double> x, double tol = 1e-9) const;

 private:
  std::size_t simplex_dim_ = 0;
  std::vector<Interval> angle_bounds_;
  std::vector<AffineEquality> equalities_;
  std::vector<InequalityConstraint> inequalities_;
};

struct SearchConfig {
  std::size_t restarts = 64;
  std::uint64_t seed = 0;
  /// Pattern search stops when the relative step drops below tol.
  double tol = 1e-10;
  /// Objective evaluations allowed per restart.
  std::size_t max_evals = 200000;
  /// Rejection budget for drawing a feasible start point.
  std::size_t sample_budget = 100000;
  /// 0 = hardware concurrency.
  unsigned threads = 0;
};

struct SearchResult {
  double value = 0.0;
  std::vector<double> point;
  std::size_t starts_used = 0;
  bool converged = false;
  /// 1 - g(point) for every inequality, in declaration order.
  std::vector<double> constraint_slacks;
  std::size_t evaluations = 0;
  /// Best value of each restart, in restart order.
  std::vector<double> restart_values;
};

/// Multistart pattern search.  Restarts run concurrently with seeds
/// Rng::derive(config.seed, k); the merge takes the maximum value, ties
/// broken by the lexicographically smallest point, so the result does not
/// depend on scheduling.  The objective must be safe to call concurrently.
SearchResult maximize(const ScalarFunction& objective, const SearchDomain& domain, const SearchConfig& config = {});

/// Draws points of {x >= 0, sum x = 1, equalities} by sampling the free
/// coordinates uniformly on the corner simplex and rejecting negative pivots.
class AffineSimplexSampler {
 public:
  AffineSimplexSampler(std::span<const AffineEquality> equalities, std::size_t dim);

  /// nullopt if `budget` draws were all rejected.
  std::optional<std::vector<double>> draw(Rng& rng, std::size_t budget, std::size_t* draws_used = nullptr) const;

  const AffineParameterization& parameterization() const { return param_; }

 private:
  std::size_t dim_;
  AffineParameterization param_;
};

/// One sample from the simplex restricted by `equalities`.  Throws
/// DomainError for an inconsistent system and SamplingFailureError when the
/// rejection budget runs out.
std::vector<double> sample_affine_simplex(std::span<const AffineEquality> equalities, std::size_t dim,
                                          std::uint64_t seed, std::size_t budget = 100000);

}  // namespace nlbox
