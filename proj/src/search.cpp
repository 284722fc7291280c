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

#include "nlbox/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "nlbox/errors.hpp"

namespace nlbox {
namespace {

constexpr double kPivotEps = 1e-12;
constexpr double kConsistencyTol = 1e-9;
constexpr double kBoundSlack = 1e-12;
constexpr int kBisections = 60;

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform point of {z >= 0, sum z <= 1} in k dimensions, by sorted spacings.
void corner_simplex(Rng& rng, std::size_t k, std::vector<double>& out) {
  std::vector<double> u(k);
  for (auto& v : u) v = rng.uniform();
  std::sort(u.begin(), u.end());
  out.resize(k);
  double prev = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    out[i] = u[i] - prev;
    prev = u[i];
  }
}

struct RestartOutcome {
  bool feasible_start = false;
  double value = -std::numeric_limits<double>::infinity();
  std::vector<double> point;
  std::size_t evaluations = 0;
  bool converged = false;
};

bool lex_less(const std::vector<double>& a, const std::vector<double>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Shared, immutable view of a domain prepared for searching.
class PreparedDomain {
 public:
  explicit PreparedDomain(const SearchDomain& domain)
      : domain_(domain), param_(domain.all_equalities(), domain.dimension()) {
    const auto& free = param_.free_indices();
    for (std::size_t k = 0; k < free.size(); ++k) {
      const Interval b = domain_.bounds(free[k]);
      range_.push_back(b.hi - b.lo);
      if (free[k] < domain_.simplex_dim()) simplex_free_.push_back(k);
      else angle_free_.push_back(k);
    }
    // Pattern: +-e_k plus +-(e_i - e_j) between free simplex coordinates.
    const std::size_t n = free.size();
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<double> d(n, 0.0);
      d[k] = range_[k];
      directions_.push_back(d);
      d[k] = -range_[k];
      directions_.push_back(d);
    }
    for (std::size_t i = 0; i < simplex_free_.size(); ++i)
      for (std::size_t j = i + 1; j < simplex_free_.size(); ++j) {
        std::vector<double> d(n, 0.0);
        d[simplex_free_[i]] = 1.0;
        d[simplex_free_[j]] = -1.0;
        directions_.push_back(d);
        d[simplex_free_[i]] = -1.0;
        d[simplex_free_[j]] = 1.0;
        directions_.push_back(d);
      }
  }

  std::size_t free_count() const { return param_.free_count(); }
  const std::vector<std::vector<double>>& directions() const { return directions_; }
  const std::vector<double>& range() const { return range_; }
  const AffineParameterization& param() const { return param_; }

  bool within_bounds(std::span<const double> x) const {
    for (std::size_t i = 0; i < x.size(); ++i) {
      const Interval b = domain_.bounds(i);
      if (!(x[i] >= b.lo - kBoundSlack && x[i] <= b.hi + kBoundSlack)) return false;
    }
    return true;
  }

  bool satisfies_inequalities(std::span<const double> x) const {
    for (const auto& c : domain_.inequalities()) {
      const double g = c.g(x);
      if (!(g <= 1.0)) return false;
    }
    return true;
  }

  /// Largest t in [0, t_limit] keeping x + t * (B dz) inside the bounds.
  double max_step(std::span<const double> x, std::span<const double> dz, double t_limit) const {
    const std::vector<double> zero(dz.size(), 0.0);
    const std::vector<double> x0 = param_.expand(zero);
    const std::vector<double> xd = param_.expand(dz);
    double t = t_limit;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double slope = xd[i] - x0[i];
      if (std::abs(slope) < 1e-15) continue;
      const Interval b = domain_.bounds(i);
      const double limit = slope > 0 ? (b.hi - x[i]) / slope : (b.lo - x[i]) / slope;
      t = std::min(t, std::max(0.0, limit));
    }
    return t;
  }

  std::optional<std::vector<double>> sample_start(Rng& rng, std::size_t budget) const {
    const auto& free = param_.free_indices();
    std::vector<double> z(free.size());
    std::vector<double> spacing;
    for (std::size_t attempt = 0; attempt < budget; ++attempt) {
      corner_simplex(rng, simplex_free_.size(), spacing);
      for (std::size_t i = 0; i < simplex_free_.size(); ++i) z[simplex_free_[i]] = spacing[i];
      for (std::size_t k : angle_free_) {
        const Interval b = domain_.bounds(free[k]);
        z[k] = rng.uniform(b.lo, b.hi);
      }
      const std::vector<double> x = param_.expand(z);
      if (within_bounds(x) && satisfies_inequalities(x)) return z;
    }
    return std::nullopt;
  }

 private:
  const SearchDomain& domain_;
  AffineParameterization param_;
  std::vector<double> range_;
  std::vector<std::size_t> simplex_free_;
  std::vector<std::size_t> angle_free_;
  std::vector<std::vector<double>> directions_;
};

RestartOutcome run_restart(const ScalarFunction& objective, const PreparedDomain& prepared, const SearchConfig& config,
                           std::uint64_t seed) {
  RestartOutcome out;
  Rng rng(seed);
  const auto start = prepared.sample_start(rng, config.sample_budget);
  if (!start) return out;
  out.feasible_start = true;

  const auto& param = prepared.param();
  const std::size_t n = prepared.free_count();
  std::vector<double> z = *start;
  std::vector<double> x = param.expand(z);

  auto eval = [&](std::span<const double> point) {
    ++out.evaluations;
    const double v = objective(point);
    return std::isnan(v) ? -std::numeric_limits<double>::infinity() : v;
  };
  double fz = eval(x);

  if (n == 0) {
    out.value = fz;
    out.point = x;
    out.converged = true;
    return out;
  }

  // Tries z + h*d.  A step leaving the bounds is cut back onto them; a step
  // violating an inequality is pulled toward the feasible start point by
  // bisection, which lets the search slide along curved constraint walls.
  const std::vector<double> anchor = z;
  std::vector<double> trial_z(n);
  auto try_direction = [&](std::span<const double> d, double h) {
    for (std::size_t k = 0; k < n; ++k) trial_z[k] = z[k] + h * d[k];
    std::vector<double> trial_x = param.expand(trial_z);
    if (!prepared.within_bounds(trial_x)) {
      const double t = prepared.max_step(x, d, h);
      if (t <= 0.0) return false;
      for (std::size_t k = 0; k < n; ++k) trial_z[k] = z[k] + t * d[k];
      trial_x = param.expand(trial_z);
      if (!prepared.within_bounds(trial_x)) return false;
    }
    if (!prepared.satisfies_inequalities(trial_x)) {
      const std::vector<double> target = trial_z;
      auto pulled = [&](double s) {
        for (std::size_t k = 0; k < n; ++k) trial_z[k] = anchor[k] + s * (target[k] - anchor[k]);
        return param.expand(trial_z);
      };
      double lo = 0.0, hi = 1.0;
      for (int it = 0; it < kBisections; ++it) {
        const double mid = 0.5 * (lo + hi);
        const std::vector<double> p = pulled(mid);
        if (prepared.within_bounds(p) && prepared.satisfies_inequalities(p)) lo = mid;
        else hi = mid;
      }
      trial_x = pulled(lo);
      if (!prepared.within_bounds(trial_x) || !prepared.satisfies_inequalities(trial_x)) return false;
    }
    const double f = eval(trial_x);
    if (f > fz) {
      fz = f;
      z = trial_z;
      x = std::move(trial_x);
      return true;
    }
    return false;
  };

  std::vector<double> random_dir(n);
  double h = 0.1;
  while (h >= config.tol) {
    if (out.evaluations >= config.max_evals) break;
    bool improved = false;
    for (const auto& d : prepared.directions()) {
      if (try_direction(d, h)) improved = true;
      if (out.evaluations >= config.max_evals) break;
    }
    if (!improved) {
      // Random polls before shrinking help along curved constraint walls.
      for (std::size_t r = 0; r < 2 * n && !improved; ++r) {
        double norm = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          random_dir[k] = rng.uniform(-1.0, 1.0);
          norm += random_dir[k] * random_dir[k];
        }
        norm = std::sqrt(norm);
        if (norm == 0.0) continue;
        for (std::size_t k = 0; k < n; ++k) random_dir[k] *= prepared.range()[k] / norm;
        improved = try_direction(random_dir, h);
      }
    }
    if (!improved) h *= 0.5;
  }
  out.converged = h < config.tol;
  out.value = fz;
  out.point = x;
  return out;
}

}  // namespace

std::uint64_t Rng::derive(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ (stream * 0xd1b54a32d192ed03ULL));
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

AffineParameterization::AffineParameterization(std::span<const AffineEquality> equalities, std::size_t dim)
    : dim_(dim) {
  const std::size_t m = equalities.size();
  std::vector<std::vector<double>> a(m, std::vector<double>(dim, 0.0));
  std::vector<double> b(m, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    if (equalities[r].coeffs.size() != dim)
      throw DomainError(fmt::format("equality {} has {} coefficients, expected {}", r, equalities[r].coeffs.size(), dim));
    a[r] = equalities[r].coeffs;
    b[r] = equalities[r].rhs;
  }

  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < dim && rank < m; ++col) {
    std::size_t best = rank;
    for (std::size_t r = rank + 1; r < m; ++r)
      if (std::abs(a[r][col]) > std::abs(a[best][col])) best = r;
    if (std::abs(a[best][col]) < kPivotEps) continue;
    std::swap(a[best], a[rank]);
    std::swap(b[best], b[rank]);
    const double inv = 1.0 / a[rank][col];
    for (double& v : a[rank]) v *= inv;
    b[rank] *= inv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == rank || a[r][col] == 0.0) continue;
      const double f = a[r][col];
      for (std::size_t c = 0; c < dim; ++c) a[r][c] -= f * a[rank][c];
      b[r] -= f * b[rank];
    }
    pivot_cols.push_back(col);
    ++rank;
  }
  for (std::size_t r = rank; r < m; ++r)
    if (std::abs(b[r]) > kConsistencyTol)
      throw DomainError(fmt::format("inconsistent equality system (residual {:.3g})", b[r]));

  std::vector<bool> is_pivot(dim, false);
  for (std::size_t c : pivot_cols) is_pivot[c] = true;
  for (std::size_t c = 0; c < dim; ++c)
    if (!is_pivot[c]) free_.push_back(c);

  offset_.assign(dim, 0.0);
  basis_.assign(dim, std::vector<double>(free_.size(), 0.0));
  for (std::size_t k = 0; k < free_.size(); ++k) basis_[free_[k]][k] = 1.0;
  for (std::size_t r = 0; r < rank; ++r) {
    const std::size_t p = pivot_cols[r];
    offset_[p] = b[r];
    for (std::size_t k = 0; k < free_.size(); ++k) {
      const double v = -a[r][free_[k]];
      basis_[p][k] = std::abs(v) < kPivotEps ? 0.0 : v;
    }
  }
}

bool AffineParameterization::is_determined(std::size_t i) const {
  return std::all_of(basis_.at(i).begin(), basis_.at(i).end(), [](double v) { return v == 0.0; });
}

double AffineParameterization::determined_value(std::size_t i) const {
  if (!is_determined(i)) throw DomainError(fmt::format("variable {} is not determined", i));
  return offset_[i];
}

std::vector<double> AffineParameterization::expand(std::span<const double> free_values) const {
  std::vector<double> x = offset_;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t k = 0; k < free_.size(); ++k) x[i] += basis_[i][k] * free_values[k];
  return x;
}

SearchDomain SearchDomain::simplex(std::size_t dim) {
  if (dim == 0) throw DomainError("simplex dimension must be positive");
  SearchDomain d;
  d.simplex_dim_ = dim;
  return d;
}

SearchDomain SearchDomain::angles(std::vector<Interval> bounds) { return product(0, std::move(bounds)); }

SearchDomain SearchDomain::product(std::size_t simplex_dim, std::vector<Interval> bounds) {
  for (const auto& b : bounds)
    if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || b.lo > b.hi)
      throw DomainError(fmt::format("bad interval [{}, {}]", b.lo, b.hi));
  SearchDomain d;
  d.simplex_dim_ = simplex_dim;
  d.angle_bounds_ = std::move(bounds);
  return d;
}

SearchDomain& SearchDomain::add_equality(AffineEquality eq) {
  if (eq.coeffs.size() != dimension())
    throw DomainError(fmt::format("equality has {} coefficients, domain has {}", eq.coeffs.size(), dimension()));
  equalities_.push_back(std::move(eq));
  return *this;
}

SearchDomain& SearchDomain::add_inequality(InequalityConstraint c) {
  inequalities_.push_back(std::move(c));
  return *this;
}

Interval SearchDomain::bounds(std::size_t i) const {
  if (i < simplex_dim_) return {0.0, 1.0};
  return angle_bounds_.at(i - simplex_dim_);
}

std::vector<AffineEquality> SearchDomain::all_equalities() const {
  std::vector<AffineEquality> eqs = equalities_;
  if (simplex_dim_ > 0) {
    AffineEquality sum{std::vector<double>(dimension(), 0.0), 1.0};
    std::fill(sum.coeffs.begin(), sum.coeffs.begin() + static_cast<std::ptrdiff_t>(simplex_dim_), 1.0);
    eqs.push_back(std::move(sum));
  }
  return eqs;
}

bool SearchDomain::contains(std::span<const double> x, double tol) const {
  if (x.size() != dimension()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Interval b = bounds(i);
    if (!(x[i] >= b.lo - tol && x[i] <= b.hi + tol)) return false;
  }
  for (const auto& eq : all_equalities()) {
    double lhs = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) lhs += eq.coeffs[i] * x[i];
    if (std::abs(lhs - eq.rhs) > std::max(tol, kConsistencyTol)) return false;
  }
  for (const auto& c : inequalities_)
    if (!(c.g(x) <= 1.0 + tol)) return false;
  return true;
}

SearchResult maximize(const ScalarFunction& objective, const SearchDomain& domain, const SearchConfig& config) {
  if (config.restarts == 0) throw DomainError("at least one restart is required");
  const PreparedDomain prepared(domain);

  std::vector<RestartOutcome> outcomes(config.restarts);
  std::vector<std::exception_ptr> errors(config.restarts);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < config.restarts; k = next++) {
      try {
        outcomes[k] = run_restart(objective, prepared, config, Rng::derive(config.seed, k));
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, config.restarts));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  SearchResult result;
  result.value = -std::numeric_limits<double>::infinity();
  bool all_converged = true;
  const RestartOutcome* best = nullptr;
  for (const auto& o : outcomes) {
    result.evaluations += o.evaluations;
    result.restart_values.push_back(o.value);
    if (!o.feasible_start) continue;
    ++result.starts_used;
    all_converged = all_converged && o.converged;
    if (!best || o.value > best->value || (o.value == best->value && lex_less(o.point, best->point))) best = &o;
  }
  if (!best) throw DomainError("no feasible start point found within the sampling budget");

  result.value = best->value;
  result.point = best->point;
  result.converged = all_converged;
  for (const auto& c : domain.inequalities()) result.constraint_slacks.push_back(1.0 - c.g(result.point));
  return result;
}

AffineSimplexSampler::AffineSimplexSampler(std::span<const AffineEquality> equalities, std::size_t dim)
    : dim_(dim), param_([&] {
        SearchDomain d = SearchDomain::simplex(dim);
        for (const auto& e : equalities) d.add_equality(e);
        return AffineParameterization(d.all_equalities(), dim);
      }()) {}

std::optional<std::vector<double>> AffineSimplexSampler::draw(Rng& rng, std::size_t budget,
                                                               std::size_t* draws_used) const {
  std::vector<double> z;
  for (std::size_t attempt = 1; attempt <= budget; ++attempt) {
    corner_simplex(rng, param_.free_count(), z);
    std::vector<double> x = param_.expand(z);
    if (std::all_of(x.begin(), x.end(), [](double v) { return v >= -kBoundSlack && v <= 1.0 + kBoundSlack; })) {
      if (draws_used) *draws_used = attempt;
      return x;
    }
  }
  if (draws_used) *draws_used = budget;
  return std::nullopt;
}

std::vector<double> sample_affine_simplex(std::span<const AffineEquality> equalities, std::size_t dim,
                                          std::uint64_t seed, std::size_t budget) {
  const AffineSimplexSampler sampler(equalities, dim);
  Rng rng(seed);
  auto x = sampler.draw(rng, budget);
  if (!x) throw SamplingFailureError(fmt::format("no nonnegative sample after {} draws", budget));
  return *x;
}

}  // namespace nlbox
