// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <vector>

#include "dpsubmax/common.hpp"
#include "dpsubmax/set_function.hpp"

namespace dpsubmax {

// f(x) = E_{X~x}[F(X)], evaluated exactly by enumerating all 2^n subsets.
// Makes exactly 2^n oracle calls.
inline double exact_extension(const SetFunction& f,
                              const std::vector<double>& x) {
  const int n = f.n();
  check_input(static_cast<int>(x.size()) == n, "exact_extension: dimension");
  check_capability(n <= kEnumerationCap, "exact_extension: ground set too large");
  const Mask all = full_mask(n);
  double total = 0.0;
  for (Mask s = 0;; ++s) {
    double weight = 1.0;
    for (int e = 0; e < n; ++e) {
      weight *= mask_contains(s, e) ? x[static_cast<std::size_t>(e)]
                                    : 1.0 - x[static_cast<std::size_t>(e)];
    }
    if (weight != 0.0) {
      total += weight * f.evaluate(s);
    } else {
      f.evaluate(s);  // keeps the 2^n call count exact
    }
    if (s == all) break;
  }
  return total;
}

// Draw X ~ x: element e included independently with probability x(e).
inline Mask sample_subset(const std::vector<double>& x, Rng& rng) {
  Mask s = 0;
  for (std::size_t e = 0; e < x.size(); ++e) {
    if (uniform_unit(rng) < x[e]) s = mask_with(s, static_cast<int>(e));
  }
  return s;
}

// Unbiased Monte-Carlo estimate of f(x).
inline double mc_extension(const SetFunction& f, const std::vector<double>& x,
                           int samples, Rng& rng) {
  check_input(static_cast<int>(x.size()) == f.n(), "mc_extension: dimension");
  check_input(samples >= 1, "mc_extension: samples must be >= 1");
  double total = 0.0;
  for (int i = 0; i < samples; ++i) {
    total += f.evaluate(sample_subset(x, rng));
  }
  return total / samples;
}

struct GradientEstimate {
  std::vector<double> components;
  bool exact = true;
  int samples = 0;

  double dot(const std::vector<double>& y) const {
    check_input(y.size() == components.size(), "gradient dot: dimension");
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) s += y[i] * components[i];
    return s;
  }
};

// Default sample count used by the greedy algorithms when none is given.
inline int default_gradient_samples(int n) {
  const double v = 10.0 * n * std::log(std::max(2, n));
  return std::max(1, static_cast<int>(std::ceil(v)));
}

// Exact partial derivative df/dx(e) = sum over R subset of E - e of
// [F(R + e) - F(R)] * P[R | x restricted to E - e]. Enumerates 2^(n-1)
// subsets, independent of x(e) as f is multilinear.
inline double exact_gradient_component(const SetFunction& f,
                                       const std::vector<double>& x, int e) {
  const int n = f.n();
  check_input(static_cast<int>(x.size()) == n, "gradient: dimension");
  check_input(e >= 0 && e < n, "gradient: bad element");
  check_capability(n <= kEnumerationCap, "gradient: ground set too large");
  std::vector<int> others;
  others.reserve(static_cast<std::size_t>(n - 1));
  for (int i = 0; i < n; ++i) {
    if (i != e) others.push_back(i);
  }
  const Mask rest = full_mask(n - 1);
  double total = 0.0;
  for (Mask code = 0;; ++code) {
    double weight = 1.0;
    Mask r = 0;
    for (int b = 0; b < n - 1; ++b) {
      const int elem = others[static_cast<std::size_t>(b)];
      if (mask_contains(code, b)) {
        weight *= x[static_cast<std::size_t>(elem)];
        r = mask_with(r, elem);
      } else {
        weight *= 1.0 - x[static_cast<std::size_t>(elem)];
      }
    }
    if (weight != 0.0) {
      total += weight * (f.evaluate(mask_with(r, e)) - f.evaluate(r));
    }
    if (code == rest) break;
  }
  return total;
}

inline GradientEstimate exact_gradient(const SetFunction& f,
                                       const std::vector<double>& x) {
  GradientEstimate g;
  g.exact = true;
  g.components.resize(x.size());
  for (int e = 0; e < f.n(); ++e) {
    g.components[static_cast<std::size_t>(e)] =
        exact_gradient_component(f, x, e);
  }
  return g;
}

// Monte-Carlo gradient with common random numbers: the same sampled sets R_j
// feed every component, which cuts the variance of inner products without
// introducing bias. Component e averages F(R + e) - F(R - e), the exact
// partial derivative regardless of x(e).
inline GradientEstimate mc_gradient(const SetFunction& f,
                                    const std::vector<double>& x, int samples,
                                    Rng& rng) {
  check_input(static_cast<int>(x.size()) == f.n(), "mc_gradient: dimension");
  check_input(samples >= 1, "mc_gradient: samples must be >= 1");
  GradientEstimate g;
  g.exact = false;
  g.samples = samples;
  g.components.assign(x.size(), 0.0);
  for (int j = 0; j < samples; ++j) {
    const Mask r = sample_subset(x, rng);
    for (int e = 0; e < f.n(); ++e) {
      g.components[static_cast<std::size_t>(e)] +=
          f.evaluate(mask_with(r, e)) - f.evaluate(mask_without(r, e));
    }
  }
  for (auto& c : g.components) c /= samples;
  return g;
}

struct GradientMode {
  bool exact = true;
  int samples = 0;  // 0 = default_gradient_samples(n)

  static GradientMode exact_mode() { return GradientMode{true, 0}; }
  static GradientMode mc(int samples) { return GradientMode{false, samples}; }
};

inline GradientEstimate gradient(const SetFunction& f,
                                 const std::vector<double>& x,
                                 const GradientMode& mode, Rng& rng) {
  if (mode.exact) return exact_gradient(f, x);
  const int samples =
      mode.samples > 0 ? mode.samples : default_gradient_samples(f.n());
  return mc_gradient(f, x, samples, rng);
}

inline double gradient_component(const SetFunction& f,
                                 const std::vector<double>& x, int e,
                                 const GradientMode& mode, Rng& rng) {
  if (mode.exact) return exact_gradient_component(f, x, e);
  const int samples =
      mode.samples > 0 ? mode.samples : default_gradient_samples(f.n());
  double total = 0.0;
  for (int j = 0; j < samples; ++j) {
    const Mask r = sample_subset(x, rng);
    total += f.evaluate(mask_with(r, e)) - f.evaluate(mask_without(r, e));
  }
  return total / samples;
}

// <y, grad f(x)>; in MC mode one set of samples is shared by all components.
inline double grad_inner_product(const SetFunction& f,
                                 const std::vector<double>& x,
                                 const std::vector<double>& y,
                                 const GradientMode& mode, Rng& rng) {
  check_input(x.size() == y.size(), "grad_inner_product: dimension mismatch");
  return gradient(f, x, mode, rng).dot(y);
}

}  // namespace dpsubmax
