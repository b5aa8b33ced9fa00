// Copyright 2026 The maxstab Authors.
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

#include "maxstab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "maxstab/error.hpp"

namespace maxstab {
namespace {

double sup_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

std::vector<double> marginal_moments(const std::vector<AngularAtom>& atoms,
                                     std::size_t dim, double alpha) {
  std::vector<double> m(dim, 0.0);
  for (const auto& a : atoms) {
    for (std::size_t i = 0; i < dim; ++i) {
      if (a.point[i] > 0.0) m[i] += a.weight * std::pow(a.point[i], alpha);
    }
  }
  return m;
}

// Groups signed atoms by point. Input order does not matter; groups are
// formed in lexicographic order of points.
std::vector<AngularAtom> merge_signed(std::vector<AngularAtom> atoms,
                                      double tol) {
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const AngularAtom& a, const AngularAtom& b) {
                     return a.point < b.point;
                   });
  std::vector<AngularAtom> groups;
  for (auto& a : atoms) {
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const AngularAtom& g) {
                             return sup_distance(g.point, a.point) <= tol;
                           });
    if (it == groups.end()) {
      groups.push_back(std::move(a));
    } else {
      it->weight += a.weight;
    }
  }
  return groups;
}

}  // namespace

AngularMeasure::AngularMeasure(double alpha, NormSpec norm,
                               std::vector<AngularAtom> atoms, bool relaxed)
    : alpha_(alpha), norm_(std::move(norm)), atoms_(std::move(atoms)) {
  require(alpha > 0.0 && std::isfinite(alpha), "alpha must be positive");
  require(!atoms_.empty(), "angular measure needs at least one atom");
  dim_ = atoms_.front().point.size();
  require(dim_ >= 1, "angular measure dimension must be at least 1");
  norm_.check_dim(dim_);
  for (auto& a : atoms_) {
    require(a.point.size() == dim_, "atom dimension mismatch");
    require(a.weight > 0.0 && std::isfinite(a.weight),
            "atom weights must be positive and finite");
    for (double v : a.point) {
      require(v >= 0.0 && std::isfinite(v),
              "atom coordinates must be nonnegative and finite");
    }
    const double r = norm_.evaluate(a.point);
    const double gap = std::abs(r - 1.0);
    require(gap <= kSphereSnapTol,
            "atom does not lie on the unit sphere of " + norm_.describe());
    if (gap > kSphereTol) {
      for (double& v : a.point) v /= r;
    }
    total_mass_ += a.weight;
  }
  moments_ = marginal_moments(atoms_, dim_, alpha_);
  normalized_ = std::all_of(moments_.begin(), moments_.end(), [](double m) {
    return std::abs(m - 1.0) <= kMomentTol;
  });
  require(relaxed || normalized_,
          "angular measure marginal moments differ from 1");
}

AngularMeasure AngularMeasure::comonotone(std::size_t dim, double alpha,
                                          const NormSpec& norm) {
  require(dim >= 1, "dimension must be at least 1");
  std::vector<double> ones(dim, 1.0);
  const double r = norm.evaluate(ones);
  std::vector<double> point(dim, 1.0 / r);
  return AngularMeasure(alpha, norm, {{point, std::pow(r, alpha)}});
}

AngularMeasure AngularMeasure::independent(std::size_t dim, double alpha,
                                           const NormSpec& norm) {
  require(dim >= 1, "dimension must be at least 1");
  std::vector<AngularAtom> atoms;
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<double> e(dim, 0.0);
    e[i] = 1.0;
    const double r = norm.evaluate(e);
    e[i] = 1.0 / r;
    atoms.push_back({e, std::pow(r, alpha)});
  }
  return AngularMeasure(alpha, norm, std::move(atoms));
}

AngularMeasure AngularMeasure::with_alpha(double alpha, bool relaxed) const {
  return AngularMeasure(alpha, norm_, atoms_, relaxed);
}

DeHaanRepresenter::DeHaanRepresenter(double alpha,
                                     std::vector<RepresenterAtom> atoms)
    : alpha_(alpha), atoms_(std::move(atoms)) {
  require(alpha > 0.0 && std::isfinite(alpha), "alpha must be positive");
  require(!atoms_.empty(), "representer needs at least one atom");
  dim_ = atoms_.front().vector.size();
  require(dim_ >= 1, "representer dimension must be at least 1");
  double total = 0.0;
  std::vector<double> moments(dim_, 0.0);
  for (const auto& a : atoms_) {
    require(a.vector.size() == dim_, "representer atom dimension mismatch");
    require(a.prob > 0.0, "representer probabilities must be positive");
    bool positive = false;
    for (std::size_t i = 0; i < dim_; ++i) {
      const double v = a.vector[i];
      require(v >= 0.0 && std::isfinite(v),
              "representer coordinates must be nonnegative and finite");
      positive = positive || v > 0.0;
      if (v > 0.0) moments[i] += a.prob * std::pow(v, alpha_);
    }
    require(positive, "representer atom must have a positive coordinate");
    total += a.prob;
  }
  require(std::abs(total - 1.0) <= kProbabilityTol,
          "representer probabilities do not sum to 1");
  for (double m : moments) {
    require(std::abs(m - 1.0) <= kMomentTol,
            "representer alpha-moments differ from 1");
  }
}

DeHaanRepresenter DeHaanRepresenter::standardized(
    double alpha, std::vector<RepresenterAtom> atoms) {
  require(!atoms.empty(), "representer needs at least one atom");
  const std::size_t dim = atoms.front().vector.size();
  double total = 0.0;
  for (const auto& a : atoms) {
    require(a.prob > 0.0, "representer probabilities must be positive");
    total += a.prob;
  }
  std::vector<double> moments(dim, 0.0);
  for (auto& a : atoms) {
    require(a.vector.size() == dim, "representer atom dimension mismatch");
    a.prob /= total;
    for (std::size_t i = 0; i < dim; ++i) {
      if (a.vector[i] > 0.0) moments[i] += a.prob * std::pow(a.vector[i], alpha);
    }
  }
  for (std::size_t i = 0; i < dim; ++i) {
    require(moments[i] > 0.0, "coordinate has no positive atom");
    const double scale = std::pow(moments[i], -1.0 / alpha);
    for (auto& a : atoms) a.vector[i] *= scale;
  }
  return DeHaanRepresenter(alpha, std::move(atoms));
}

double DeHaanRepresenter::sup_bound() const {
  double b = 0.0;
  for (const auto& a : atoms_) {
    for (double v : a.vector) b = std::max(b, v);
  }
  return b;
}

DeHaanRepresenter canonical_representer(const AngularMeasure& h) {
  require(h.normalized(),
          "canonical representer needs unit marginal moments");
  const double b = h.total_mass();
  const double radius = std::pow(b, 1.0 / h.alpha());
  std::vector<RepresenterAtom> atoms;
  atoms.reserve(h.atoms().size());
  double total = 0.0;
  for (const auto& a : h.atoms()) {
    RepresenterAtom z;
    z.vector = a.point;
    for (double& v : z.vector) v *= radius;
    z.prob = a.weight / b;
    total += z.prob;
    atoms.push_back(std::move(z));
  }
  // Keep the probability vector exactly summing to one.
  for (auto& z : atoms) z.prob /= total;
  return DeHaanRepresenter(h.alpha(), std::move(atoms));
}

AngularMeasure angular_from_representer(const DeHaanRepresenter& z,
                                        const NormSpec& norm) {
  norm.check_dim(z.dim());
  std::vector<AngularAtom> atoms;
  atoms.reserve(z.atoms().size());
  for (const auto& a : z.atoms()) {
    const double r = norm.evaluate(a.vector);
    require(r > 0.0, "norm vanishes on a representer atom");
    AngularAtom s;
    s.point = a.vector;
    for (double& v : s.point) v /= r;
    s.weight = a.prob * std::pow(r, z.alpha());
    atoms.push_back(std::move(s));
  }
  return AngularMeasure(z.alpha(), norm, merge_atoms(std::move(atoms)));
}

AngularMeasure reproject(const AngularMeasure& h, const NormSpec& new_norm) {
  new_norm.check_dim(h.dim());
  std::vector<AngularAtom> atoms;
  atoms.reserve(h.atoms().size());
  for (const auto& a : h.atoms()) {
    const double r = new_norm.evaluate(a.point);
    require(r > 0.0, "target norm vanishes on an atom");
    AngularAtom s;
    s.point = a.point;
    for (double& v : s.point) v /= r;
    s.weight = a.weight * std::pow(r, h.alpha());
    atoms.push_back(std::move(s));
  }
  return AngularMeasure(h.alpha(), new_norm, merge_atoms(std::move(atoms)),
                        !h.normalized());
}

double m_alpha_closed_form(double p, double alpha, std::size_t dim) {
  require(p > 0.0 && alpha > 0.0, "p and alpha must be positive");
  require(dim >= 1, "dimension must be at least 1");
  const double exponent = std::isinf(p) ? 1.0 : std::max(0.0, 1.0 - alpha / p);
  return std::pow(static_cast<double>(dim), exponent);
}

double sup_inf_norm_on_sphere(const NormSpec& norm, std::size_t dim) {
  norm.check_dim(dim);
  // tau(s) >= w_i^(1/p) s_i (w_i s_i for p = inf), with equality on axes.
  double c = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<double> e(dim, 0.0);
    e[i] = 1.0;
    c = std::max(c, 1.0 / norm.evaluate(e));
  }
  return c;
}

namespace {

struct FaceAscent {
  double value = 0.0;
  std::vector<double> point;
  bool converged = false;
};

// log of sum_{i in S} u_i^alpha / tau(u)^alpha with u_i = exp(theta_i).
double log_ratio(const std::vector<double>& theta, const std::vector<std::size_t>& face,
                 const NormSpec& norm, double alpha) {
  double top = -kInf;
  double bottom = -kInf;
  for (std::size_t k = 0; k < face.size(); ++k) {
    top = std::max(top, alpha * theta[k]);
    bottom = std::max(bottom, norm.p() * theta[k] + std::log(norm.weight(face[k])));
  }
  double st = 0.0;
  double sb = 0.0;
  for (std::size_t k = 0; k < face.size(); ++k) {
    st += std::exp(alpha * theta[k] - top);
    sb += std::exp(norm.p() * theta[k] + std::log(norm.weight(face[k])) - bottom);
  }
  return top + std::log(st) - (alpha / norm.p()) * (bottom + std::log(sb));
}

FaceAscent ascend_finite_p(const std::vector<std::size_t>& face,
                           const NormSpec& norm, double alpha, std::size_t dim) {
  const std::size_t n = face.size();
  std::vector<double> theta(n, 0.0);
  std::vector<double> grad(n);
  double f = log_ratio(theta, face, norm, alpha);
  bool converged = n == 1;
  double step = 1.0;
  for (int iter = 0; iter < 20000 && !converged; ++iter) {
    // grad = alpha * (softmax(alpha theta) - softmax(p theta + log w))
    double top = -kInf;
    double bottom = -kInf;
    for (std::size_t k = 0; k < n; ++k) {
      top = std::max(top, alpha * theta[k]);
      bottom = std::max(bottom, norm.p() * theta[k] + std::log(norm.weight(face[k])));
    }
    double st = 0.0;
    double sb = 0.0;
    std::vector<double> a(n), b(n);
    for (std::size_t k = 0; k < n; ++k) {
      a[k] = std::exp(alpha * theta[k] - top);
      b[k] = std::exp(norm.p() * theta[k] + std::log(norm.weight(face[k])) - bottom);
      st += a[k];
      sb += b[k];
    }
    double gnorm = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      grad[k] = alpha * (a[k] / st - b[k] / sb);
      gnorm = std::max(gnorm, std::abs(grad[k]));
    }
    if (gnorm < 1e-11) {
      converged = true;
      break;
    }
    double gg = 0.0;
    for (double g : grad) gg += g * g;
    step = std::min(step * 4.0, 1e6);
    bool moved = false;
    while (step > 1e-16) {
      std::vector<double> trial(theta);
      for (std::size_t k = 0; k < n; ++k) trial[k] += step * grad[k];
      const double ft = log_ratio(trial, face, norm, alpha);
      if (ft >= f + 1e-4 * step * gg) {
        theta = std::move(trial);
        f = ft;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  FaceAscent out;
  out.value = std::exp(f);
  out.converged = converged;
  out.point.assign(dim, 0.0);
  for (std::size_t k = 0; k < n; ++k) out.point[face[k]] = std::exp(theta[k]);
  const double r = norm.evaluate(out.point);
  for (double& v : out.point) v /= r;
  return out;
}

// Weighted l_inf sphere: the objective increases in every coordinate inside
// the box u_i <= 1/w_i, so projected ascent saturates the box.
FaceAscent ascend_inf_p(const std::vector<std::size_t>& face,
                        const NormSpec& norm, double alpha, std::size_t dim) {
  std::vector<double> u(dim, 0.0);
  double wmax = 0.0;
  for (auto i : face) wmax = std::max(wmax, norm.weight(i));
  for (auto i : face) u[i] = 1.0 / wmax;
  bool converged = false;
  for (int iter = 0; iter < 10000; ++iter) {
    bool changed = false;
    for (auto i : face) {
      const double cap = 1.0 / norm.weight(i);
      const double g = alpha * std::pow(u[i], alpha - 1.0);
      const double next = std::min(cap, u[i] + 0.5 * g);
      if (next != u[i]) {
        u[i] = next;
        changed = true;
      }
    }
    if (!changed) {
      converged = true;
      break;
    }
  }
  FaceAscent out;
  out.point = u;
  out.value = power_sum(u, alpha) / std::pow(norm.evaluate(u), alpha);
  out.converged = converged;
  return out;
}

}  // namespace

MAlphaResult m_alpha_numeric(const NormSpec& norm, double alpha,
                             std::size_t dim) {
  require(alpha > 0.0, "alpha must be positive");
  require(dim >= 1, "dimension must be at least 1");
  norm.check_dim(dim);
  // Faces are enumerated by bitmask; beyond 12 coordinates only the
  // singleton faces and the full face are tried.
  std::vector<std::vector<std::size_t>> faces;
  if (dim <= 12) {
    for (unsigned mask = 1; mask < (1u << dim); ++mask) {
      std::vector<std::size_t> face;
      for (std::size_t i = 0; i < dim; ++i) {
        if (mask & (1u << i)) face.push_back(i);
      }
      faces.push_back(std::move(face));
    }
  } else {
    for (std::size_t i = 0; i < dim; ++i) faces.push_back({i});
    std::vector<std::size_t> all(dim);
    std::iota(all.begin(), all.end(), std::size_t{0});
    faces.push_back(std::move(all));
  }
  MAlphaResult best;
  best.value = -1.0;
  std::vector<FaceAscent> results;
  results.reserve(faces.size());
  for (const auto& face : faces) {
    results.push_back(std::isinf(norm.p()) ? ascend_inf_p(face, norm, alpha, dim)
                                           : ascend_finite_p(face, norm, alpha, dim));
    if (results.back().value > best.value) {
      best.value = results.back().value;
      best.argmax = results.back().point;
    }
  }
  for (const auto& r : results) {
    if (r.converged && r.value >= best.value * (1.0 - 1e-12)) best.converged = true;
  }
  return best;
}

MAlphaResult m_alpha(const NormSpec& norm, double alpha, std::size_t dim) {
  if (norm.is_weighted()) return m_alpha_numeric(norm, alpha, dim);
  MAlphaResult r;
  r.value = m_alpha_closed_form(norm.p(), alpha, dim);
  r.converged = true;
  return r;
}

SphereConstants sphere_constants(const AngularMeasure& h) {
  SphereConstants c;
  const auto m = m_alpha(h.norm(), h.alpha(), h.dim());
  c.m_alpha = m.value;
  c.m_alpha_converged = m.converged;
  c.nu0 = h.total_mass();
  c.b = h.total_mass();
  c.c_inf = std::max(1.0, sup_inf_norm_on_sphere(h.norm(), h.dim()));
  if (!h.norm().is_weighted()) {
    const double d = static_cast<double>(h.dim());
    const double ratio = std::isinf(h.norm().p()) ? 0.0 : h.alpha() / h.norm().p();
    const double lo = std::pow(d, std::min(1.0, ratio));
    const double hi = std::pow(d, std::max(1.0, ratio));
    const double slack = 1e-9 * hi;
    c.nu0_in_expected_range = c.nu0 >= lo - slack && c.nu0 <= hi + slack;
  }
  return c;
}

double tv_distance(const AngularMeasure& h1, const AngularMeasure& h2) {
  require(h1.dim() == h2.dim(), "tv_distance: dimension mismatch");
  require(h1.alpha() == h2.alpha(), "tv_distance: alpha mismatch");
  require(h1.norm() == h2.norm(),
          "tv_distance: measures live on different spheres; reproject first");
  std::vector<AngularAtom> signed_atoms = h1.atoms();
  for (auto a : h2.atoms()) {
    a.weight = -a.weight;
    signed_atoms.push_back(std::move(a));
  }
  double positive = 0.0;
  double negative = 0.0;
  for (const auto& g : merge_signed(std::move(signed_atoms), kAtomMergeTol)) {
    if (g.weight > 0.0) {
      positive += g.weight;
    } else {
      negative -= g.weight;
    }
  }
  return std::max(positive, negative);
}

std::vector<AngularAtom> merge_atoms(std::vector<AngularAtom> atoms,
                                     double tol) {
  return merge_signed(std::move(atoms), tol);
}

}  // namespace maxstab
