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

#ifndef MAXSTAB_SPECTRAL_HPP_
#define MAXSTAB_SPECTRAL_HPP_

#include <cstddef>
#include <vector>

#include "maxstab/norm.hpp"

namespace maxstab {

// Tolerances for discrete spectral objects.
inline constexpr double kSphereTol = 1e-9;
inline constexpr double kSphereSnapTol = 1e-6;
inline constexpr double kAtomMergeTol = 1e-9;
inline constexpr double kMomentTol = 1e-8;
inline constexpr double kProbabilityTol = 1e-12;

struct AngularAtom {
  std::vector<double> point;
  double weight = 0.0;
};

// Finitely supported angular measure H on the positive unit sphere of `norm`.
//
// A normalized measure has unit marginal alpha-moments,
//   sum_j w_j s_{j,i}^alpha = 1 for every coordinate i,
// which is what makes the induced max-stable law have unit alpha-Frechet
// margins. The `relaxed` flag admits measures that violate this (e.g.
// intermediate results); the actual moments are always recorded.
class AngularMeasure {
 public:
  AngularMeasure(double alpha, NormSpec norm, std::vector<AngularAtom> atoms,
                 bool relaxed = false);

  // d * delta at the normalized diagonal.
  static AngularMeasure comonotone(std::size_t dim, double alpha,
                                   const NormSpec& norm);
  // Unit masses at the (normalized) coordinate axes.
  static AngularMeasure independent(std::size_t dim, double alpha,
                                    const NormSpec& norm);

  std::size_t dim() const { return dim_; }
  double alpha() const { return alpha_; }
  const NormSpec& norm() const { return norm_; }
  const std::vector<AngularAtom>& atoms() const { return atoms_; }
  const std::vector<double>& moments() const { return moments_; }
  bool normalized() const { return normalized_; }
  double total_mass() const { return total_mass_; }

  // Same atoms read with a different index. Moments are re-checked.
  AngularMeasure with_alpha(double alpha, bool relaxed = false) const;

 private:
  std::size_t dim_ = 0;
  double alpha_ = 1.0;
  NormSpec norm_ = NormSpec::lp(1.0);
  std::vector<AngularAtom> atoms_;
  std::vector<double> moments_;
  bool normalized_ = false;
  double total_mass_ = 0.0;
};

struct RepresenterAtom {
  std::vector<double> vector;
  double prob = 0.0;
};

// Finitely supported law of a nonnegative de Haan representer Z with
// E[Z_i^alpha] = 1.
class DeHaanRepresenter {
 public:
  DeHaanRepresenter(double alpha, std::vector<RepresenterAtom> atoms);

  // Builds a representer from arbitrary positive atoms by rescaling every
  // coordinate to unit alpha-moment. Probabilities are renormalized.
  static DeHaanRepresenter standardized(double alpha,
                                        std::vector<RepresenterAtom> atoms);

  std::size_t dim() const { return dim_; }
  double alpha() const { return alpha_; }
  const std::vector<RepresenterAtom>& atoms() const { return atoms_; }
  // Largest sup-norm over atoms.
  double sup_bound() const;

 private:
  std::size_t dim_ = 0;
  double alpha_ = 1.0;
  std::vector<RepresenterAtom> atoms_;
};

struct SphereConstants {
  double m_alpha = 1.0;  // sup over the sphere of ||u||_alpha^alpha
  double nu0 = 0.0;      // total angular mass
  double c_inf = 1.0;    // sup over the sphere of ||u||_inf, floored at 1
  double b = 0.0;        // mass used for canonicalization (equals nu0)
  bool m_alpha_converged = true;
  // d^min(1,a/p) <= nu0 <= d^max(1,a/p) on unweighted l_p spheres.
  bool nu0_in_expected_range = true;
};

// Z* = b^(1/alpha) Theta with Theta ~ H / b.
DeHaanRepresenter canonical_representer(const AngularMeasure& h);

// Atom z/tau(z) with weight p * tau(z)^alpha; equal atoms are merged.
AngularMeasure angular_from_representer(const DeHaanRepresenter& z,
                                        const NormSpec& norm);

// Moves H onto the sphere of `new_norm`, preserving the tail measure.
AngularMeasure reproject(const AngularMeasure& h, const NormSpec& new_norm);

double m_alpha_closed_form(double p, double alpha, std::size_t dim);

struct MAlphaResult {
  double value = 0.0;
  std::vector<double> argmax;
  bool converged = false;
};

// Numeric sup of ||u||_alpha^alpha over the positive sphere of `norm`:
// multistart ascent from the indicator corners of every coordinate face
// plus the barycenter.
MAlphaResult m_alpha_numeric(const NormSpec& norm, double alpha,
                             std::size_t dim);

// M_alpha for `norm`: closed form for unweighted l_p, numeric otherwise.
MAlphaResult m_alpha(const NormSpec& norm, double alpha, std::size_t dim);

// sup of ||u||_inf over the positive sphere of `norm`, before flooring.
double sup_inf_norm_on_sphere(const NormSpec& norm, std::size_t dim);

SphereConstants sphere_constants(const AngularMeasure& h);

// sup_A |H1(A) - H2(A)|, unhalved. Both measures must live on the same
// sphere with the same alpha; atoms within kAtomMergeTol (sup norm) are
// identified.
double tv_distance(const AngularMeasure& h1, const AngularMeasure& h2);

// Merges atoms whose points agree within `tol` in sup norm.
std::vector<AngularAtom> merge_atoms(std::vector<AngularAtom> atoms,
                                     double tol = kAtomMergeTol);

}  // namespace maxstab

#endif  // MAXSTAB_SPECTRAL_HPP_
