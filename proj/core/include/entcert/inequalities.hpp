// Copyright 2026 The entcert Authors
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

#ifndef ENTCERT_INEQUALITIES_HPP
#define ENTCERT_INEQUALITIES_HPP

#include <array>
#include <numbers>

#include "entcert/hilbert.hpp"

namespace entcert::inequalities {

using hilbert::DensityOperator;
using hilbert::HermitianOperator;

inline constexpr double kClassicalBound = 2.0;
inline constexpr double kTsirelsonBound = 2.0 * std::numbers::sqrt2;
inline constexpr double kBoundTolerance = 1e-9;

/// Single-site observable whose spectrum lies in [-bound, bound].
class MeasurementSetting {
   public:
    explicit MeasurementSetting(HermitianOperator observable, double spectrum_bound = 1.0);

    const HermitianOperator& observable() const noexcept { return observable_; }
    double spectrum_bound() const noexcept { return spectrum_bound_; }

   private:
    HermitianOperator observable_;
    double spectrum_bound_;
};

/// cos(theta) sigma_z + sin(theta) sigma_x.
MeasurementSetting planar_spin_setting(double theta);

/// A, A' act on site 0; B, B' on site 1.
struct CHSHConfig {
    MeasurementSetting a;
    MeasurementSetting a_prime;
    MeasurementSetting b;
    MeasurementSetting b_prime;
};

/// Planar angles (radians) of a CHSHConfig built by planar_spin_setting.
struct PlanarAngles {
    double a, a_prime, b, b_prime;
};

CHSHConfig planar_config(const PlanarAngles& angles);

struct CHSHReport {
    double e_ab;
    double e_ab_prime;
    double e_a_prime_b;
    double e_a_prime_b_prime;
    double s_value;
    bool classical_bound_violated;
    bool tsirelson_exceeded;
};

/// |E(AB) - E(AB')| + |E(A'B) + E(A'B')|
constexpr double chsh_expression(double e_ab, double e_ab_prime, double e_a_prime_b, double e_a_prime_b_prime) {
    const double left = e_ab - e_ab_prime;
    const double right = e_a_prime_b + e_a_prime_b_prime;
    return (left < 0 ? -left : left) + (right < 0 ? -right : right);
}

CHSHReport chsh_value(const DensityOperator& rho, const CHSHConfig& cfg);

struct CHSHOptimum {
    PlanarAngles angles;
    CHSHReport report;
};

/// Exhaustive search over the planar grid {0, step, 2 step, ...} < 2 pi for
/// all four angles. Among equal maxima the lexicographically smallest
/// angle tuple (a, a', b, b') wins.
CHSHOptimum maximize_chsh(const DensityOperator& rho, double grid_step = std::numbers::pi / 180.0);

enum class SpinAxis { z, x };

/// (S (x) I + I (x) S)^2 with S = sigma/2 along `axis`.
HermitianOperator total_spin_squared(SpinAxis axis);

struct SpinCovariance {
    double covariance;      ///< E(1/2 {Sz^2, Sx^2}) - E(Sz^2) E(Sx^2)
    double commutator_norm; ///< max-norm of [Sz^2, Sx^2]
};

SpinCovariance torre_spin_covariance(const DensityOperator& rho);

}  // namespace entcert::inequalities

#endif  // ENTCERT_INEQUALITIES_HPP
