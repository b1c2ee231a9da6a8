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

#include "entcert/inequalities.hpp"

#include <cmath>
#include <string>
#include <tuple>
#include <vector>

#include "entcert/error.hpp"

namespace entcert::inequalities {

using hilbert::Complex;
using hilbert::ComplexMatrix;

MeasurementSetting::MeasurementSetting(HermitianOperator observable, double spectrum_bound)
    : observable_(std::move(observable)), spectrum_bound_(spectrum_bound) {
    const auto eig = hilbert::eigen_hermitian(observable_);
    const double slack = 1e-10;
    if (eig.eigenvalues.front() < -spectrum_bound_ - slack || eig.eigenvalues.back() > spectrum_bound_ + slack) {
        throw PreconditionError("MeasurementSetting: spectrum [" + std::to_string(eig.eigenvalues.front()) + ", " +
                                std::to_string(eig.eigenvalues.back()) + "] exceeds bound " +
                                std::to_string(spectrum_bound_));
    }
}

MeasurementSetting planar_spin_setting(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return MeasurementSetting(HermitianOperator(ComplexMatrix{{c, s}, {s, -c}}));
}

CHSHConfig planar_config(const PlanarAngles& angles) {
    return {planar_spin_setting(angles.a), planar_spin_setting(angles.a_prime), planar_spin_setting(angles.b),
            planar_spin_setting(angles.b_prime)};
}

namespace {

double correlation(const DensityOperator& rho, const MeasurementSetting& a, const MeasurementSetting& b) {
    return hilbert::expectation(rho, hilbert::tensor_product(a.observable(), b.observable()));
}

void check_settings(const DensityOperator& rho, const CHSHConfig& cfg) {
    const auto& s = rho.structure();
    if (s.factor_count() != 2) throw PreconditionError("chsh_value: state must be bipartite");
    for (const auto* m : {&cfg.a, &cfg.a_prime}) {
        if (m->observable().dim() != s.factor_dim(0)) throw DimensionError("chsh_value: A setting dimension mismatch");
        if (m->spectrum_bound() > 1.0) throw PreconditionError("chsh_value: settings must be bounded by 1");
    }
    for (const auto* m : {&cfg.b, &cfg.b_prime}) {
        if (m->observable().dim() != s.factor_dim(1)) throw DimensionError("chsh_value: B setting dimension mismatch");
        if (m->spectrum_bound() > 1.0) throw PreconditionError("chsh_value: settings must be bounded by 1");
    }
}

CHSHReport make_report(double e_ab, double e_abp, double e_apb, double e_apbp) {
    CHSHReport r{e_ab, e_abp, e_apb, e_apbp, chsh_expression(e_ab, e_abp, e_apb, e_apbp), false, false};
    r.classical_bound_violated = r.s_value > kClassicalBound + kBoundTolerance;
    r.tsirelson_exceeded = r.s_value > kTsirelsonBound + kBoundTolerance;
    return r;
}

}  // namespace

CHSHReport chsh_value(const DensityOperator& rho, const CHSHConfig& cfg) {
    check_settings(rho, cfg);
    return make_report(correlation(rho, cfg.a, cfg.b), correlation(rho, cfg.a, cfg.b_prime),
                       correlation(rho, cfg.a_prime, cfg.b), correlation(rho, cfg.a_prime, cfg.b_prime));
}

CHSHOptimum maximize_chsh(const DensityOperator& rho, double grid_step) {
    if (!(grid_step > 0.0)) throw PreconditionError("maximize_chsh: grid step must be positive");
    if (rho.structure().factor_count() != 2 || rho.structure().factor_dim(0) != 2 ||
        rho.structure().factor_dim(1) != 2) {
        throw PreconditionError("maximize_chsh: requires a two-qubit state");
    }
    const auto n = static_cast<std::size_t>(std::ceil(2.0 * std::numbers::pi / grid_step - 1e-9));
    std::vector<MeasurementSetting> settings;
    settings.reserve(n);
    for (std::size_t i = 0; i < n; ++i) settings.push_back(planar_spin_setting(double(i) * grid_step));

    // corr[i * n + j] = E(A_i B_j)
    std::vector<double> corr(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) corr[i * n + j] = correlation(rho, settings[i], settings[j]);

    // With signs s1, s2 fixed, S = [s1 E(a,b) + s2 E(a',b)] + [-s1 E(a,b') + s2 E(a',b')],
    // so b and b' maximize independently. The first index attaining each
    // maximum is the lexicographically smallest.
    double best = -1.0;
    std::tuple<std::size_t, std::size_t, std::size_t, std::size_t> best_idx{0, 0, 0, 0};
    for (std::size_t ia = 0; ia < n; ++ia) {
        const double* row_a = &corr[ia * n];
        for (std::size_t iap = 0; iap < n; ++iap) {
            const double* row_ap = &corr[iap * n];
            for (int s1 : {1, -1}) {
                for (int s2 : {1, -1}) {
                    double max_b = -1e300, max_bp = -1e300;
                    std::size_t ib = 0, ibp = 0;
                    for (std::size_t j = 0; j < n; ++j) {
                        const double vb = s1 * row_a[j] + s2 * row_ap[j];
                        if (vb > max_b) max_b = vb, ib = j;
                        const double vbp = -s1 * row_a[j] + s2 * row_ap[j];
                        if (vbp > max_bp) max_bp = vbp, ibp = j;
                    }
                    const double total = max_b + max_bp;
                    const auto idx = std::make_tuple(ia, iap, ib, ibp);
                    if (total > best || (total == best && idx < best_idx)) {
                        best = total;
                        best_idx = idx;
                    }
                }
            }
        }
    }

    const auto [ia, iap, ib, ibp] = best_idx;
    CHSHOptimum out{{double(ia) * grid_step, double(iap) * grid_step, double(ib) * grid_step, double(ibp) * grid_step},
                    make_report(corr[ia * n + ib], corr[ia * n + ibp], corr[iap * n + ib], corr[iap * n + ibp])};
    return out;
}

HermitianOperator total_spin_squared(SpinAxis axis) {
    const auto sigma = axis == SpinAxis::z ? hilbert::pauli::z() : hilbert::pauli::x();
    const auto s = 0.5 * sigma;
    const auto i2 = hilbert::pauli::identity(2);
    const ComplexMatrix total = hilbert::tensor_product(s, i2).matrix() + hilbert::tensor_product(i2, s).matrix();
    return HermitianOperator(total * total);
}

SpinCovariance torre_spin_covariance(const DensityOperator& rho) {
    if (rho.dim() != 4) throw DimensionError("torre_spin_covariance: requires a two-qubit state");
    const auto sz2 = total_spin_squared(SpinAxis::z);
    const auto sx2 = total_spin_squared(SpinAxis::x);
    const ComplexMatrix jordan = (sz2.matrix() * sx2.matrix() + sx2.matrix() * sz2.matrix()) * Complex{0.5};
    SpinCovariance out{};
    out.covariance = hilbert::expectation(rho, HermitianOperator(jordan)) -
                     hilbert::expectation(rho, sz2) * hilbert::expectation(rho, sx2);
    out.commutator_norm = hilbert::commutator_norm(sz2.matrix(), sx2.matrix());
    return out;
}

}  // namespace entcert::inequalities
