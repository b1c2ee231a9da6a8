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

#ifndef ENTCERT_SPECIAL_FUNCTIONS_HPP
#define ENTCERT_SPECIAL_FUNCTIONS_HPP

namespace entcert::special {

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);
/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), accurate in the tail.
double gamma_q(double a, double x);

/// Regularized incomplete beta I_x(a, b).
double beta_inc(double a, double b, double x);

/// P(X > x) for X ~ chi-square(dof).
double chi_square_survival(double x, double dof);
/// P(F > f) for F ~ F(d1, d2).
double f_survival(double f, double d1, double d2);
/// P(Z > z) for standard normal Z.
double normal_upper_tail(double z);
/// P(|Z| > |z|).
double normal_two_sided(double z);
/// Kolmogorov limiting survival Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_survival(double lambda);

}  // namespace entcert::special

#endif  // ENTCERT_SPECIAL_FUNCTIONS_HPP
