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

#ifndef ENTCERT_HILBERT_HPP
#define ENTCERT_HILBERT_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace entcert::hilbert {

using Complex = std::complex<double>;

/// Numerical tolerances used by validation and contract checks.
struct Tolerances {
    double hermiticity = 1e-12;
    double trace = 1e-12;
    double psd = 1e-10;
    double commutation = 1e-10;
    double imaginary = 1e-10;
    /// Residual allowed between the two sides of the bilinear covariance identity.
    double bilinear_identity = 1e-10;
    /// Max-norm distance for deciding that a state factorizes.
    double product_state = 1e-10;
};

/// Dense row-major complex matrix.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const double> values);
    static ComplexMatrix diagonal(std::initializer_list<double> values);
    /// |v><v|
    static ComplexMatrix outer(std::span<const Complex> v);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    std::span<const Complex> entries() const noexcept { return entries_; }

    Complex& operator()(std::size_t r, std::size_t c) noexcept { return entries_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const noexcept { return entries_[r * cols_ + c]; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    Complex trace() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex scale) noexcept;

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

    bool operator==(const ComplexMatrix&) const = default;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

/// Largest entrywise modulus of a - b. Shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
/// Largest entrywise modulus.
double max_abs(const ComplexMatrix& a) noexcept;

/// Factor dimensions of H_1 (x) H_2 (x) ...
class TensorStructure {
   public:
    explicit TensorStructure(std::vector<std::size_t> factor_dims);
    static TensorStructure bipartite(std::size_t d1, std::size_t d2) { return TensorStructure({d1, d2}); }

    std::span<const std::size_t> factor_dims() const noexcept { return dims_; }
    std::size_t factor_count() const noexcept { return dims_.size(); }
    std::size_t factor_dim(std::size_t site) const;
    std::size_t total_dim() const noexcept;
    TensorStructure concat(const TensorStructure& other) const;

    bool operator==(const TensorStructure&) const = default;

   private:
    std::vector<std::size_t> dims_;
};

/// Observable. Construction checks hermiticity against `Tolerances::hermiticity`.
class HermitianOperator {
   public:
    explicit HermitianOperator(ComplexMatrix matrix, double hermiticity_tol = Tolerances{}.hermiticity);

    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    std::size_t dim() const noexcept { return matrix_.rows(); }

    friend HermitianOperator operator+(const HermitianOperator& a, const HermitianOperator& b);
    friend HermitianOperator operator*(double s, const HermitianOperator& a);

   private:
    ComplexMatrix matrix_;
};

/// Positive, unit-trace Hermitian matrix annotated with its tensor structure.
class DensityOperator {
   public:
    DensityOperator(ComplexMatrix matrix, TensorStructure structure, const Tolerances& tol = {});

    /// |psi><psi| for a normalized state vector.
    static DensityOperator pure(std::span<const Complex> psi, TensorStructure structure, const Tolerances& tol = {});
    /// I/d on a single factor of dimension d.
    static DensityOperator maximally_mixed(TensorStructure structure);

    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    const TensorStructure& structure() const noexcept { return structure_; }
    std::size_t dim() const noexcept { return matrix_.rows(); }
    double purity() const;

   private:
    ComplexMatrix matrix_;
    TensorStructure structure_;
};

namespace pauli {
HermitianOperator x();
HermitianOperator y();
HermitianOperator z();
HermitianOperator identity(std::size_t n = 2);
}  // namespace pauli

/// Truncated position operator diag(j - (d-1)/2), j = 0..d-1.
HermitianOperator position_operator(std::size_t levels = 8);

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
HermitianOperator tensor_product(const HermitianOperator& a, const HermitianOperator& b);
/// Product state; structures are concatenated.
DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b);

/// Embeds a single-factor observable at `site`, identities elsewhere.
HermitianOperator lift_local(const HermitianOperator& obs, std::size_t site, const TensorStructure& structure);

/// Re Tr(rho obs). Throws InvariantViolation if the imaginary part exceeds the tolerance.
double expectation(const DensityOperator& rho, const HermitianOperator& obs, const Tolerances& tol = {});

/// Re Tr(rho m) for an arbitrary square matrix, without the imaginary-part check.
Complex trace_product(const ComplexMatrix& rho, const ComplexMatrix& m);

/// Max-norm of [a, b].
double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b);

/// cov(A,B|rho) = E(AB|rho) - E(A|rho) E(B|rho) for commuting A, B.
double conditional_covariance(const DensityOperator& rho, const HermitianOperator& a, const HermitianOperator& b,
                              const Tolerances& tol = {});

/// var(A|rho); never below -tol.psd.
double variance(const DensityOperator& rho, const HermitianOperator& a, const Tolerances& tol = {});

/// Both sides of cov(kA + nB, mA + lB | rho) = km var(A) + nl var(B).
struct BilinearCovariance {
    double covariance;      ///< evaluated from the combined operators
    double variance_a;
    double variance_b;
    double predicted;       ///< k m var(A) + n l var(B)
    double residual() const noexcept;
};

/// Evaluates cov(kA + nB, mA + lB | rho) for a product state with A, B
/// local to different sites and checks it against the variance form.
/// Throws PreconditionError if rho does not factorize or the observables
/// are not local to distinct sites; InvariantViolation if the identity fails.
BilinearCovariance covariance_bilinear(const DensityOperator& rho, double k, double n, double m, double l,
                                       const HermitianOperator& a, const HermitianOperator& b,
                                       const Tolerances& tol = {});

struct EigenDecomposition {
    std::vector<double> eigenvalues;  ///< ascending
    ComplexMatrix eigenvectors;       ///< column j pairs with eigenvalues[j]
};

/// Cyclic complex Jacobi diagonalization.
EigenDecomposition eigen_hermitian(const HermitianOperator& h);
EigenDecomposition eigen_hermitian(const ComplexMatrix& h, double hermiticity_tol = Tolerances{}.hermiticity);

/// Transpose of the indices belonging to `site` of a bipartite state.
HermitianOperator partial_transpose(const DensityOperator& rho, std::size_t site);
ComplexMatrix partial_transpose(const ComplexMatrix& m, const TensorStructure& structure, std::size_t site);

/// Reduced state on `keep_site` of a bipartite state.
DensityOperator partial_trace(const DensityOperator& rho, std::size_t keep_site, const Tolerances& tol = {});

/// True when rho equals the tensor product of its two marginals.
bool is_product_state(const DensityOperator& rho, const Tolerances& tol = {});

}  // namespace entcert::hilbert

#endif  // ENTCERT_HILBERT_HPP
