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

// Cyclic Jacobi eigensolver for small dense Hermitian matrices.
//
// Each rotation first applies a diagonal phase so that the pivot a_pq is
// real, then a real Givens rotation that annihilates it. The combined 2x2
// unitary U acts on columns/rows p, q as A <- U^H A U, V <- V U.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "entcert/error.hpp"
#include "entcert/hilbert.hpp"

namespace entcert::hilbert {

namespace {

constexpr int kMaxSweeps = 64;

double off_diagonal_norm2(const ComplexMatrix& a) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) sum += std::norm(a(i, j));
    return sum;
}

double frobenius_norm2(const ComplexMatrix& a) {
    double sum = 0.0;
    for (const auto& e : a.entries()) sum += std::norm(e);
    return sum;
}

void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
    const Complex apq = a(p, q);
    const double r = std::abs(apq);
    const Complex phase = apq / r;  // e^{i alpha}
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();

    const double theta = (aqq - app) / (2.0 * r);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    // U = diag(1, e^{-i alpha}) * [[c, s], [-s, c]]
    const Complex u_pp = c;
    const Complex u_pq = s;
    const Complex u_qp = -s * std::conj(phase);
    const Complex u_qq = c * std::conj(phase);

    const std::size_t n = a.rows();
    for (std::size_t k = 0; k < n; ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = akp * u_pp + akq * u_qp;
        a(k, q) = akp * u_pq + akq * u_qq;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const Complex apk = a(p, k);
        const Complex aqk = a(q, k);
        a(p, k) = std::conj(u_pp) * apk + std::conj(u_qp) * aqk;
        a(q, k) = std::conj(u_pq) * apk + std::conj(u_qq) * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();

    for (std::size_t k = 0; k < n; ++k) {
        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = vkp * u_pp + vkq * u_qp;
        v(k, q) = vkp * u_pq + vkq * u_qq;
    }
}

}  // namespace

EigenDecomposition eigen_hermitian(const HermitianOperator& h) { return eigen_hermitian(h.matrix(), std::numeric_limits<double>::infinity());
}

EigenDecomposition eigen_hermitian(const ComplexMatrix& h, double hermiticity_tol) {
    if (!h.is_square() || h.rows() == 0) throw DimensionError("eigen_hermitian: matrix must be square");
    const std::size_t n = h.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            if (std::abs(h(i, j) - std::conj(h(j, i))) > hermiticity_tol) {
                throw PreconditionError("eigen_hermitian: input is not Hermitian");
            }

    ComplexMatrix a = h;
    // Symmetrize so that round-off in the input cannot leak into the rotations.
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = a(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = avg;
            a(j, i) = std::conj(avg);
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = frobenius_norm2(a);
    const double target = scale * 1e-32;
    for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm2(a) > target; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a(p, q)) <= 1e-300) continue;
                rotate(a, v, p, q);
            }
        }
    }
    if (off_diagonal_norm2(a) > std::max(target, 1e-28 * scale)) {
        throw InvariantViolation("eigen_hermitian: Jacobi sweeps did not converge");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t j = 0; j < n; ++j) {
        out.eigenvalues[j] = a(order[j], order[j]).real();
        for (std::size_t k = 0; k < n; ++k) out.eigenvectors(k, j) = v(k, order[j]);
    }
    return out;
}

}  // namespace entcert::hilbert
