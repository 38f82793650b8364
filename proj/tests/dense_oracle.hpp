// Copyright 2026 The hmstream Authors
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

// Dense-matrix reference semantics for gates. Built from textbook matrix
// definitions through Kronecker products and explicit permutations, with no
// code shared with the statevector kernels.

#ifndef HMSTREAM_TESTS_DENSE_ORACLE_HPP
#define HMSTREAM_TESTS_DENSE_ORACLE_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "hmstream/statevector.hpp"

namespace oracle {

using C = std::complex<double>;

struct Matrix {
    std::size_t dim = 0;
    std::vector<C> a;

    explicit Matrix(std::size_t d = 0) : dim(d), a(d * d) {}
    C &operator()(std::size_t r, std::size_t c) { return a[r * dim + c]; }
    C operator()(std::size_t r, std::size_t c) const { return a[r * dim + c]; }

    static Matrix identity(std::size_t d) {
        Matrix m(d);
        for (std::size_t i = 0; i < d; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }
};

inline Matrix multiply(const Matrix &x, const Matrix &y) {
    Matrix out(x.dim);
    for (std::size_t i = 0; i < x.dim; ++i) {
        for (std::size_t k = 0; k < x.dim; ++k) {
            const C xik = x(i, k);
            if (xik == C(0.0)) {
                continue;
            }
            for (std::size_t j = 0; j < x.dim; ++j) {
                out(i, j) += xik * y(k, j);
            }
        }
    }
    return out;
}

inline Matrix kron(const Matrix &x, const Matrix &y) {
    Matrix out(x.dim * y.dim);
    for (std::size_t i = 0; i < x.dim; ++i) {
        for (std::size_t j = 0; j < x.dim; ++j) {
            for (std::size_t k = 0; k < y.dim; ++k) {
                for (std::size_t l = 0; l < y.dim; ++l) {
                    out(i * y.dim + k, j * y.dim + l) = x(i, j) * y(k, l);
                }
            }
        }
    }
    return out;
}

inline Matrix two_by_two(C a, C b, C c, C d) {
    Matrix m(2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

/// U acting on qubit q of an m-qubit register (qubit 0 least significant),
/// built as I (x) ... (x) U (x) ... (x) I with the most significant qubit first.
inline Matrix embed(int m, int q, const Matrix &u) {
    Matrix out = Matrix::identity(1);
    for (int k = m - 1; k >= 0; --k) {
        out = kron(out, k == q ? u : Matrix::identity(2));
    }
    return out;
}

inline Matrix permutation(int m, const std::function<uint64_t(uint64_t)> &f) {
    const std::size_t d = std::size_t{1} << m;
    Matrix out(d);
    for (std::size_t i = 0; i < d; ++i) {
        out(f(i), i) = 1.0;
    }
    return out;
}

/// Matrix of a multi-controlled X with the given controls (qubit, polarity).
inline Matrix controlled_x(int m, const std::vector<hmstream::Control> &controls, int target) {
    return permutation(m, [&](uint64_t i) {
        for (const auto &c : controls) {
            if ((((i >> c.qubit) & 1U) != 0) != c.polarity) {
                return i;
            }
        }
        return i ^ (uint64_t{1} << target);
    });
}

inline Matrix gate_matrix(int m, const hmstream::GateOp &op) {
    using hmstream::GateKind;
    const double r = 1.0 / std::sqrt(2.0);
    const C w = std::polar(1.0, M_PI / 4);
    switch (op.kind) {
        case GateKind::H: return embed(m, op.target, two_by_two(r, r, r, -r));
        case GateKind::X: return embed(m, op.target, two_by_two(0, 1, 1, 0));
        case GateKind::T: return embed(m, op.target, two_by_two(1, 0, 0, w));
        case GateKind::Tdg: return embed(m, op.target, two_by_two(1, 0, 0, std::conj(w)));
        case GateKind::CX:
            return op.enabled ? controlled_x(m, op.controls, op.target) : Matrix::identity(std::size_t{1} << m);
        case GateKind::MCX:
        case GateKind::CCX: return controlled_x(m, op.controls, op.target);
        case GateKind::RY: {
            const double c = std::cos(op.angle / 2);
            const double s = std::sin(op.angle / 2);
            const Matrix rot = embed(m, op.target, two_by_two(c, -s, s, c));
            Matrix out = Matrix::identity(std::size_t{1} << m);
            for (std::size_t i = 0; i < out.dim; ++i) {
                bool fire = true;
                for (const auto &k : op.controls) {
                    fire = fire && ((((i >> k.qubit) & 1U) != 0) == k.polarity);
                }
                if (fire) {
                    for (std::size_t j = 0; j < out.dim; ++j) {
                        out(j, i) = rot(j, i);
                    }
                }
            }
            return out;
        }
        default: break;
    }
    throw std::logic_error("no dense matrix for gate");
}

/// Product of the gates in application order.
inline Matrix circuit_matrix(int m, const std::vector<hmstream::GateOp> &ops) {
    Matrix u = Matrix::identity(std::size_t{1} << m);
    for (const auto &op : ops) {
        u = multiply(gate_matrix(m, op), u);
    }
    return u;
}

/// Max |x - phase * y| over the listed columns after fitting one global
/// phase from the largest entry of y.
inline double distance_up_to_phase(const Matrix &x, const Matrix &y, const std::vector<std::size_t> &columns) {
    std::size_t br = 0;
    std::size_t bc = 0;
    double best = -1.0;
    for (std::size_t c : columns) {
        for (std::size_t r = 0; r < y.dim; ++r) {
            if (std::abs(y(r, c)) > best) {
                best = std::abs(y(r, c));
                br = r;
                bc = c;
            }
        }
    }
    const C phase = x(br, bc) / y(br, bc);
    double worst = std::abs(std::abs(phase) - 1.0);
    for (std::size_t c : columns) {
        for (std::size_t r = 0; r < y.dim; ++r) {
            worst = std::max(worst, std::abs(x(r, c) - phase * y(r, c)));
        }
    }
    return worst;
}

}  // namespace oracle

#endif
