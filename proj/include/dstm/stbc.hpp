#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "dstm/matrix.hpp"
#include "dstm/rng.hpp"

namespace dstm {

namespace detail {

inline void require_symbols(std::span<const cx> c, std::size_t n, const char* code) {
    if (c.size() != n)
        throw ArityError(std::string(code) + ": expected " + std::to_string(n) + " symbols, got " +
                         std::to_string(c.size()));
    for (const auto& v : c)
        if (!is_finite(v)) throw Error(std::string(code) + ": non-finite symbol");
}

}  // namespace detail

/// 4x4 rate-3/4 orthogonal design on three complex symbols.
/// C*C^H = (|c1|^2+|c2|^2+|c3|^2) * I.
inline ComplexMatrix ostbc4(std::span<const cx> c) {
    detail::require_symbols(c, 3, "ostbc4");
    const cx c1 = c[0], c2 = c[1], c3 = c[2];
    const cx z{};
    return ComplexMatrix(4, 4,
                         {c1, z, c2, -c3,                              //
                          z, c1, std::conj(c3), std::conj(c2),        //
                          -std::conj(c2), -c3, std::conj(c1), z,      //
                          std::conj(c3), -c2, z, std::conj(c1)});
}

/// 4x4 rate-1 quasi-orthogonal design on four complex symbols.
/// Gram is alpha*I plus a beta cross-term on the anti-diagonal pattern.
inline ComplexMatrix qostbc4(std::span<const cx> c) {
    detail::require_symbols(c, 4, "qostbc4");
    const cx c1 = c[0], c2 = c[1], c3 = c[2], c4 = c[3];
    return ComplexMatrix(4, 4,
                         {c1, -std::conj(c2), -std::conj(c3), c4,     //
                          c2, std::conj(c1), -std::conj(c4), -c3,     //
                          c3, -std::conj(c4), std::conj(c1), -c2,     //
                          c4, std::conj(c3), std::conj(c2), c1});
}

/// Gram parameters of qostbc4: alpha = sum|c_i|^2, beta = 2 Re(c1 c4* - c2 c3*).
inline std::pair<double, double> gram_params_qo4(std::span<const cx> c) {
    detail::require_symbols(c, 4, "gram_params_qo4");
    double alpha = 0.0;
    for (const auto& v : c) alpha += std::norm(v);
    const double beta = 2.0 * (c[0] * std::conj(c[3]) - c[1] * std::conj(c[2])).real();
    return {alpha, beta};
}

/// 2x2 Alamouti block.
inline ComplexMatrix alamouti(cx c1, cx c2) {
    return ComplexMatrix(2, 2, {c1, c2, -std::conj(c2), std::conj(c1)});
}

/// 4x4 rate-1/2 orthogonal design: two diagonal Alamouti blocks carrying the
/// same two symbols. C*C^H = (|c1|^2+|c2|^2) * I4.
inline ComplexMatrix ostbc4_half(std::span<const cx> c) {
    detail::require_symbols(c, 2, "ostbc4_half");
    ComplexMatrix m(4, 4);
    const ComplexMatrix a = alamouti(c[0], c[1]);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            m(i, j) = a(i, j);
            m(i + 2, j + 2) = a(i, j);
        }
    return m;
}

/// 8x8 rate-1/2 orthogonal design via the doubling step
///   [[A, c4*I], [-c4^* *I, A^H]]  with A = ostbc4(c1..c3).
/// C*C^H = (sum |c_i|^2) * I8 and det(dC dC^H) = (sum |d_i|^2)^8.
inline ComplexMatrix ostbc8(std::span<const cx> c) {
    detail::require_symbols(c, 4, "ostbc8");
    const ComplexMatrix a = ostbc4(c.first(3));
    const cx c4 = c[3];
    ComplexMatrix m(8, 8);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            m(i, j) = a(i, j);
            m(i + 4, j + 4) = std::conj(a(j, i));
        }
        m(i, i + 4) = c4;
        m(i + 4, i) = -std::conj(c4);
    }
    return m;
}

/// 8x8 rate-3/4 quasi-orthogonal design: ABBA compound of two rate-3/4
/// blocks A(c1,c2,c3) and B(c4,c5,c6). The Gram cross-term vanishes exactly
/// when Re(c1 c4* + c2 c5* + c3 c6*) = 0.
inline ComplexMatrix qostbc8(std::span<const cx> c) {
    detail::require_symbols(c, 6, "qostbc8");
    const ComplexMatrix a = ostbc4(c.first(3));
    const ComplexMatrix b = ostbc4(c.subspan(3, 3));
    ComplexMatrix m(8, 8);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            m(i, j) = a(i, j);
            m(i + 4, j + 4) = a(i, j);
            m(i, j + 4) = b(i, j);
            m(i + 4, j) = b(i, j);
        }
    return m;
}

using CodewordBuilder = std::function<ComplexMatrix(std::span<const cx>)>;

/// Linear space-time code as per-symbol dispersion matrix pairs:
///   codeword(c) = sum_k [ Re(c_k)*A_k + Im(c_k)*(j*B_k) ].
struct LinearDispersion {
    std::size_t n_tx = 0;
    std::size_t n_sym = 0;
    std::vector<ComplexMatrix> a;       // real-part dispersion matrices
    std::vector<ComplexMatrix> b;       // imaginary-part dispersion matrices
    std::vector<ComplexMatrix> slot_m;  // per real slot: slot 2k -> A_k, 2k+1 -> j*B_k

    ComplexMatrix rebuild(std::span<const cx> c) const {
        if (c.size() != n_sym) throw ArityError("rebuild: wrong symbol count");
        ComplexMatrix m(n_tx, n_tx);
        for (std::size_t k = 0; k < n_sym; ++k) {
            m.add_scaled(c[k].real(), a[k]);
            m.add_scaled(c[k].imag(), slot_m[2 * k + 1]);
        }
        return m;
    }

    ComplexMatrix rebuild_slots(std::span<const double> slots) const {
        if (slots.size() != 2 * n_sym) throw ArityError("rebuild_slots: wrong slot count");
        ComplexMatrix m(n_tx, n_tx);
        for (std::size_t s = 0; s < slots.size(); ++s)
            if (slots[s] != 0.0) m.add_scaled(slots[s], slot_m[s]);
        return m;
    }
};

/// Probe a linear builder with unit real/imaginary symbols to recover its
/// dispersion matrices, then verify the linear reconstruction at a random
/// point. Throws StructuralError if the builder is not linear.
inline LinearDispersion extract_dispersion(const CodewordBuilder& builder, std::size_t n_sym,
                                           std::size_t n_tx) {
    LinearDispersion d;
    d.n_tx = n_tx;
    d.n_sym = n_sym;
    std::vector<cx> probe(n_sym, cx{});
    for (std::size_t k = 0; k < n_sym; ++k) {
        probe[k] = cx{1.0, 0.0};
        ComplexMatrix ak = builder(probe);
        probe[k] = cx{0.0, 1.0};
        ComplexMatrix jbk = builder(probe);
        probe[k] = cx{};
        if (ak.rows() != n_tx || ak.cols() != n_tx)
            throw StructuralError("extract_dispersion: builder output has wrong shape");
        d.slot_m.push_back(ak);
        d.slot_m.push_back(jbk);
        d.a.push_back(std::move(ak));
        d.b.push_back(cx{0.0, -1.0} * jbk);
    }
    // linearity check at a fixed random probe
    Rng rng(0x5197F00DULL);
    std::vector<cx> c(n_sym);
    for (auto& v : c) v = rng.cgaussian();
    const double residual = max_abs_diff(builder(c), d.rebuild(c));
    if (residual > 1e-9)
        throw StructuralError("extract_dispersion: builder is not linear (residual " +
                              std::to_string(residual) + ")");
    return d;
}

}  // namespace dstm
