#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "coeff.hpp"

namespace toricdisc {

using PolyMatrix = std::vector<std::vector<CoeffPoly>>;

inline constexpr std::size_t kMinorLayerLimit = 400000;

// Laplace expansion along rows, memoized on the set of used columns.
// Returns nullopt once a layer holds more than layer_limit partial minors.
inline std::optional<CoeffPoly> minor_expansion_determinant(const PolyMatrix& m, std::size_t layer_limit = kMinorLayerLimit) {
    const std::size_t n = m.size();
    if (n == 0) return CoeffPoly(1);
    if (n > 63) throw AlgebraError("matrix too large for minor expansion");
    std::unordered_map<std::uint64_t, CoeffPoly> layer{{0, CoeffPoly(1)}};
    for (std::size_t r = 0; r < n; ++r) {
        std::vector<std::size_t> nz;
        for (std::size_t c = 0; c < n; ++c)
            if (!m[r][c].is_zero()) nz.push_back(c);
        std::unordered_map<std::uint64_t, std::vector<CoeffPoly>> parts;
        for (auto& [mask, val] : layer) {
            for (auto c : nz) {
                if (mask >> c & 1) continue;
                bool odd = std::popcount(mask >> (c + 1)) & 1;
                CoeffPoly term = val * m[r][c];
                parts[mask | (1ull << c)].push_back(odd ? -term : term);
            }
        }
        std::unordered_map<std::uint64_t, CoeffPoly> next;
        for (auto& [mask, ps] : parts) {
            CoeffPoly s = CoeffPoly::sum(std::move(ps));
            if (!s.is_zero()) next.emplace(mask, std::move(s));
        }
        layer = std::move(next);
        if (layer.empty()) return CoeffPoly();
        if (layer.size() > layer_limit) return std::nullopt;
    }
    auto it = layer.find(n == 64 ? ~0ull : ((1ull << n) - 1));
    return it == layer.end() ? CoeffPoly() : it->second;
}

// Fraction-free Gaussian elimination with exact divisions by the previous pivot.
inline CoeffPoly bareiss_determinant(PolyMatrix m) {
    const std::size_t n = m.size();
    if (n == 0) return CoeffPoly(1);
    CoeffPoly prev(1);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t piv = n;
        for (std::size_t r = k; r < n; ++r)
            if (!m[r][k].is_zero() && (piv == n || m[r][k].size() < m[piv][k].size())) piv = r;
        if (piv == n) return CoeffPoly();
        if (piv != k) {
            std::swap(m[piv], m[k]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                CoeffPoly v = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                m[i][j] = v.exact_divide(prev);
            }
            m[i][k] = CoeffPoly();
        }
        prev = m[k][k];
    }
    return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

inline constexpr std::size_t kMinorExpansionLimit = 12;
inline constexpr std::size_t kSparseRowLimit = 10;

inline CoeffPoly ff_determinant(const PolyMatrix& m) {
    std::size_t widest = 0;
    for (const auto& row : m) {
        if (row.size() != m.size()) throw AlgebraError("determinant of a non-square matrix");
        std::size_t nz = 0;
        for (const auto& c : row) nz += !c.is_zero();
        widest = std::max(widest, nz);
    }
    if (m.size() <= kMinorExpansionLimit || (m.size() <= 63 && widest <= kSparseRowLimit))
        if (auto d = minor_expansion_determinant(m)) return *d;
    return bareiss_determinant(m);
}

}  // namespace toricdisc
