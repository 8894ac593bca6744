#include <gtest/gtest.h>

#include <random>
#include <set>

#include "toricdisc/lattice.hpp"

using namespace toricdisc;

namespace {

using Pts = std::vector<LatticePoint>;
const Pts kSigma{{0, 0}, {1, 0}, {0, 1}};
const Pts kSquare{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
const Pts kTwoSigma{{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {0, 2}};

Pts dilate_simplex(std::int64_t d) {
    Pts p;
    for (std::int64_t x = 0; x <= d; ++x)
        for (std::int64_t y = 0; x + y <= d; ++y) p.push_back({x, y});
    return p;
}

// Brute-force twice the area of conv(pts) by shoelace over a gift-wrapped hull.
std::int64_t brute_area2(Pts pts) {
    std::set<LatticePoint> s(pts.begin(), pts.end());
    pts.assign(s.begin(), s.end());
    if (pts.size() < 3) return 0;
    Pts hull;
    std::size_t start = 0;
    std::size_t cur = start;
    do {
        hull.push_back(pts[cur]);
        std::size_t next = (cur + 1) % pts.size();
        for (std::size_t k = 0; k < pts.size(); ++k) {
            std::int64_t c = cross(pts[cur], pts[next], pts[k]);
            if (c < 0) next = k;
        }
        cur = next;
    } while (cur != start && hull.size() <= pts.size());
    std::int64_t a = 0;
    for (std::size_t k = 0; k < hull.size(); ++k) a += cross(hull[k], hull[(k + 1) % hull.size()]);
    return a < 0 ? -a : a;
}

std::vector<SupportConfig> random_configs(std::uint64_t seed, int count, int label) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coord(-3, 3), size(3, 8);
    std::vector<SupportConfig> out;
    while (static_cast<int>(out.size()) < count) {
        std::set<LatticePoint> s;
        int n = size(rng);
        while (static_cast<int>(s.size()) < n) s.insert({coord(rng), coord(rng)});
        Pts v(s.begin(), s.end());
        if (affine_dimension(v) == 2) out.emplace_back(label, v);
    }
    return out;
}

}  // namespace

TEST(Hull, SinglePoint) { EXPECT_EQ(convex_hull({{0, 0}}), (Pts{{0, 0}})); }

TEST(Hull, UnitSquareCounterclockwise) { EXPECT_EQ(convex_hull(kSquare), (Pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}})); }

TEST(Hull, DropsEdgeAndInteriorPoints) {
    EXPECT_EQ(convex_hull({{0, 0}, {2, 0}, {1, 0}, {0, 2}, {1, 1}}), (Pts{{0, 0}, {2, 0}, {0, 2}}));
}

TEST(Hull, SegmentHasTwoVertices) { EXPECT_EQ(convex_hull({{0, 0}, {1, 1}, {2, 2}}).size(), 2u); }

TEST(Volume, Examples) {
    EXPECT_EQ(normalized_volume(kSigma), 1);
    EXPECT_EQ(normalized_volume(kSquare), 2);
    EXPECT_EQ(normalized_volume(kTwoSigma), 4);
    EXPECT_EQ(normalized_volume(Pts{{0, 0}, {3, 0}}), 0);
}

TEST(Volume, MatchesGiftWrapping) {
    for (const auto& c : random_configs(7, 80, 1)) EXPECT_EQ(normalized_volume(c), brute_area2(c.points));
}

TEST(Minkowski, Examples) {
    EXPECT_EQ(minkowski_sum({1, kSigma}, {2, {{0, 0}}}).points.size(), 3u);
    EXPECT_EQ(minkowski_sum({1, kSigma}, {2, kSigma}).points.size(), 6u);
    EXPECT_EQ(minkowski_sum({1, kSquare}, {2, kSquare}).points.size(), 9u);
}

TEST(MixedVolume, Examples) {
    EXPECT_EQ(mixed_volume(SupportConfig(1, kSigma), SupportConfig(2, kSigma)), 1);
    EXPECT_EQ(mixed_volume(SupportConfig(1, kSquare), SupportConfig(2, kSquare)), 2);
    EXPECT_EQ(mixed_volume(SupportConfig(1, kTwoSigma), SupportConfig(2, kSigma)), 2);
}

TEST(MixedVolume, SweepIdentities) {
    auto as = random_configs(11, 100, 1), bs = random_configs(12, 100, 2);
    for (std::size_t k = 0; k < as.size(); ++k) {
        const auto &a = as[k], &b = bs[k];
        std::int64_t mv = mixed_volume(a, b);
        EXPECT_EQ(2 * mv, brute_area2(minkowski_points(a.points, b.points)) - brute_area2(a.points) - brute_area2(b.points));
        EXPECT_EQ(mv, mixed_volume(b, a));
        EXPECT_EQ(mixed_volume(a.points, minkowski_points(b.points, b.points)), 2 * mv);
        EXPECT_EQ(mixed_volume(a, a), normalized_volume(a));
    }
}

TEST(Boundary, PerimeterCounts) {
    EXPECT_EQ(boundary_points(kSigma), 3);
    EXPECT_EQ(boundary_points(kTwoSigma), 6);
    EXPECT_EQ(boundary_points(Pts{{0, 0}, {3, 0}, {0, 3}}), 9);
}

TEST(Full, Examples) {
    EXPECT_TRUE(is_full({1, kTwoSigma}));
    EXPECT_FALSE(is_full({1, {{0, 0}, {2, 0}, {0, 2}}}));
    EXPECT_TRUE(is_full({1, kSquare}));
}

TEST(EdgeProfiles, SquaresShareAllNormals) {
    auto ps = edge_profiles({1, kSquare}, {2, kSquare});
    ASSERT_EQ(ps.size(), 4u);
    std::set<LatticePoint> normals;
    for (const auto& p : ps) {
        normals.insert(p.eta);
        EXPECT_EQ(p.mu1, 1);
        EXPECT_EQ(p.mu2, 1);
        EXPECT_EQ(p.mu, 1);
        EXPECT_TRUE(p.in_sigma_prime);
    }
    EXPECT_EQ(normals, (std::set<LatticePoint>{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}));
}

TEST(EdgeProfiles, ConicAndLine) {
    auto ps = edge_profiles({1, kTwoSigma}, {2, kSigma});
    ASSERT_EQ(ps.size(), 3u);
    std::set<LatticePoint> normals;
    for (const auto& p : ps) {
        normals.insert(p.eta);
        EXPECT_TRUE(p.in_sigma_prime);
        EXPECT_EQ(p.len1, 2);
        EXPECT_EQ(p.len2, 1);
    }
    EXPECT_EQ(normals, (std::set<LatticePoint>{{1, 0}, {0, 1}, {-1, -1}}));
}

TEST(EdgeProfiles, VertexOnlyTriangleGap) {
    auto ps = edge_profiles({1, {{0, 0}, {3, 0}, {0, 3}}}, {2, kSigma});
    bool seen = false;
    for (const auto& p : ps)
        if (p.eta == LatticePoint{1, 0}) {
            seen = true;
            EXPECT_EQ(p.mu1, 3);
            EXPECT_EQ(p.mu, 1);
        }
    EXPECT_TRUE(seen);
}

TEST(EdgeProfiles, RejectsSegments) {
    EXPECT_THROW(edge_profiles({1, {{0, 0}, {1, 0}}}, {2, kSigma}), GeometryError);
}

TEST(EdgeProfiles, Invariants) {
    auto as = random_configs(21, 80, 1), bs = random_configs(22, 80, 2);
    for (std::size_t k = 0; k < as.size(); ++k) {
        auto ps = edge_profiles(as[k], bs[k]);
        LatticePoint closure{0, 0};
        for (const auto& p : ps) {
            EXPECT_EQ(igcd(p.eta.x, p.eta.y), 1);
            EXPECT_EQ(p.mu, std::min(p.mu1, p.mu2));
            EXPECT_GE(p.mu, 1);
            EXPECT_EQ(p.in_sigma_prime, p.len1 >= 1 && p.len2 >= 1);
            if ((is_full(as[k]) && p.len1 >= 1) || (is_full(bs[k]) && p.len2 >= 1)) {
                EXPECT_EQ(p.mu, 1);
            }
            // the edge of Q1 + Q2 has lattice length l1 + l2; rotate eta back to its edge vector
            std::int64_t len = p.len1 + p.len2;
            closure = closure + LatticePoint{p.eta.y * len, -p.eta.x * len};
        }
        EXPECT_EQ(closure, (LatticePoint{0, 0}));
    }
}

TEST(LatticeIndex, Examples) {
    EXPECT_EQ(lattice_index({{1, kSigma}, {2, kSigma}}), 1);
    EXPECT_EQ(lattice_index({{1, {{0, 0}, {2, 0}, {0, 2}}}, {2, {{0, 0}, {2, 0}, {0, 2}}}}), 4);
    EXPECT_EQ(lattice_index({{1, {{0, 0}, {2, 0}}}, {2, {{0, 0}, {0, 3}}}}), 6);
    EXPECT_THROW(lattice_index({{1, {{0, 0}, {2, 0}}}, {2, {{1, 0}, {3, 0}}}}), GeometryError);
}

TEST(MixedMultiplicity, Examples) {
    EXPECT_EQ(mixed_multiplicity({0, 0}, {1, kTwoSigma}, {2, kSigma}, 1), 0);
    SupportConfig a1(1, kSigma), a2(2, {{0, 0}, {2, 1}, {1, 2}});
    std::int64_t expected = mixed_volume(a1, a2) - mixed_volume(Pts{{2, 1}, {1, 2}}, a1.points);
    EXPECT_EQ(mixed_multiplicity({0, 0}, a1, a2, 2), expected);
    EXPECT_THROW(mixed_multiplicity({1, 1}, {1, kTwoSigma}, {2, kSigma}, 1), GeometryError);
}

TEST(MixedMultiplicity, NonnegativeAndZeroOnDenseSameFan) {
    auto as = random_configs(31, 60, 1), bs = random_configs(32, 60, 2);
    for (std::size_t k = 0; k < as.size(); ++k)
        for (int i : {1, 2})
            for (const auto& v : convex_hull((i == 1 ? as[k] : bs[k]).points)) EXPECT_GE(mixed_multiplicity(v, as[k], bs[k], i), 0);
    for (std::int64_t d1 = 1; d1 <= 3; ++d1)
        for (std::int64_t d2 = 1; d2 <= 3; ++d2) {
            SupportConfig a1(1, dilate_simplex(d1)), a2(2, dilate_simplex(d2));
            for (int i : {1, 2})
                for (const auto& v : convex_hull((i == 1 ? a1 : a2).points)) EXPECT_EQ(mixed_multiplicity(v, a1, a2, i), 0);
        }
}

TEST(Essential, Examples) {
    EXPECT_TRUE(is_essential({{1, kSigma}, {2, kSigma}, {3, kSigma}}));
    EXPECT_FALSE(is_essential({{1, {{0, 0}}}, {2, kSigma}, {3, kSigma}}));
    std::vector<SupportConfig> fam{{1, {{0, 0}, {1, 0}}}, {2, {{0, 0}, {2, 0}}}, {3, kSigma}};
    EXPECT_FALSE(is_essential(fam));
    auto ess = essential_subfamilies(fam);
    ASSERT_EQ(ess.size(), 1u);
    EXPECT_EQ(ess[0], 3u);
}

TEST(Cayley, TwoSimplices) {
    CayleyData cd = cayley_matrix({{1, kSigma}, {2, kSigma}});
    ASSERT_EQ(cd.matrix.size(), 4u);
    ASSERT_EQ(cd.matrix[0].size(), 6u);
    EXPECT_EQ(cd.matrix[0], (std::vector<std::int64_t>{1, 1, 1, 0, 0, 0}));
    EXPECT_EQ(cd.matrix[1], (std::vector<std::int64_t>{0, 0, 0, 1, 1, 1}));
    EXPECT_EQ(cd.index, 1);
    EXPECT_EQ(cd.phi_support.size(), 6u);
}

TEST(Cayley, SinglePoint) {
    CayleyData cd = cayley_matrix({{1, {{0, 0}}}});
    EXPECT_EQ(cd.matrix, (std::vector<std::vector<std::int64_t>>{{1}, {0}}));
}

TEST(Cayley, IndexAgreesWithLatticeIndex) {
    std::vector<std::vector<SupportConfig>> fams{
        {{1, kSigma}, {2, kSigma}},
        {{1, {{0, 0}, {2, 0}, {0, 2}}}, {2, {{0, 0}, {2, 0}, {0, 2}}}},
        {{1, {{0, 0}, {2, 0}}}, {2, {{0, 0}, {0, 3}}}},
        {{1, kSquare}, {2, {{0, 0}, {2, 1}, {1, 2}}}},
    };
    for (const auto& f : fams) EXPECT_EQ(cayley_matrix(f).index, lattice_index(f));
}
