#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "gicar/diagram.hpp"

using namespace gicar;

namespace {

/// 0/1 matrix semantics for rectangular diagrams: entry (u, s) = 1 iff the
/// diagram joins lower s to upper u.  Composition of diagrams must match the
/// boolean matrix product (contraction of middle nodes).
std::vector<std::vector<int>> as_matrix(const RectDiagram& d) {
    std::vector<std::vector<int>> m(d.upper, std::vector<int>(d.lower, 0));
    for (auto& [s, u] : d.through) m[u - 1][s - 1] = 1;
    return m;
}

std::vector<std::vector<int>> matmul(const std::vector<std::vector<int>>& a,
                                     const std::vector<std::vector<int>>& b, std::size_t bcols) {
    std::vector<std::vector<int>> c(a.size(), std::vector<int>(bcols, 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k)
            if (a[i][k])
                for (std::size_t j = 0; j < bcols; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

std::mt19937 rng(2024);

RectDiagram random_rect(int m, int n) {
    auto all = enumerate_rect(m, n);
    return all[rng() % all.size()];
}

AnnDiagram random_ann(int m, int n) {
    auto all = enumerate_ann(m, n);
    return all[rng() % all.size()];
}

}  // namespace

TEST_CASE("rook monoid worked product") {
    // f = {2->1, 3->3}, g = {1->2}; g then f = {1->1}
    RectDiagram f(3, 3, {{2, 1}, {3, 3}});
    RectDiagram g(3, 3, {{1, 2}});
    RectDiagram expected(3, 3, {{1, 1}});
    CHECK(compose(g, f) == expected);
}

TEST_CASE("identity is neutral for rectangular composition") {
    for (int m = 0; m <= 4; ++m)
        for (int n = 0; n <= 4; ++n)
            for (const auto& d : enumerate_rect(m, n)) {
                CHECK(compose(RectDiagram::identity(m), d) == d);
                CHECK(compose(d, RectDiagram::identity(n)) == d);
            }
}

TEST_CASE("rectangular composition matches the matrix-contraction oracle") {
    for (int trial = 0; trial < 300; ++trial) {
        int m = rng() % 6, n = rng() % 6, p = rng() % 6;
        RectDiagram f = random_rect(m, n), g = random_rect(n, p);
        auto prod = matmul(as_matrix(g), as_matrix(f), static_cast<std::size_t>(m));
        CHECK(as_matrix(compose(f, g)) == prod);
    }
}

TEST_CASE("annular rotation powers compose to the identity") {
    for (int n = 1; n <= 6; ++n) {
        AnnDiagram r = AnnDiagram::rotation(n);
        AnnDiagram acc = AnnDiagram::identity(n);
        for (int j = 0; j < n; ++j) acc = compose(acc, r);
        CHECK(acc == AnnDiagram::identity(n));
        CHECK(compose(r, AnnDiagram::rotation(n, n - 1)) == AnnDiagram::identity(n));
    }
}

TEST_CASE("composing a t=0 tangle with its adjoint gives the empty matching") {
    AnnDiagram f(2, 3, {}, {}, 0);
    CHECK(compose(f, adjoint(f)) == AnnDiagram(2, 2, {}, {}, 0));
}

TEST_CASE("annular composition is associative (exhaustive small sizes)") {
    std::size_t checked = 0;
    for (int m = 0; m <= 3; ++m)
        for (int n = 0; n <= 3; ++n)
            for (int p = 0; p <= 3; ++p)
                for (int q = 0; q <= 3; ++q)
                    for (const auto& f : enumerate_ann(m, n))
                        for (const auto& g : enumerate_ann(n, p))
                            for (const auto& h : enumerate_ann(p, q)) {
                                if (!(compose(compose(f, g), h) == compose(f, compose(g, h))))
                                    FAIL("associativity broken at " << f.str() << " ; " << g.str()
                                                                    << " ; " << h.str());
                                ++checked;
                            }
    CHECK(checked > 100000);
}

TEST_CASE("annular composition is associative (random larger sizes)") {
    for (int trial = 0; trial < 400; ++trial) {
        int m = rng() % 6, n = rng() % 6, p = rng() % 6, q = rng() % 6;
        AnnDiagram f = random_ann(m, n), g = random_ann(n, p), h = random_ann(p, q);
        CHECK(compose(compose(f, g), h) == compose(f, compose(g, h)));
    }
}

TEST_CASE("adjoint is an involutive anti-homomorphism") {
    for (int m = 0; m <= 3; ++m)
        for (int n = 0; n <= 4; ++n)
            for (const auto& d : enumerate_ann(m, n)) CHECK(adjoint(adjoint(d)) == d);
    for (int trial = 0; trial < 300; ++trial) {
        int m = rng() % 5, n = rng() % 5, p = rng() % 5;
        AnnDiagram f = random_ann(m, n), g = random_ann(n, p);
        CHECK(adjoint(compose(f, g)) == compose(adjoint(g), adjoint(f)));
    }
    CHECK(adjoint(AnnDiagram::identity(3)) == AnnDiagram::identity(3));
}

TEST_CASE("rectangular diagrams embed in annular diagrams compatibly") {
    for (int m = 0; m <= 4; ++m)
        for (const auto& d : enumerate_rect(m, 4)) CHECK(rect_from_ann(ann_embed(d)) == d);
    // exhaustive compatibility with composition and adjoints at sizes <= 4
    std::size_t checked = 0;
    for (int m = 0; m <= 4; ++m)
        for (int n = 0; n <= 4; ++n)
            for (int p = 0; p <= 4; ++p)
                for (const auto& f : enumerate_rect(m, n)) {
                    if (p == 0 && !(ann_embed(adjoint(f)) == adjoint(ann_embed(f))))
                        FAIL("adjoint embedding broken at " << f.str());
                    for (const auto& g : enumerate_rect(n, p)) {
                        if (!(ann_embed(compose(f, g)) == compose(ann_embed(f), ann_embed(g))))
                            FAIL("embedding not compatible at " << f.str() << " ; " << g.str());
                        ++checked;
                    }
                }
    CHECK(checked > 20000);
}

TEST_CASE("tensor of rectangular diagrams") {
    RectDiagram id1 = RectDiagram::identity(1);
    CHECK(tensor(id1, id1) == RectDiagram::identity(2));
    RectDiagram cap(1, 0, {});
    RectDiagram cup(0, 1, {});
    CHECK(tensor(cap, cup) == RectDiagram(1, 1, {}));
}

TEST_CASE("tensor-compose interchange law") {
    for (int trial = 0; trial < 200; ++trial) {
        int m1 = rng() % 4, n1 = rng() % 4, p1 = rng() % 4;
        int m2 = rng() % 4, n2 = rng() % 4, p2 = rng() % 4;
        RectDiagram f1 = random_rect(m1, n1), g1 = random_rect(n1, p1);
        RectDiagram f2 = random_rect(m2, n2), g2 = random_rect(n2, p2);
        CHECK(compose(tensor(f1, f2), tensor(g1, g2)) == tensor(compose(f1, g1), compose(f2, g2)));
    }
}

TEST_CASE("dotted strand expands to identity minus broken") {
    DecoratedRect dotted(RectDiagram::identity(1), {1});
    LinComb<RectDiagram> expect(RectDiagram::identity(1));
    expect.add_term(RectDiagram(1, 1, {}), CycScalar(-1));
    CHECK(expand_decorated(dotted) == expect);

    DecoratedRect plain(RectDiagram(2, 3, {{1, 2}, {2, 3}}));
    CHECK(expand_decorated(plain) == LinComb<RectDiagram>(plain.base));

    DecoratedRect dotted2(RectDiagram::identity(2), {1, 2});
    CHECK(expand_decorated(dotted2).size() == 4);
    // idempotent under composition
    auto e = expand_decorated(dotted2);
    CHECK(compose_lin_plain(e, e) == e);
}

TEST_CASE("decorated composition agrees with expansion (rectangular)") {
    for (int trial = 0; trial < 400; ++trial) {
        int m = rng() % 4, n = rng() % 4, p = rng() % 4;
        RectDiagram f = random_rect(m, n), g = random_rect(n, p);
        std::vector<int> fd, gd;
        for (auto& [s, u] : f.through)
            if (rng() % 2) fd.push_back(s);
        for (auto& [s, u] : g.through)
            if (rng() % 2) gd.push_back(s);
        DecoratedRect df(f, fd), dg(g, gd);
        auto via_expansion = compose_lin_plain(expand_decorated(df), expand_decorated(dg));
        auto direct = compose_decorated(df, dg);
        LinComb<RectDiagram> via_decorated;
        if (direct) via_decorated = expand_decorated(*direct);
        CHECK(via_expansion == via_decorated);
    }
}

TEST_CASE("decorated composition agrees with expansion (annular)") {
    for (int trial = 0; trial < 400; ++trial) {
        int m = rng() % 4, n = rng() % 4, p = rng() % 4;
        AnnDiagram f = random_ann(m, n), g = random_ann(n, p);
        std::vector<int> fd, gd;
        for (int s : f.dom)
            if (rng() % 2) fd.push_back(s);
        for (int s : g.dom)
            if (rng() % 2) gd.push_back(s);
        DecoratedAnn df(f, fd), dg(g, gd);
        auto via_expansion = bilinear(expand_decorated(df), expand_decorated(dg),
                                      [](const AnnDiagram& x, const AnnDiagram& y) {
                                          return LinComb<AnnDiagram>(compose(x, y));
                                      });
        auto direct = compose_decorated(df, dg);
        LinComb<AnnDiagram> via_decorated;
        if (direct) via_decorated = expand_decorated(*direct);
        CHECK(via_expansion == via_decorated);
    }
}

TEST_CASE("dotted-strand relations") {
    // RP2: a dotted strand composed with itself is itself
    DecoratedRect dot(RectDiagram::identity(1), {1});
    auto c = compose_decorated(dot, dot);
    REQUIRE(c.has_value());
    CHECK(*c == dot);
    // RP3: dotted strand against a broken strand vanishes
    DecoratedRect broken(RectDiagram(1, 1, {}));
    CHECK(!compose_decorated(dot, DecoratedRect(RectDiagram(1, 0, {}))).has_value());
    auto via_lin = compose_lin_plain(expand_decorated(dot), expand_decorated(broken));
    CHECK(via_lin.is_zero());
}

TEST_CASE("counting formulas match enumeration") {
    CHECK(count_ann(2, 2, 1) == 4);
    CHECK(enumerate_ann(2, 2, 1).size() == 4);
    CHECK(enumerate_rect(2, 2).size() == 6);  // the P_2 list
    CHECK(count_ann(0, 7) == 1);
    CHECK(count_ann(3, 3) == 31);
    CHECK(enumerate_ann(3, 3).size() == 31);
    for (int m = 0; m <= 6; ++m)
        for (int n = 0; n <= 6; ++n) {
            CHECK(Int(enumerate_ann(m, n).size()) == count_ann(m, n));
            for (int k = 0; k <= std::min(m, n); ++k) {
                CHECK(Int(enumerate_ann(m, n, k).size()) == count_ann(m, n, k));
                CHECK(count_ann(m, n, k) == count_ann(n, m, k));
            }
        }
}

TEST_CASE("binomial identity behind the annular dimension count") {
    for (int n = 1; n <= 12; ++n)
        for (int k = 1; k <= n; ++k)
            CHECK(Int(n) * binom(n, k) * binom(n - 1, k - 1) == Int(k) * binom(n, k) * binom(n, k));
}

TEST_CASE("rectangular dimension is the central binomial sum") {
    for (int n = 0; n <= 8; ++n) {
        Int expect = 0;
        for (int k = 0; k <= n; ++k) expect += binom(n, k) * binom(n, k);
        CHECK(Int(enumerate_rect(n, n).size()) == expect);
    }
}

TEST_CASE("boundary mismatches are rejected") {
    CHECK_THROWS(compose(RectDiagram::identity(2), RectDiagram::identity(3)));
    CHECK_THROWS(compose(AnnDiagram::identity(2), AnnDiagram::identity(3)));
    CHECK_THROWS(RectDiagram(2, 2, {{1, 1}, {1, 2}}));       // not injective
    CHECK_THROWS(RectDiagram(2, 2, {{1, 2}, {2, 1}}));       // not order-preserving
    CHECK_THROWS(AnnDiagram(2, 2, {1, 2}, {1, 2}, 2));       // offset out of range
    CHECK_THROWS(AnnDiagram::from_pairs(3, 3, {{1, 1}, {2, 3}, {3, 2}}));  // not cyclic
    CHECK_THROWS(Decorated<RectDiagram>(RectDiagram(1, 1, {}), {1}));      // dot on a cap
}
