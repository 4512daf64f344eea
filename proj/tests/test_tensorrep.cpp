#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "gicar/tensorrep.hpp"

using namespace gicar;

namespace {

std::mt19937 rng(31337);

ExactMatrix kron(const ExactMatrix& a, const ExactMatrix& b) {
    ExactMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a.at(i, j).is_zero()) continue;
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q)
                    out.at(i * b.rows() + p, j * b.cols() + q) = a.at(i, j) * b.at(p, q);
        }
    return out;
}

std::vector<StandardWord> rect_words(int m, int n) {
    std::vector<StandardWord> out;
    for (const auto& sw : enumerate_standard(m, n))
        if (sw.rectangular()) out.push_back(sw);
    return out;
}

}  // namespace

TEST_CASE("creation inserts the distinguished vector") {
    ToyContext ctx{2};
    ExactMatrix c = toy_create(ctx, 1, 0);
    REQUIRE(c.rows() == 3);
    CHECK(c.at(0, 0) == CycScalar(1));  // vacuum level -> zeta
    CHECK(c.at(1, 0).is_zero());
}

TEST_CASE("annihilation kills the orthogonal complement") {
    ToyContext ctx{2};
    for (int m = 1; m <= 3; ++m)
        for (int i = 1; i <= m; ++i) {
            ExactMatrix a = toy_annihilate(ctx, i, m);
            for (std::size_t col = 0; col < ctx.level_dim(m); ++col) {
                auto t = ctx.index_tuple(col, m);
                bool zeta_slot = t[i - 1] == 0;
                bool anycol = false;
                for (std::size_t r = 0; r < a.rows(); ++r) anycol = anycol || !a.at(r, col).is_zero();
                CHECK(anycol == zeta_slot);
            }
        }
}

TEST_CASE("creation and annihilation are adjoint in the product basis") {
    for (int d : {1, 2}) {
        ToyContext ctx{d};
        for (int m = 0; m <= 3; ++m)
            for (int i = 1; i <= m + 1; ++i) {
                ExactMatrix c = toy_create(ctx, i, m);
                ExactMatrix a = toy_annihilate(ctx, i, m + 1);
                CHECK(c.conj_transpose() == a);
            }
    }
}

TEST_CASE("defining relations of the tensor representation") {
    for (int d : {1, 2}) {
        ToyContext ctx{d};
        for (int m = 0; m <= 3; ++m) {
            // a_i a_{j-1} = a_j a_i for i < j
            for (int i = 1; i <= m + 2; ++i)
                for (int j = i + 1; j <= m + 2; ++j) {
                    if (j - 1 > m + 1) continue;
                    CHECK(toy_create(ctx, i, m + 1) * toy_create(ctx, j - 1, m) ==
                          toy_create(ctx, j, m + 1) * toy_create(ctx, i, m));
                }
            // a*_i a_j cancellation cases
            for (int i = 1; i <= m + 1; ++i)
                for (int j = 1; j <= m + 1; ++j) {
                    ExactMatrix lhs = toy_annihilate(ctx, i, m + 1) * toy_create(ctx, j, m);
                    if (i == j) CHECK(lhs == ExactMatrix::identity(ctx.level_dim(m)));
                    else if (m >= 1 && i < j)
                        CHECK(lhs == toy_create(ctx, j - 1, m - 1) * toy_annihilate(ctx, i, m));
                    else if (m >= 1)
                        CHECK(lhs == toy_create(ctx, j, m - 1) * toy_annihilate(ctx, i - 1, m));
                    else CHECK(lhs.is_zero());
                }
            // a_i a*_i = 1 x (e_zeta) x 1
            for (int i = 1; i <= m; ++i) {
                ExactMatrix e1(ctx.hdim(), ctx.hdim());
                e1.at(0, 0) = CycScalar(1);
                ExactMatrix expect = ExactMatrix::identity(1);
                for (int s = 1; s <= m; ++s)
                    expect = kron(expect, s == i ? e1 : ExactMatrix::identity(ctx.hdim()));
                CHECK(odd_jones(ctx, i, m) == expect);
            }
        }
    }
}

TEST_CASE("odd Jones projections and their equivalences") {
    ToyContext ctx{2};
    ExactMatrix e1 = odd_jones(ctx, 1, 1);
    CHECK(e1.trace() == CycScalar(1));
    CHECK(e1 * e1 == e1);
    CHECK(e1.conj_transpose() == e1);
    for (int m = 2; m <= 3; ++m)
        for (int i = 1; i <= m; ++i)
            for (int j = 1; j <= m; ++j) {
                if (i == j) continue;
                // (a_i a*_j)(a_j a*_i) = e_{2i-1}
                ExactMatrix v = toy_create(ctx, i, m - 1) * toy_annihilate(ctx, j, m);
                ExactMatrix w = toy_create(ctx, j, m - 1) * toy_annihilate(ctx, i, m);
                CHECK(v * w == odd_jones(ctx, i, m));
                CHECK(w * v == odd_jones(ctx, j, m));
                CHECK(!(odd_jones(ctx, i, m) == odd_jones(ctx, j, m)));
            }
}

TEST_CASE("all-broken minimal projection represents as the zeta projector") {
    ToyContext ctx{2};
    RectComb p = minimal_projection(parse_pattern("bb"));
    ExactMatrix rep = represent(ctx, p, 2);
    ExactMatrix e1(3, 3);
    e1.at(0, 0) = CycScalar(1);
    CHECK(rep == kron(e1, e1));
}

TEST_CASE("traces of minimal projections count the complement dimension") {
    for (int d : {1, 2, 3}) {
        ToyContext ctx{d};
        for (int n = 1; n <= 4; ++n)
            for (int j = 0; j <= n; ++j) {
                Subset dots;
                for (int x = 1; x <= j; ++x) dots.push_back(x + (n - j) / 2);
                RectComb p = minimal_projection(pattern_from_dots(n, dots));
                Int expect;
                mpz_ui_pow_ui(expect.get_mpz_t(), static_cast<unsigned long>(d),
                              static_cast<unsigned long>(j));
                CHECK(represent(ctx, p, n).trace() == CycScalar(Rat(expect)));
            }
    }
}

TEST_CASE("representation is functorial and star-compatible") {
    ToyContext ctx{2};
    for (int trial = 0; trial < 50; ++trial) {
        int m = rng() % 4, n = rng() % 4;
        auto ws = enumerate_standard(m, n);
        const StandardWord& w = ws[rng() % ws.size()];
        CHECK(represent(ctx, adjoint(w.as_word())) == represent(ctx, w).conj_transpose());
        auto vs = enumerate_standard(n, rng() % 4);
        const StandardWord& v = vs[rng() % vs.size()];
        CHECK(represent(ctx, compose_words(w.as_word(), v.as_word())) ==
              represent(ctx, v) * represent(ctx, w));
    }
}

TEST_CASE("rotation relations hold for the cyclic shift") {
    for (int d : {1, 2}) {
        ToyContext ctx{d};
        for (int m = 0; m <= 4; ++m) {
            ExactMatrix r = toy_rotation(ctx, m);
            ExactMatrix pw = ExactMatrix::identity(ctx.level_dim(m));
            for (int x = 0; x < m; ++x) pw = pw * r;
            if (m >= 1) CHECK(pw == ExactMatrix::identity(ctx.level_dim(m)));
            CHECK(r * r.conj_transpose() == ExactMatrix::identity(ctx.level_dim(m)));
            // a_i tau = tau a_{i-1}
            for (int i = 2; i <= m + 1; ++i)
                CHECK(toy_create(ctx, i, m) * r == toy_rotation(ctx, m + 1) * toy_create(ctx, i - 1, m));
            for (int i = 2; i <= m; ++i)
                CHECK(toy_annihilate(ctx, i, m) * r ==
                      toy_rotation(ctx, m - 1) * toy_annihilate(ctx, i - 1, m));
        }
    }
}

TEST_CASE("tensor words represent as Kronecker products") {
    ToyContext ctx{2};
    for (int trial = 0; trial < 40; ++trial) {
        int m1 = rng() % 3, n1 = rng() % 3, m2 = rng() % 3, n2 = rng() % 3;
        auto w1s = rect_words(m1, n1), w2s = rect_words(m2, n2);
        const StandardWord& w1 = w1s[rng() % w1s.size()];
        const StandardWord& w2 = w2s[rng() % w2s.size()];
        CHECK(represent(ctx, tensor_words(w1, w2)) == kron(represent(ctx, w1), represent(ctx, w2)));
    }
}

TEST_CASE("separating vectors evaluate to one with the prescribed vanishing") {
    ToyContext ctx{1};
    // identity at level n: both witnesses are pure kappa tuples
    SeparatingWitness idw = separating_test(ctx, StandardWord::identity(3));
    CHECK(idw.value == CycScalar(1));
    CHECK(idw.xi == std::vector<int>{1, 1, 1});
    CHECK(idw.vanishing_ok);
    // the worked small case a_1 a*_2 at level 2
    StandardWord x(2, {2}, 0, {1});
    SeparatingWitness w = separating_test(ctx, x);
    CHECK(w.value == CycScalar(1));
    CHECK(w.xi == std::vector<int>{1, 0});
    CHECK(w.eta == std::vector<int>{0, 1});
    CHECK(w.vanishing_ok);
    ToyContext ctx2{2};
    for (int m = 0; m <= 3; ++m)
        for (const auto& sw : rect_words(m, 2)) {
            SeparatingWitness sval = separating_test(ctx2, sw);
            CHECK(sval.value == CycScalar(1));
            CHECK(sval.vanishing_ok);
        }
    CHECK_THROWS(separating_test(ToyContext{0}, StandardWord::identity(1)));
}

TEST_CASE("standard words act linearly independently") {
    for (int d : {1, 2}) {
        ToyContext ctx{d};
        for (int m = 0; m <= 3; ++m)
            for (int n = 0; n <= 3; ++n) {
                auto words = rect_words(m, n);
                // evaluation matrix: words x witness pairs
                ExactMatrix eval(words.size(), words.size());
                for (std::size_t r = 0; r < words.size(); ++r) {
                    SeparatingWitness wit = separating_test(ctx, words[r]);
                    for (std::size_t c = 0; c < words.size(); ++c) {
                        ExactMatrix rep = represent(ctx, words[c]);
                        eval.at(r, c) = rep.at(ctx.tuple_index(wit.eta), ctx.tuple_index(wit.xi));
                    }
                }
                CHECK(eval.rank() == words.size());
            }
    }
}

TEST_CASE("toy towers decompose with binomial and necklace multiplicities") {
    // d = 0: everything collapses onto the zeta line
    DegeneracyReport r0 = annular_degeneracy_report(ToyContext{0}, 3, false);
    REQUIRE(r0.multiplicities.size() == 1);
    CHECK(r0.multiplicities[0].spec.k == 0);
    CHECK(r0.multiplicities[0].multiplicity == 1);
    CHECK(r0.dims_consistent);

    // d = 1 rectangular: multiplicity one in every weight
    DegeneracyReport r1 = annular_degeneracy_report(ToyContext{1}, 4, false);
    CHECK(r1.dims_consistent);
    REQUIRE(r1.multiplicities.size() == 5);
    for (const auto& p : r1.multiplicities) CHECK(p.multiplicity == 1);

    // d = 2 annular: weight-2 multiplicities split 3 / 1 by eigenvalue
    DegeneracyReport r2 = annular_degeneracy_report(ToyContext{2}, 3, true);
    CHECK(r2.dims_consistent);
    CHECK(r2.necklace_match);
    std::map<std::pair<int, int>, std::size_t> table;
    for (const auto& p : r2.multiplicities) table[{p.spec.k, p.spec.omega_index}] = p.multiplicity;
    CHECK(table[{2, 0}] == 3);
    CHECK(table[{2, 1}] == 1);
    // rectangular multiplicities are the powers of d
    DegeneracyReport r3 = annular_degeneracy_report(ToyContext{2}, 3, false);
    for (const auto& p : r3.multiplicities) {
        Int expect;
        mpz_ui_pow_ui(expect.get_mpz_t(), 2, static_cast<unsigned long>(p.spec.k));
        CHECK(Int(p.multiplicity) == expect);
    }
}

TEST_CASE("necklace counts") {
    CHECK(necklace_count(2, 2, 0) == 3);
    CHECK(necklace_count(2, 2, 1) == 1);
    CHECK(necklace_count(3, 4, 0) == 24);
    Int total = 0;
    for (int r = 0; r < 4; ++r) total += necklace_count(3, 4, r);
    CHECK(total == 81);
}

TEST_CASE("toy module kernel at weight one is the complement") {
    for (int d : {1, 2, 3}) {
        ToyContext ctx{d};
        SequenceModule M = toy_sequence_module(ctx, 2, false);
        LowestWeightSpace lw = lowest_weight_space(M, 1);
        CHECK(lw.basis.cols() == static_cast<std::size_t>(d));
    }
}
