#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "gicar/json_io.hpp"

using namespace gicar;

TEST_CASE("scalar serialization round trip") {
    std::mt19937 rng(13);
    for (unsigned ord : {1u, 3u, 4u, 6u}) {
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<Rat> c(ord);
            for (auto& x : c) x = rat(static_cast<long>(rng() % 9) - 4, 1 + rng() % 5);
            CycScalar s = CycScalar::from_coeffs(ord, c);
            json j = to_json(s);
            CHECK(j.at("num").size() == ord);
            CHECK(scalar_from_json(j) == s);
        }
    }
    json half = to_json(CycScalar(rat(1, 2)));
    CHECK(half.at("num")[0] == "1");
    CHECK(half.at("den")[0] == "2");
}

TEST_CASE("diagram serialization round trip") {
    std::mt19937 rng(14);
    for (int trial = 0; trial < 60; ++trial) {
        auto rects = enumerate_rect(rng() % 4, rng() % 4);
        RectDiagram r = rects[rng() % rects.size()];
        CHECK(rect_from_json(to_json(r)) == r);
        auto anns = enumerate_ann(1 + rng() % 4, 1 + rng() % 4);
        AnnDiagram a = anns[rng() % anns.size()];
        CHECK(ann_from_json(to_json(a)) == a);
    }
    // rect diagrams embed when read as annular
    RectDiagram r(2, 2, {{1, 2}});
    CHECK(ann_from_json(to_json(r)) == ann_embed(r));
    // a lying offset field is rejected
    json bad = to_json(AnnDiagram::rotation(3));
    bad["offset"] = 2;
    CHECK_THROWS(ann_from_json(bad));
}

TEST_CASE("matrix and standard word round trips") {
    ExactMatrix m(2, 3, 4);
    m.at(0, 0) = CycScalar::zeta(4);
    m.at(1, 2) = CycScalar(rat(-7, 3)).embedded(4);
    CHECK(matrix_from_json(to_json(m)) == m);

    StandardWord w(4, {2, 4}, 1, {1, 3});
    CHECK(standard_word_from_json(to_json(w)) == w);
}

TEST_CASE("sequence module bundle round trip") {
    SequenceModule v = irr_matrices({true, 2, 1}, 4);
    json j = to_json(v);
    SequenceModule back = module_from_json(j);
    CHECK(back.dims == v.dims);
    CHECK(validate_module(back).empty());
    Decomposition d = decompose(back);
    REQUIRE(d.pieces.size() == 1);
    CHECK(d.pieces[0].spec == IrrModuleSpec{true, 2, 1});
}

TEST_CASE("decorated diagram round trip") {
    DecoratedRect d(RectDiagram(3, 3, {{1, 1}, {3, 2}}), {1, 3});
    CHECK(decorated_rect_from_json(to_json(d)) == d);
    DecoratedAnn a(AnnDiagram(3, 4, {1, 3}, {2, 4}, 1), {3});
    CHECK(decorated_ann_from_json(to_json(a)) == a);
    // dots on non-through strands are rejected
    json bad = to_json(d);
    bad["dotted"] = std::vector<int>{2};
    CHECK_THROWS(decorated_rect_from_json(bad));
}
