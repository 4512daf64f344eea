#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "gicar/cmodule.hpp"

using namespace gicar;

namespace {

std::mt19937 rng(777);

/// Exact orthogonal matrix: a product of Givens rotations with the
/// rational cosine/sine pair (3/5, 4/5).
ExactMatrix rational_orthogonal(std::size_t dim, unsigned order, int twists) {
    ExactMatrix q = ExactMatrix::identity(dim, order);
    for (int t = 0; t < twists && dim >= 2; ++t) {
        std::size_t a = rng() % dim, b = rng() % dim;
        if (a == b) continue;
        ExactMatrix g = ExactMatrix::identity(dim, order);
        CycScalar c = CycScalar(rat(3, 5)).embedded(order), s = CycScalar(rat(4, 5)).embedded(order);
        g.at(a, a) = c;
        g.at(b, b) = c;
        g.at(a, b) = -s;
        g.at(b, a) = s;
        q = q * g;
    }
    return q;
}

std::vector<ExactMatrix> random_basis_change(const SequenceModule& M, int twists = 4) {
    std::vector<ExactMatrix> q;
    for (int m = 0; m <= M.mmax; ++m) q.push_back(rational_orthogonal(M.dims[m], M.order, twists));
    return q;
}

}  // namespace

TEST_CASE("dimensions of the irreducible modules") {
    SequenceModule v2 = irr_matrices({true, 2, 1}, 4);
    CHECK(v2.dims == std::vector<std::size_t>{0, 0, 1, 3, 6});
    for (int k = 0; k <= 3; ++k) {
        SequenceModule v = irr_matrices({false, k, 0}, 6);
        for (int m = 0; m <= 6; ++m) CHECK(Int(v.dims[m]) == (m >= k ? binom(m, k) : 0));
    }
}

TEST_CASE("weight-zero rectangular module is the trivial line tower") {
    SequenceModule v0 = irr_matrices({false, 0, 0}, 5);
    for (int m = 0; m <= 5; ++m) CHECK(v0.dims[m] == 1);
    for (int m = 1; m <= 5; ++m)
        for (int i = 1; i <= m; ++i) CHECK(!v0.annihilate[m][i - 1].is_zero());
    CHECK(validate_module(v0).empty());
}

TEST_CASE("irreducible modules satisfy all module relations exactly") {
    for (int k = 0; k <= 3; ++k) {
        CHECK(validate_module(irr_matrices({false, k, 0}, 6)).empty());
        for (int r = 0; r < std::max(k, 1); ++r)
            CHECK(validate_module(irr_matrices({true, k, r}, 6)).empty());
    }
}

TEST_CASE("lowest weight space of an irreducible is its lowest level") {
    SequenceModule v = irr_matrices({true, 3, 2}, 5);
    LowestWeightSpace lw = lowest_weight_space(v, 3);
    CHECK(lw.basis.cols() == 1);
    REQUIRE(lw.eigenspaces.size() == 3);
    CHECK(lw.eigenspaces[2].cols() == 1);
    CHECK(lw.eigenspaces[0].cols() == 0);
    CHECK(lw.eigenspaces[1].cols() == 0);
    // nothing uncappable above the weight
    CHECK(lowest_weight_space(v, 4).basis.cols() == 0);
    CHECK(lowest_weight_space(v, 5).basis.cols() == 0);
}

TEST_CASE("decompose returns an irreducible unchanged") {
    for (int k = 0; k <= 2; ++k)
        for (int r = 0; r < std::max(k, 1); ++r) {
            Decomposition d = decompose(irr_matrices({true, k, r}, 4));
            REQUIRE(d.pieces.size() == 1);
            CHECK(d.pieces[0].spec == IrrModuleSpec{true, k, r});
            CHECK(d.pieces[0].multiplicity == 1);
            CHECK(d.dims_consistent);
        }
    Decomposition d = decompose(irr_matrices({false, 2, 0}, 4));
    REQUIRE(d.pieces.size() == 1);
    CHECK(d.pieces[0].spec == IrrModuleSpec{false, 2, 0});
}

TEST_CASE("only scalars commute with an irreducible module") {
    for (const IrrModuleSpec spec : {IrrModuleSpec{false, 1, 0}, IrrModuleSpec{true, 2, 1}}) {
        int mmax = 5;
        SequenceModule v = irr_matrices(spec, mmax);
        // unknowns: block-diagonal T_m; constraints: T g = g T for all generators
        std::vector<std::size_t> off;
        std::size_t total = 0;
        for (int m = 0; m <= mmax; ++m) {
            off.push_back(total);
            total += v.dims[m] * v.dims[m];
        }
        std::vector<std::vector<CycScalar>> rows;
        auto add_constraints = [&](const ExactMatrix& g, int src, int dst) {
            // T_dst g - g T_src = 0
            for (std::size_t r = 0; r < g.rows(); ++r)
                for (std::size_t c = 0; c < g.cols(); ++c) {
                    std::vector<CycScalar> row(total, CycScalar(Rat(0), v.order));
                    for (std::size_t x = 0; x < g.rows(); ++x)
                        row[off[dst] + r * g.rows() + x] += g.at(x, c);
                    for (std::size_t x = 0; x < g.cols(); ++x)
                        row[off[src] + x * g.cols() + c] -= g.at(r, x);
                    rows.push_back(std::move(row));
                }
        };
        for (int m = 0; m <= mmax; ++m) {
            if (m + 1 <= mmax)
                for (int i = 1; i <= m + 1; ++i) add_constraints(v.create[m][i - 1], m, m + 1);
            if (m >= 1)
                for (int i = 1; i <= m; ++i) add_constraints(v.annihilate[m][i - 1], m, m - 1);
            if (v.annular) add_constraints(v.rot[m], m, m);
        }
        ExactMatrix sys(rows.size(), total, v.order);
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t c = 0; c < total; ++c) sys.at(r, c) = rows[r][c];
        CHECK(sys.kernel().cols() == 1);
    }
}

TEST_CASE("decompose inverts scrambled direct sums") {
    for (int trial = 0; trial < 6; ++trial) {
        bool annular = trial % 2 == 0;
        int mmax = 4;
        unsigned order = annular ? 6 : 1;  // lcm of the periods k <= 3
        std::vector<SequenceModule> parts;
        std::map<IrrModuleSpec, std::size_t> expect;
        for (int k = 0; k <= 3; ++k)
            for (int r = 0; r < (annular ? std::max(k, 1) : 1); ++r) {
                std::size_t mult = rng() % 3;
                for (std::size_t c = 0; c < mult; ++c) {
                    SequenceModule part = irr_matrices({annular, k, r}, mmax);
                    // bring everything to the common scalar order
                    SequenceModule lifted = part;
                    lifted.order = order;
                    for (auto& g : lifted.gram) g = g.embedded(order);
                    for (auto& v : lifted.create)
                        for (auto& g : v) g = g.embedded(order);
                    for (auto& v : lifted.annihilate)
                        for (auto& g : v) g = g.embedded(order);
                    for (auto& g : lifted.rot) g = g.embedded(order);
                    parts.push_back(std::move(lifted));
                    expect[{annular, k, r}] += 1;
                }
            }
        if (parts.empty()) continue;
        SequenceModule sum = direct_sum(parts);
        SequenceModule scrambled = conjugate_levels(sum, random_basis_change(sum));
        REQUIRE(validate_module(scrambled).empty());
        Decomposition d = decompose(scrambled);
        CHECK(d.dims_consistent);
        std::map<IrrModuleSpec, std::size_t> got;
        for (const auto& p : d.pieces) got[p.spec] = p.multiplicity;
        CHECK(got == expect);
    }
}

TEST_CASE("explicit unitary intertwiner between isomorphic irreducibles") {
    IrrModuleSpec spec{true, 2, 1};
    int mmax = 4;
    SequenceModule a = irr_matrices(spec, mmax);
    SequenceModule b = conjugate_levels(a, random_basis_change(a));
    // send the lowest-weight unit vector of a to that of b and extend by
    // the creation monomials
    ExactMatrix xi_a = lowest_weight_space(a, spec.k).eigenspaces[spec.omega_index];
    ExactMatrix xi_b = lowest_weight_space(b, spec.k).eigenspaces[spec.omega_index];
    REQUIRE(xi_a.cols() == 1);
    REQUIRE(xi_b.cols() == 1);
    // normalize against the gram forms
    auto norm2 = [](const ExactMatrix& g, const ExactMatrix& v) {
        return (v.conj_transpose() * g * v).at(0, 0);
    };
    CycScalar na = norm2(a.gram[spec.k], xi_a), nb = norm2(b.gram[spec.k], xi_b);
    for (int m = spec.k; m <= mmax; ++m) {
        std::vector<ExactMatrix> cols_a, cols_b;
        subsets_of_size(m, m - spec.k, [&](const Subset& I) {
            ExactMatrix va = xi_a, vb = xi_b;
            int level = spec.k;
            for (int i : I) {
                va = a.create[level][i - 1] * va;
                vb = b.create[level][i - 1] * vb;
                ++level;
            }
            cols_a.push_back(va);
            cols_b.push_back(vb);
        });
        if (cols_a.empty()) continue;
        ExactMatrix A = ExactMatrix::hcat(cols_a), B = ExactMatrix::hcat(cols_b);
        // T_m A = B defines the intertwiner on level m
        ExactMatrix T = A.conj_transpose().solve(B.conj_transpose()).conj_transpose();
        // unitarity against the forms, up to the norm ratio (here both 1)
        CHECK(na == CycScalar(Rat(1), a.order));
        CHECK(nb == CycScalar(Rat(1), a.order));
        CHECK(T.conj_transpose() * b.gram[m] * T == a.gram[m]);
        // intertwines the annihilations too
        if (m > spec.k)
            for (int i = 1; i <= m; ++i) {
                ExactMatrix lhs = b.annihilate[m][i - 1] * T;
                // build T_{m-1} the same way and compare
                std::vector<ExactMatrix> pa, pb;
                subsets_of_size(m - 1, m - 1 - spec.k, [&](const Subset& I) {
                    ExactMatrix va = xi_a, vb = xi_b;
                    int level = spec.k;
                    for (int x : I) {
                        va = a.create[level][x - 1] * va;
                        vb = b.create[level][x - 1] * vb;
                        ++level;
                    }
                    pa.push_back(va);
                    pb.push_back(vb);
                });
                ExactMatrix A1 = ExactMatrix::hcat(pa), B1 = ExactMatrix::hcat(pb);
                ExactMatrix T1 = A1.conj_transpose().solve(B1.conj_transpose()).conj_transpose();
                CHECK(lhs == T1 * a.annihilate[m][i - 1]);
            }
    }
}

TEST_CASE("radical quotients recover the honest module") {
    // a copy of V^1 plus a null copy whose gram vanishes
    SequenceModule v = irr_matrices({false, 1, 0}, 3);
    SequenceModule null_copy = v;
    for (auto& g : null_copy.gram) g = ExactMatrix(g.rows(), g.cols(), v.order);
    SequenceModule deg = direct_sum({v, null_copy});
    REQUIRE(validate_module(deg).empty());
    SequenceModule q = quotient_by_radical(deg);
    CHECK(q.dims == v.dims);
    REQUIRE(validate_module(q).empty());
    Decomposition d = decompose(q);
    REQUIRE(d.pieces.size() == 1);
    CHECK(d.pieces[0].spec == IrrModuleSpec{false, 1, 0});
    CHECK(d.pieces[0].multiplicity == 1);
}

TEST_CASE("module construction preconditions") {
    CHECK_THROWS(irr_matrices({false, 2, 1}, 4));  // rectangular spec with an eigenvalue
    CHECK_THROWS(irr_matrices({true, 3, 3}, 4));   // omega index out of range
    CHECK_THROWS(irr_matrices({true, 2, 0}, 1));   // m_max below the weight
    // the eigen-split needs the level period to divide the scalar order
    SequenceModule bad = irr_matrices({true, 2, 1}, 3);
    bad.order = 3;
    CHECK_THROWS(lowest_weight_space(bad, 2));
}

#include "gicar/fock.hpp"

TEST_CASE("the diagrammatic Fock tower decomposes with multiplicity one per weight") {
    // levels are the cup-set spaces D_m with the category acting by
    // stacking diagrams; every weight appears exactly once
    int mmax = 4;
    SequenceModule M;
    M.annular = false;
    M.order = 1;
    M.mmax = mmax;
    for (int m = 0; m <= mmax; ++m) {
        auto basis = wedge_basis(m);
        M.dims.push_back(basis.size());
        M.gram.push_back(ExactMatrix::identity(basis.size()));
        auto act = [&](const RectDiagram& x, int target) {
            auto tbasis = wedge_basis(target);
            auto tindex = basis_index(tbasis);
            ExactMatrix out(tbasis.size(), basis.size());
            for (std::size_t c = 0; c < basis.size(); ++c) {
                auto composed = compose_decorated(d_basis_diagram(m, basis[c]), DecoratedRect(x));
                if (composed) out.at(tindex.at(composed->base.cups()), c) = CycScalar(1);
            }
            return out;
        };
        std::vector<ExactMatrix> creates, anns;
        if (m + 1 <= mmax)
            for (int i = 1; i <= m + 1; ++i)
                creates.push_back(act(psi_rect(normalize(Word(m, {Letter::create(i)}))), m + 1));
        if (m >= 1)
            for (int i = 1; i <= m; ++i)
                anns.push_back(act(psi_rect(normalize(Word(m, {Letter::annihilate(i)}))), m - 1));
        M.create.push_back(creates);
        M.annihilate.push_back(anns);
    }
    REQUIRE(validate_module(M).empty());
    Decomposition d = decompose(M);
    CHECK(d.dims_consistent);
    REQUIRE(d.pieces.size() == static_cast<std::size_t>(mmax + 1));
    for (const auto& p : d.pieces) CHECK(p.multiplicity == 1);
}
