#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gicar/fock.hpp"
#include "gicar/word.hpp"

namespace gicar {

// ---------------------------------------------------------------------------
// Semisimple structure of the planar rook algebras.  The 2^n minimal
// projections of the rectangular algebra are the simple tensors of broken
// and dotted strands; the all-dotted diagrams between equal-size subsets
// are a full matrix-unit system.  Annular blocks refine the rectangular
// ones by averaging the dotted rotation against a root of unity.
// ---------------------------------------------------------------------------

enum class Strand { Broken, Dotted };

using ProjectionPattern = std::vector<Strand>;

/// Dotted positions of a pattern.
inline Subset pattern_dots(const ProjectionPattern& p) {
    Subset out;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] == Strand::Dotted) out.push_back(static_cast<int>(i) + 1);
    return out;
}

inline ProjectionPattern pattern_from_dots(int n, const Subset& dots) {
    ProjectionPattern p(n, Strand::Broken);
    for (int i : dots) p[i - 1] = Strand::Dotted;
    return p;
}

inline ProjectionPattern parse_pattern(const std::string& s) {
    ProjectionPattern p;
    for (char c : s) {
        if (c == 'b') p.push_back(Strand::Broken);
        else if (c == 'd') p.push_back(Strand::Dotted);
        else throw std::invalid_argument("pattern: expected 'b' or 'd', got " + std::string(1, c));
    }
    return p;
}

/// The decorated diagram of a minimal projection: identity strands at the
/// dotted slots (dotted), broken strands elsewhere.
inline DecoratedRect minimal_projection_decorated(const ProjectionPattern& p) {
    int n = static_cast<int>(p.size());
    Subset dots = pattern_dots(p);
    std::vector<std::pair<int, int>> strands;
    for (int i : dots) strands.emplace_back(i, i);
    return DecoratedRect(RectDiagram(n, n, std::move(strands)), dots);
}

inline RectComb minimal_projection(const ProjectionPattern& p) {
    return expand_decorated(minimal_projection_decorated(p));
}

/// All-dotted matrix unit joining the dotted slots V (bottom) to U (top).
inline DecoratedAnn dotted_unit_ann(int n, const Subset& U, const Subset& V, int offset) {
    std::vector<int> S = V, T = U;
    return DecoratedAnn(AnnDiagram(n, n, S, T, offset), V);
}

inline DecoratedRect dotted_unit_rect(int n, const Subset& U, const Subset& V) {
    std::vector<std::pair<int, int>> strands;
    for (std::size_t j = 0; j < V.size(); ++j) strands.emplace_back(V[j], U[j]);
    return DecoratedRect(RectDiagram(n, n, std::move(strands)), V);
}

using AnnComb = LinComb<AnnDiagram>;
using DecRectComb = LinComb<DecoratedRect>;
using DecAnnComb = LinComb<DecoratedAnn>;

/// Operator product x.y in the annular algebra (y acts first).
inline DecAnnComb ap_mul(const DecAnnComb& x, const DecAnnComb& y) { return compose_lin(y, x); }
inline DecRectComb rp_mul(const DecRectComb& x, const DecRectComb& y) { return compose_lin(y, x); }

/// The dotted one-click rotation power as a decorated annular diagram.
inline DecoratedAnn dotted_rotation(int n, int power) {
    AnnDiagram base = AnnDiagram::rotation(n, power);
    return DecoratedAnn(base, base.dom);
}

/// The rotational idempotent of weight k and eigenvalue zeta_k^r:
/// (1/k) sum_j zeta_k^{-rj} (dotted rotation)^j, expanded to plain tangles.
/// Scalars live in Q(zeta_k).
inline AnnComb rotational_idempotent(int k, int r) {
    if (k < 1) throw std::invalid_argument("rotational_idempotent: k must be >= 1");
    AnnComb out;
    CycScalar inv_k(rat(1, k), static_cast<unsigned>(k));
    for (int j = 0; j < k; ++j) {
        CycScalar w = CycScalar::zeta(static_cast<unsigned>(k), -static_cast<long>(r) * j);
        out += (inv_k * w) * expand_decorated(dotted_rotation(k, j));
    }
    return out;
}

/// Same element in decorated form, for fast products.
inline DecAnnComb rotational_idempotent_decorated(int k, int r) {
    DecAnnComb out;
    CycScalar inv_k(rat(1, k), static_cast<unsigned>(k));
    for (int j = 0; j < k; ++j) {
        CycScalar w = CycScalar::zeta(static_cast<unsigned>(k), -static_cast<long>(r) * j);
        out.add_term(dotted_rotation(k, j), inv_k * w);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Wedderburn reports.
// ---------------------------------------------------------------------------

struct WedderburnSummand {
    int k;        // dotted strand count
    int omega;    // power of the primitive k-th root (annular only; 0 for rect)
    Int size;     // matrix size C(n, k)
};

struct WedderburnReport {
    std::string kind;
    int n = 0;
    std::vector<WedderburnSummand> summands;
    Int dimension = 0;       // sum of size^2
    Int basis_count = 0;     // number of basis diagrams, from enumeration
    std::size_t units_checked = 0;
    bool pass = false;
    std::string failure;

    std::string str() const {
        std::ostringstream os;
        os << kind << " n=" << n << ": ";
        for (const auto& s : summands) {
            os << "M_" << s.size.get_str();
            if (kind == "ann" && s.k > 0) os << "(k=" << s.k << ",w=" << s.omega << ")";
            os << " ";
        }
        os << "dim=" << dimension.get_str() << " basis=" << basis_count.get_str()
           << (pass ? " OK" : " FAIL " + failure);
        return os.str();
    }
};

/// Builds the full matrix-unit system of the rectangular algebra on n
/// points and verifies the unit relations, orthogonality across blocks,
/// completeness and the dimension count.
inline WedderburnReport wedderburn_rect(int n) {
    WedderburnReport rep;
    rep.kind = "rect";
    rep.n = n;
    rep.basis_count = count_rect(n, n);

    struct Unit {
        int k;
        Subset top, bottom;
        DecoratedRect value;
    };
    std::vector<Unit> units;
    for (int k = 0; k <= n; ++k) {
        rep.summands.push_back({k, 0, binom(n, k)});
        rep.dimension += binom(n, k) * binom(n, k);
        subsets_of_size(n, k, [&](const Subset& U) {
            subsets_of_size(n, k, [&](const Subset& V) {
                units.push_back({k, U, V, dotted_unit_rect(n, U, V)});
            });
        });
    }
    rep.pass = rep.dimension == rep.basis_count;
    if (!rep.pass) rep.failure = "dimension mismatch";

    // E_{UV} E_{V'W} = delta_{VV'} E_{UW}
    for (const auto& a : units)
        for (const auto& b : units) {
            auto prod = compose_decorated(b.value, a.value);  // operator a.b
            bool expect_nonzero = a.bottom == b.top;
            if (expect_nonzero) {
                if (!prod || !(*prod == dotted_unit_rect(n, a.top, b.bottom))) {
                    rep.pass = false;
                    rep.failure = "unit product failed";
                }
            } else if (prod) {
                rep.pass = false;
                rep.failure = "units not orthogonal";
            }
            ++rep.units_checked;
        }

    // adjoints swap the index pair
    for (const auto& a : units)
        if (!(adjoint(a.value) == dotted_unit_rect(n, a.bottom, a.top))) {
            rep.pass = false;
            rep.failure = "unit adjoint failed";
        }

    // completeness: diagonal units sum to the identity
    RectComb diag_sum;
    for (const auto& a : units)
        if (a.top == a.bottom) diag_sum += expand_decorated(a.value);
    if (!(diag_sum == RectComb(RectDiagram::identity(n)))) {
        rep.pass = false;
        rep.failure = "diagonal units do not sum to the identity";
    }
    return rep;
}

/// Annular analogue: blocks are labelled by (k, omega); the units average
/// the k rotation classes of all-dotted tangles against zeta_k^omega.
/// Scalars are embedded in Q(zeta_L), L = lcm(1..n), so that distinct
/// blocks can be multiplied.
inline WedderburnReport wedderburn_ann(int n) {
    WedderburnReport rep;
    rep.kind = "ann";
    rep.n = n;
    rep.basis_count = count_ann(n, n);

    unsigned L = 1;
    for (int k = 1; k <= n; ++k) L = static_cast<unsigned>(std::lcm<long>(L, k));

    struct Unit {
        int k, omega;
        Subset top, bottom;
        DecAnnComb value;
    };
    std::vector<Unit> units;
    // the empty-matching tangle spans the extra one-dimensional summand
    rep.summands.push_back({0, 0, 1});
    rep.dimension += 1;
    units.push_back({0, 0, {}, {}, DecAnnComb(DecoratedAnn(AnnDiagram(n, n, {}, {}, 0)))});

    for (int k = 1; k <= n; ++k)
        for (int omega = 0; omega < k; ++omega) {
            rep.summands.push_back({k, omega, binom(n, k)});
            rep.dimension += binom(n, k) * binom(n, k);
            subsets_of_size(n, k, [&](const Subset& U) {
                subsets_of_size(n, k, [&](const Subset& V) {
                    DecAnnComb val;
                    CycScalar inv_k = CycScalar(rat(1, k)).embedded(L);
                    for (int o = 0; o < k; ++o) {
                        CycScalar w =
                            CycScalar::zeta(static_cast<unsigned>(k), -static_cast<long>(omega) * o)
                                .embedded(L);
                        val.add_term(dotted_unit_ann(n, U, V, o), inv_k * w);
                    }
                    units.push_back({k, omega, U, V, std::move(val)});
                });
            });
        }

    rep.pass = rep.dimension == rep.basis_count;
    if (!rep.pass) rep.failure = "dimension mismatch";

    auto unit_value = [&](int k, int omega, const Subset& U, const Subset& V) {
        if (k == 0) return DecAnnComb(DecoratedAnn(AnnDiagram(n, n, {}, {}, 0)));
        DecAnnComb val;
        CycScalar inv_k = CycScalar(rat(1, k)).embedded(L);
        for (int o = 0; o < k; ++o)
            val.add_term(dotted_unit_ann(n, U, V, o),
                         inv_k * CycScalar::zeta(static_cast<unsigned>(k),
                                                 -static_cast<long>(omega) * o)
                                     .embedded(L));
        return val;
    };

    // products of fully dotted tangles stay fully dotted, where formal
    // equality of decorated combinations is faithful
    for (const auto& a : units)
        for (const auto& b : units) {
            DecAnnComb prod = ap_mul(a.value, b.value);
            bool expect = a.k == b.k && a.omega == b.omega && a.bottom == b.top;
            if (expect) {
                if (!(prod == unit_value(a.k, a.omega, a.top, b.bottom))) {
                    rep.pass = false;
                    rep.failure = "unit product failed";
                }
            } else if (!prod.is_zero()) {
                rep.pass = false;
                rep.failure = "units not orthogonal";
            }
            ++rep.units_checked;
        }

    // completeness across all blocks, compared in the plain tangle basis
    AnnComb diag_sum;
    for (const auto& a : units)
        if (a.top == a.bottom)
            for (const auto& [d, c] : a.value.terms()) diag_sum += c * expand_decorated(d);
    if (!(diag_sum == AnnComb(AnnDiagram::identity(n)))) {
        rep.pass = false;
        rep.failure = "diagonal units do not sum to the identity";
    }
    return rep;
}

inline WedderburnReport wedderburn_check(const std::string& kind, int n) {
    if (kind == "rect") return wedderburn_rect(n);
    if (kind == "ann") return wedderburn_ann(n);
    throw std::invalid_argument("wedderburn_check: kind must be rect or ann");
}

// ---------------------------------------------------------------------------
// Bratteli data for the tower under the right inclusion.
// ---------------------------------------------------------------------------

struct BratteliRow {
    int level = 0;
    std::vector<Int> multiplicities;                 // indexed by k = 0..level
    std::vector<std::pair<int, int>> edges;          // (k at this level, k at next)
    std::vector<Int> edge_multiplicities;
};

/// Rows 0..n_max of the branching diagram, with the edges computed by
/// embedding each minimal projection (appending a plain strand) and
/// decomposing exactly against the next level's minimal projections.
inline std::vector<BratteliRow> bratteli(int n_max) {
    std::vector<BratteliRow> rows;
    for (int n = 0; n <= n_max; ++n) {
        BratteliRow row;
        row.level = n;
        for (int k = 0; k <= n; ++k) row.multiplicities.push_back(binom(n, k));
        if (n < n_max) {
            // decompose the embedding of one representative per block
            for (int k = 0; k <= n; ++k) {
                Subset dots;
                for (int i = 1; i <= k; ++i) dots.push_back(i);
                DecoratedRect p = minimal_projection_decorated(pattern_from_dots(n, dots));
                DecoratedRect embedded = tensor(p, DecoratedRect(RectDiagram::identity(1)));
                std::map<int, Int> hits;
                RectComb reconstructed;
                for (int k2 = 0; k2 <= n + 1; ++k2) {
                    subsets_of_size(n + 1, k2, [&](const Subset& d2) {
                        DecoratedRect q = minimal_projection_decorated(pattern_from_dots(n + 1, d2));
                        // q lies under the embedding iff embedded . q = q
                        auto prod = compose_decorated(q, embedded);
                        if (prod && *prod == q) {
                            hits[k2] += 1;
                            reconstructed += expand_decorated(q);
                        }
                    });
                }
                if (!(reconstructed == expand_decorated(embedded)))
                    throw std::logic_error("bratteli: embedded projection did not split cleanly");
                for (const auto& [k2, mult] : hits) {
                    row.edges.emplace_back(k, k2);
                    row.edge_multiplicities.push_back(mult);
                }
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::string bratteli_dot(const std::vector<BratteliRow>& rows) {
    std::ostringstream os;
    os << "digraph bratteli {\n  rankdir=TB;\n  node [shape=plaintext];\n";
    for (const auto& row : rows) {
        os << "  { rank=same;";
        for (int k = 0; k <= row.level; ++k)
            os << " \"" << row.level << "_" << k << "\" [label=\"(" << row.level << "," << k
               << "):" << row.multiplicities[k].get_str() << "\"];";
        os << " }\n";
    }
    for (const auto& row : rows)
        for (std::size_t e = 0; e < row.edges.size(); ++e)
            os << "  \"" << row.level << "_" << row.edges[e].first << "\" -> \"" << row.level + 1
               << "_" << row.edges[e].second << "\";\n";
    os << "}\n";
    return os.str();
}

}  // namespace gicar
