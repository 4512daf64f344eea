#pragma once

#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gicar/algebra.hpp"
#include "gicar/cmodule.hpp"
#include "gicar/fock.hpp"
#include "gicar/tensorrep.hpp"
#include "gicar/word.hpp"

namespace gicar {

struct VerifyCheck {
    std::string id;
    std::string expected;
    std::string got;
    bool pass = false;
};

struct VerifyReport {
    std::string suite;
    std::vector<VerifyCheck> checks;

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    std::size_t failed() const {
        std::size_t out = 0;
        for (const auto& c : checks)
            if (!c.pass) ++out;
        return out;
    }

    void expect_true(const std::string& id, bool ok) {
        checks.push_back({id, "true", ok ? "true" : "false", ok});
    }
    template <class A, class B>
    void expect_eq(const std::string& id, const A& expected, const B& got) {
        std::ostringstream e, g;
        e << expected;
        g << got;
        checks.push_back({id, e.str(), g.str(), e.str() == g.str()});
    }
    /// Collapse a scan of many identical checks into one line.
    void expect_all(const std::string& id, std::size_t total, std::size_t good) {
        std::ostringstream e, g;
        e << total << "/" << total;
        g << good << "/" << total;
        checks.push_back({id, e.str(), g.str(), total == good});
    }
};

namespace verify_detail {

inline Word random_word(std::mt19937& rng, int max_size, int max_len) {
    int src = rng() % (max_size + 1);
    int len = rng() % (max_len + 1);
    int sz = src;
    std::vector<Letter> ls;
    for (int k = 0; k < len; ++k) {
        int pick = rng() % 4;
        if (pick == 0 && sz < max_size) {
            ls.push_back(Letter::create(1 + rng() % (sz + 1)));
            ++sz;
        } else if (pick == 1 && sz >= 1) {
            ls.push_back(Letter::annihilate(1 + rng() % sz));
            --sz;
        } else if (pick == 2) {
            ls.push_back(Letter::rot());
        } else {
            ls.push_back(Letter::rot_inv());
        }
    }
    return {src, std::move(ls)};
}

inline ExactMatrix rational_orthogonal(std::mt19937& rng, std::size_t dim, unsigned order, int twists) {
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

inline std::vector<NormalMonomial> gicar_monomials(int n) {
    std::vector<NormalMonomial> out;
    for (int k = 0; k <= n; ++k)
        subsets_of_size(n, k, [&](const Subset& I) {
            subsets_of_size(n, k, [&](const Subset& J) { out.push_back({I, J}); });
        });
    return out;
}

inline CarWord pattern_word(int n, const Subset& occupied) {
    CarWord w;
    for (int i = 1; i <= n; ++i) {
        bool occ = std::binary_search(occupied.begin(), occupied.end(), i);
        if (occ) {
            w.push_back({true, i});
            w.push_back({false, i});
        } else {
            w.push_back({false, i});
            w.push_back({true, i});
        }
    }
    return w;
}

}  // namespace verify_detail

// ---------------------------------------------------------------------------
// Criterion 1: counting.
// ---------------------------------------------------------------------------
inline VerifyReport verify_counting(int size_cap = 6, int rect_cap = 8) {
    VerifyReport rep{"counting", {}};
    std::size_t total = 0, good = 0;
    for (int n = 1; n <= size_cap; ++n)
        for (int m = 1; m <= n; ++m)
            for (int k = 1; k <= m; ++k) {
                ++total;
                if (Int(enumerate_ann(m, n, k).size()) == Int(m) * binom(n, k) * binom(m - 1, k - 1))
                    ++good;
            }
    rep.expect_all("|AP(m,n;k)| = m C(n,k) C(m-1,k-1) for k<=m<=n<=" + std::to_string(size_cap),
                   total, good);
    total = good = 0;
    for (int m = 0; m <= size_cap; ++m)
        for (int n = 0; n <= size_cap; ++n) {
            ++total;
            if (Int(enumerate_ann(m, n).size()) == count_ann(m, n)) ++good;
        }
    rep.expect_all("|AP(m,n)| matches the closed form, m,n<=" + std::to_string(size_cap), total, good);
    total = good = 0;
    for (int n = 0; n <= rect_cap; ++n) {
        Int expect = 0;
        for (int k = 0; k <= n; ++k) expect += binom(n, k) * binom(n, k);
        ++total;
        if (Int(enumerate_rect(n, n).size()) == expect) ++good;
    }
    rep.expect_all("|RP(n,n)| = sum C(n,k)^2 for n<=" + std::to_string(rect_cap), total, good);
    return rep;
}

// ---------------------------------------------------------------------------
// Criterion 2: the standard form and the equivalence of categories.
// ---------------------------------------------------------------------------
inline VerifyReport verify_standard_form(int words = 10000, int size_cap = 4) {
    VerifyReport rep{"standard-form", {}};
    std::mt19937 rng(20130607);
    std::size_t idem = 0, semantics = 0;
    for (int t = 0; t < words; ++t) {
        Word w = verify_detail::random_word(rng, 6, 12);
        StandardWord sw = normalize(w);
        if (normalize(sw.as_word()) == sw) ++idem;
        if (psi(w) == psi(sw)) ++semantics;
    }
    rep.expect_all("normalize terminates and is idempotent on " + std::to_string(words) + " random words",
                   words, idem);
    rep.expect_all("Psi(w) = Psi(normalize(w)) on " + std::to_string(words) + " random words", words,
                   semantics);

    std::size_t total = 0, good = 0;
    for (int m = 0; m <= size_cap; ++m)
        for (int n = 0; n <= size_cap; ++n)
            for (const auto& d : enumerate_ann(m, n)) {
                ++total;
                if (psi(psi_inverse(d)) == d) ++good;
            }
    rep.expect_all("Psi o Psi^{-1} = id on AP(m,n), m,n<=" + std::to_string(size_cap), total, good);
    total = good = 0;
    for (int m = 0; m <= size_cap; ++m)
        for (int n = 0; n <= size_cap; ++n)
            for (const auto& sw : enumerate_standard(m, n)) {
                ++total;
                if (psi_inverse(psi(sw)) == sw && psi(sw) == psi(sw.as_word())) ++good;
            }
    rep.expect_all("Psi^{-1} o Psi = id on standard words, m,n<=" + std::to_string(size_cap), total,
                   good);
    return rep;
}

// ---------------------------------------------------------------------------
// Criterion 3: GICAR structure.
// ---------------------------------------------------------------------------
inline VerifyReport verify_gicar_structure(int n_cap = 4, int bratteli_cap = 8) {
    VerifyReport rep{"gicar", {}};
    for (int n = 1; n <= n_cap; ++n) {
        auto monomials = verify_detail::gicar_monomials(n);
        Int expect = 0;
        for (int k = 0; k <= n; ++k) expect += binom(n, k) * binom(n, k);
        std::size_t dim = std::size_t{1} << n;
        ExactMatrix stacked(monomials.size(), dim * dim);
        for (std::size_t r = 0; r < monomials.size(); ++r) {
            ExactMatrix m = gicar_element(monomials[r].as_word(), n);
            for (std::size_t i = 0; i < dim; ++i)
                for (std::size_t j = 0; j < dim; ++j) stacked.at(r, i * dim + j) = m.at(i, j);
        }
        rep.expect_eq("dim span(GICAR monomials), n=" + std::to_string(n), expect.get_str(),
                      Int(stacked.rank()).get_str());
    }
    for (int n = 1; n <= n_cap; ++n) {
        std::vector<ExactMatrix> projections;
        for (const auto& occ : wedge_basis(n))
            projections.push_back(gicar_element(verify_detail::pattern_word(n, occ), n));
        std::size_t total = 0, good = 0;
        ExactMatrix sum(projections[0].rows(), projections[0].cols());
        for (std::size_t a = 0; a < projections.size(); ++a) {
            sum = sum + projections[a];
            ++total;
            if (projections[a] * projections[a] == projections[a] && !projections[a].is_zero()) ++good;
            for (std::size_t b = a + 1; b < projections.size(); ++b) {
                ++total;
                if ((projections[a] * projections[b]).is_zero()) ++good;
            }
        }
        ++total;
        if (sum == ExactMatrix::identity(projections[0].rows())) ++good;
        rep.expect_all("2^n minimal projections orthogonal and complete, n=" + std::to_string(n), total,
                       good);
    }
    auto rows = bratteli(bratteli_cap);
    std::size_t total = 0, good = 0;
    for (const auto& row : rows) {
        for (int k = 0; k <= row.level; ++k) {
            ++total;
            if (row.multiplicities[k] == binom(row.level, k)) ++good;
        }
        for (std::size_t e = 0; e < row.edges.size(); ++e) {
            ++total;
            if (row.edge_multiplicities[e] == 1) ++good;
        }
        if (row.level < bratteli_cap) {
            ++total;
            if (row.edges.size() == 2 * (row.level + 1u)) ++good;
        }
    }
    rep.expect_all("Bratteli rows are Pascal rows with simple edges, n<=" + std::to_string(bratteli_cap),
                   total, good);
    return rep;
}

// ---------------------------------------------------------------------------
// Criterion 4: the theta / Theta intertwining.
// ---------------------------------------------------------------------------
inline VerifyReport verify_intertwining(int n_cap = 4) {
    VerifyReport rep{"intertwine", {}};
    // D1 on the orthonormal bases and on deterministic random vectors
    std::mt19937 rng(271828);
    for (int n = 1; n <= n_cap; ++n) {
        auto basis = wedge_basis(n);
        std::size_t total = 0, good = 0;
        for (const auto& s : basis)
            for (const auto& t : basis) {
                ++total;
                FockVector u(n, s), v(n, t);
                if (inner(u, v) == inner(big_theta(u), big_theta(v))) ++good;
            }
        for (int trial = 0; trial < 25; ++trial) {
            FockVector u(n), v(n);
            for (int x = 0; x < 3; ++x) {
                u.coeffs.add_term(basis[rng() % basis.size()], CycScalar(rat(static_cast<long>(rng() % 9) - 4)));
                v.coeffs.add_term(basis[rng() % basis.size()], CycScalar(rat(static_cast<long>(rng() % 9) - 4)));
            }
            ++total;
            if (inner(u, v) == inner(big_theta(u), big_theta(v))) ++good;
        }
        rep.expect_all("D1: Theta preserves inner products, n=" + std::to_string(n), total, good);
    }

    // the module isomorphism: theta(x) acts on D_n with the Fock matrix of x
    for (int n = 1; n <= n_cap; ++n) {
        auto monomials = verify_detail::gicar_monomials(n);
        std::size_t good = 0;
        for (const auto& m : monomials)
            if (d_matrix(theta_monomial(m, n), n) == gicar_element(m.as_word(), n)) ++good;
        rep.expect_all("Ad(Theta): theta matches the Fock action on all monomials, n=" + std::to_string(n),
                       monomials.size(), good);
    }

    // D3 explicitly on every wedge basis vector against every generator
    for (int n = 1; n <= n_cap; ++n) {
        std::size_t total = 0, good = 0;
        std::vector<std::pair<CarWord, RectComb>> gens;
        for (int i = 1; i <= n; ++i)
            gens.emplace_back(CarWord{{false, i}, {true, i}}, theta_unoccupied_projection(i, n));
        for (int i = 1; i < n; ++i)
            gens.emplace_back(CarWord{{true, i + 1}, {false, i}}, theta_hop(i + 1, i, n));
        for (const auto& [w, img] : gens)
            for (const auto& s : wedge_basis(n)) {
                ++total;
                FockVector eta(n, s);
                if (big_theta(apply_car(w, eta)).coeffs == d_action(img, big_theta(eta)).coeffs) ++good;
            }
        rep.expect_all("D3 on every wedge basis vector against every f_i, u_i, n=" + std::to_string(n),
                       total, good);
    }

    // D2: *-homomorphism property theta(x y*) = theta(x) theta(y)*
    for (int n = 1; n <= n_cap; ++n) {
        auto monomials = verify_detail::gicar_monomials(n);
        std::size_t total = 0, good = 0;
        auto check_pair = [&](const NormalMonomial& x, const NormalMonomial& y) {
            CarWord xy = x.as_word();
            for (const auto& l : y.adjoint().as_word()) xy.push_back(l);
            ++total;
            if (theta(xy, n) == rp_mul(theta_monomial(x, n), adjoint_lin(theta_monomial(y, n)))) ++good;
        };
        if (n <= 3) {
            for (const auto& x : monomials)
                for (const auto& y : monomials) check_pair(x, y);
        } else {
            for (const auto& x : monomials) {
                check_pair(x, monomials[rng() % monomials.size()]);
                check_pair(monomials[rng() % monomials.size()], x);
            }
        }
        rep.expect_all("D2: theta(x y*) = theta(x) theta(y)*, n=" + std::to_string(n), total, good);
    }

    // the worked two-term image of a_1 a_3*
    DecoratedRect first(RectDiagram(3, 3, {{1, 2}, {2, 3}}), {1, 2});
    DecoratedRect second(RectDiagram(3, 3, {{1, 3}}), {1});
    RectComb expected = expand_decorated(first) - expand_decorated(second);
    rep.expect_true("theta(a_1 a_3*) is the two-term dotted-isometry difference at n=3",
                    theta(parse_car_word("a1 a3*"), 3) == expected);
    return rep;
}

// ---------------------------------------------------------------------------
// Criterion 5: representation theory of the GICAR algebra.
// ---------------------------------------------------------------------------
inline VerifyReport verify_gicar_representations(int n_cap = 4) {
    VerifyReport rep{"gicar-rep", {}};
    for (int n = 1; n <= n_cap; ++n) {
        auto basis = wedge_basis(n);
        auto index = basis_index(basis);
        // generator matrices
        std::vector<ExactMatrix> gens;
        for (int i = 1; i <= n; ++i) gens.push_back(gicar_element({{false, i}, {true, i}}, n));
        for (int i = 1; i < n; ++i) {
            gens.push_back(gicar_element({{true, i + 1}, {false, i}}, n));
            gens.push_back(gicar_element({{true, i}, {false, i + 1}}, n));
        }

        // (1) each particle-number block has trivial commutant
        for (int k = 0; k <= n; ++k) {
            std::vector<std::size_t> block;
            for (std::size_t b = 0; b < basis.size(); ++b)
                if (static_cast<int>(basis[b].size()) == k) block.push_back(b);
            std::size_t bd = block.size();
            std::vector<ExactMatrix> restricted;
            for (const auto& g : gens) {
                ExactMatrix r(bd, bd);
                for (std::size_t a = 0; a < bd; ++a)
                    for (std::size_t b = 0; b < bd; ++b) r.at(a, b) = g.at(block[a], block[b]);
                restricted.push_back(std::move(r));
            }
            ExactMatrix sys(restricted.size() * bd * bd, bd * bd);
            std::size_t row = 0;
            for (const auto& g : restricted) {
                for (std::size_t r2 = 0; r2 < bd; ++r2)
                    for (std::size_t c = 0; c < bd; ++c) {
                        for (std::size_t x = 0; x < bd; ++x) {
                            sys.at(row, r2 * bd + x) += g.at(x, c);
                            sys.at(row, x * bd + c) -= g.at(r2, x);
                        }
                        ++row;
                    }
            }
            rep.expect_eq("irreducibility: commutant dim of the k=" + std::to_string(k) +
                              " block, n=" + std::to_string(n),
                          1, sys.kernel().cols());
        }

        // (2) regular representation multiplicities via exact rank
        auto monomials = verify_detail::gicar_monomials(n);
        std::size_t dim = basis.size();
        for (int k = 0; k <= n; ++k) {
            ExactMatrix zk(dim, dim);
            for (const auto& occ : wedge_basis(n))
                if (static_cast<int>(occ.size()) == k)
                    zk = zk + gicar_element(verify_detail::pattern_word(n, occ), n);
            ExactMatrix stacked(monomials.size(), dim * dim);
            for (std::size_t r = 0; r < monomials.size(); ++r) {
                ExactMatrix m = zk * gicar_element(monomials[r].as_word(), n);
                for (std::size_t i = 0; i < dim; ++i)
                    for (std::size_t j = 0; j < dim; ++j) stacked.at(r, i * dim + j) = m.at(i, j);
            }
            rep.expect_eq("regular module: rank of the k=" + std::to_string(k) +
                              " central cut = C(n,k)^2, n=" + std::to_string(n),
                          Int(binom(n, k) * binom(n, k)).get_str(), Int(stacked.rank()).get_str());
        }

        // (3) branching: restriction to the subalgebra on the first n-1 modes
        if (n >= 2) {
            std::vector<CarWord> subgen_words;
            for (int i = 1; i <= n - 1; ++i) subgen_words.push_back({{false, i}, {true, i}});
            for (int i = 1; i < n - 1; ++i) subgen_words.push_back({{true, i + 1}, {false, i}});
            auto low_basis = wedge_basis(n - 1);
            auto low_index = basis_index(low_basis);
            std::size_t total = 0, good = 0;
            for (int k = 1; k <= n - 1; ++k) {
                // split the k-block by whether mode n is occupied
                std::vector<std::size_t> without, with;
                for (std::size_t b = 0; b < basis.size(); ++b) {
                    if (static_cast<int>(basis[b].size()) != k) continue;
                    if (std::binary_search(basis[b].begin(), basis[b].end(), n)) with.push_back(b);
                    else without.push_back(b);
                }
                ++total;
                if (Int(without.size()) == binom(n - 1, k) && Int(with.size()) == binom(n - 1, k - 1))
                    ++good;
                // invariance of each half and identification with the honest
                // level-(n-1) action (dropping the inert last mode)
                for (const auto& gw : subgen_words) {
                    ExactMatrix glow = gicar_element(gw, n - 1);
                    auto restricted = [&](const std::vector<std::size_t>& part, bool drop)
                        -> std::optional<ExactMatrix> {
                        ExactMatrix r(low_basis.size(), low_basis.size());
                        for (std::size_t b : part) {
                            Subset s = basis[b];
                            if (drop) s.pop_back();
                            FockVector img = apply_car(gw, FockVector(n, basis[b]));
                            for (const auto& [t, c] : img.coeffs.terms()) {
                                Subset tl = t;
                                bool has_n = std::binary_search(t.begin(), t.end(), n);
                                if (has_n != drop) return std::nullopt;  // invariance broken
                                if (drop) tl.pop_back();
                                r.at(low_index.at(tl), low_index.at(s)) += c;
                            }
                        }
                        return r;
                    };
                    auto block_of = [&](int kk) {
                        ExactMatrix out(low_basis.size(), low_basis.size());
                        for (std::size_t a = 0; a < low_basis.size(); ++a)
                            for (std::size_t b2 = 0; b2 < low_basis.size(); ++b2)
                                if (static_cast<int>(low_basis[a].size()) == kk &&
                                    static_cast<int>(low_basis[b2].size()) == kk)
                                    out.at(a, b2) = glow.at(a, b2);
                        return out;
                    };
                    ++total;
                    auto r_without = restricted(without, false);
                    auto r_with = restricted(with, true);
                    if (r_without && r_with && *r_without == block_of(k) && *r_with == block_of(k - 1))
                        ++good;
                }
            }
            rep.expect_all("branching: restriction splits as the two lower wedge blocks, n=" +
                               std::to_string(n),
                           total, good);
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Criterion 6: annular algebra structure.
// ---------------------------------------------------------------------------
inline VerifyReport verify_annular_wedderburn(int n_cap = 4) {
    VerifyReport rep{"annular-wedderburn", {}};
    for (int n = 1; n <= n_cap; ++n) {
        WedderburnReport w = wedderburn_check("ann", n);
        rep.expect_true("matrix-unit system verified, n=" + std::to_string(n) + " (" +
                            std::to_string(w.units_checked) + " products)",
                        w.pass);
        rep.expect_eq("dimension matches enumeration, n=" + std::to_string(n), w.basis_count.get_str(),
                      w.dimension.get_str());
        // summand pattern: C + sum_k k copies of M_{C(n,k)}
        bool pattern = true;
        std::size_t idx = 0;
        if (w.summands[idx].k != 0 || w.summands[idx].size != 1) pattern = false;
        ++idx;
        for (int k = 1; k <= n; ++k)
            for (int omega = 0; omega < k; ++omega, ++idx)
                if (idx >= w.summands.size() || w.summands[idx].k != k ||
                    w.summands[idx].omega != omega || w.summands[idx].size != binom(n, k))
                    pattern = false;
        rep.expect_true("summand pattern C + sum_k k M_{C(n,k)}, n=" + std::to_string(n), pattern);
    }
    rep.expect_eq("dim AP_2", "7", wedderburn_check("ann", 2).dimension.get_str());
    rep.expect_eq("dim AP_3", "31", wedderburn_check("ann", 3).dimension.get_str());
    return rep;
}

// ---------------------------------------------------------------------------
// Criterion 7: irreducible modules and the decomposition engine.
// ---------------------------------------------------------------------------
inline VerifyReport verify_irreducibles(int k_cap = 3, int m_cap = 6, int assemblies = 20) {
    VerifyReport rep{"irreducibles", {}};
    std::size_t total = 0, good = 0;
    for (int k = 0; k <= k_cap; ++k) {
        // rectangular
        ++total;
        try {
            SequenceModule v = irr_matrices({false, k, 0}, m_cap);  // gram checked inside
            bool dims = true;
            for (int m = 0; m <= m_cap; ++m)
                if (Int(v.dims[m]) != (m >= k ? binom(m, k) : 0)) dims = false;
            if (dims && validate_module(v).empty()) ++good;
        } catch (const std::exception&) {
        }
        for (int r = 0; r < std::max(k, 1); ++r) {
            ++total;
            try {
                SequenceModule v = irr_matrices({true, k, r}, m_cap);
                bool dims = true;
                for (int m = 0; m <= m_cap; ++m)
                    if (Int(v.dims[m]) != (m >= k ? binom(m, k) : 0)) dims = false;
                if (dims && validate_module(v).empty()) ++good;
            } catch (const std::exception&) {
            }
        }
    }
    rep.expect_all("orthonormal bases, dims C(m,k) and exact relations for k<=" + std::to_string(k_cap) +
                       ", m<=" + std::to_string(m_cap),
                   total, good);

    std::mt19937 rng(16180339);
    std::size_t inverted = 0;
    for (int trial = 0; trial < assemblies; ++trial) {
        bool annular = trial % 2 == 0;
        int mmax = 3 + static_cast<int>(rng() % 3);  // 3..5
        unsigned order = annular ? 6 : 1;
        std::vector<SequenceModule> parts;
        std::map<IrrModuleSpec, std::size_t> expect;
        for (int k = 0; k <= 3; ++k)
            for (int r = 0; r < (annular ? std::max(k, 1) : 1); ++r) {
                std::size_t mult = rng() % 4;  // 0..3
                if (k > mmax) mult = 0;
                for (std::size_t c = 0; c < mult; ++c) {
                    SequenceModule part = irr_matrices({annular, k, r}, mmax);
                    part.order = order;
                    for (auto& g : part.gram) g = g.embedded(order);
                    for (auto& v : part.create)
                        for (auto& g : v) g = g.embedded(order);
                    for (auto& v : part.annihilate)
                        for (auto& g : v) g = g.embedded(order);
                    for (auto& g : part.rot) g = g.embedded(order);
                    parts.push_back(std::move(part));
                    expect[{annular, k, r}] += 1;
                }
            }
        if (parts.empty()) {
            parts.push_back(irr_matrices({annular, 0, 0}, mmax));
            parts.back().order = order;
            for (auto& g : parts.back().gram) g = g.embedded(order);
            for (auto& v : parts.back().create)
                for (auto& g : v) g = g.embedded(order);
            for (auto& v : parts.back().annihilate)
                for (auto& g : v) g = g.embedded(order);
            for (auto& g : parts.back().rot) g = g.embedded(order);
            expect[{annular, 0, 0}] = 1;
        }
        SequenceModule sum = direct_sum(parts);
        std::vector<ExactMatrix> q;
        for (int m = 0; m <= sum.mmax; ++m)
            q.push_back(verify_detail::rational_orthogonal(rng, sum.dims[m], sum.order, 5));
        SequenceModule scrambled = conjugate_levels(sum, q);
        Decomposition d = decompose(scrambled);
        std::map<IrrModuleSpec, std::size_t> got;
        for (const auto& p : d.pieces) got[p.spec] = p.multiplicity;
        if (got == expect && d.dims_consistent) ++inverted;
    }
    rep.expect_all("decompose inverts " + std::to_string(assemblies) + " scrambled direct sums", assemblies,
                   inverted);
    return rep;
}

// ---------------------------------------------------------------------------
// Criterion 8: the tensor-power realization.
// ---------------------------------------------------------------------------
inline VerifyReport verify_toy(int m_cap = 4) {
    VerifyReport rep{"toy", {}};
    // relations of the creation/annihilation family
    for (int d : {1, 2}) {
        ToyContext ctx{d};
        std::size_t total = 0, good = 0;
        for (int m = 0; m + 1 <= m_cap; ++m) {
            for (int i = 1; i <= m + 2 && m + 2 <= m_cap; ++i)
                for (int j = i + 1; j <= m + 2; ++j) {
                    if (j - 1 > m + 1) continue;
                    ++total;
                    if (toy_create(ctx, i, m + 1) * toy_create(ctx, j - 1, m) ==
                        toy_create(ctx, j, m + 1) * toy_create(ctx, i, m))
                        ++good;
                }
            for (int i = 1; i <= m + 1; ++i)
                for (int j = 1; j <= m + 1; ++j) {
                    ++total;
                    ExactMatrix lhs = toy_annihilate(ctx, i, m + 1) * toy_create(ctx, j, m);
                    bool ok;
                    if (i == j) ok = lhs == ExactMatrix::identity(ctx.level_dim(m));
                    else if (m == 0) ok = lhs.is_zero();
                    else if (i < j) ok = lhs == toy_create(ctx, j - 1, m - 1) * toy_annihilate(ctx, i, m);
                    else ok = lhs == toy_create(ctx, j, m - 1) * toy_annihilate(ctx, i - 1, m);
                    if (ok) ++good;
                }
            for (int i = 1; i <= m + 1; ++i) {
                ++total;
                if (toy_create(ctx, i, m).conj_transpose() == toy_annihilate(ctx, i, m + 1)) ++good;
            }
        }
        rep.expect_all("creation/annihilation relations, d=" + std::to_string(d) + ", m<=" +
                           std::to_string(m_cap),
                       total, good);
    }

    // odd Jones projections and their equivalences
    {
        ToyContext ctx{2};
        std::size_t total = 0, good = 0;
        for (int m = 1; m <= 3; ++m)
            for (int i = 1; i <= m; ++i) {
                ExactMatrix e = odd_jones(ctx, i, m);
                ++total;
                if (e * e == e && e.conj_transpose() == e) ++good;
                for (int j = 1; j <= m; ++j) {
                    if (i == j) continue;
                    ExactMatrix v = toy_create(ctx, i, m - 1) * toy_annihilate(ctx, j, m);
                    ExactMatrix w = toy_create(ctx, j, m - 1) * toy_annihilate(ctx, i, m);
                    total += 2;
                    if (v * w == odd_jones(ctx, i, m)) ++good;
                    if (!(odd_jones(ctx, i, m) == odd_jones(ctx, j, m))) ++good;
                }
            }
        rep.expect_all("odd Jones projections (a_i a_j*)(a_j a_i*) = e_{2i-1}, distinct", total, good);
    }

    // traces of minimal projections
    {
        std::size_t total = 0, good = 0;
        for (int d : {1, 2, 3}) {
            ToyContext ctx{d};
            for (int n = 1; n <= 4; ++n)
                for (int j = 0; j <= n; ++j) {
                    Subset dots;
                    for (int x = 1; x <= j; ++x) dots.push_back(x);
                    RectComb p = minimal_projection(pattern_from_dots(n, dots));
                    Int expect;
                    mpz_ui_pow_ui(expect.get_mpz_t(), static_cast<unsigned long>(d),
                                  static_cast<unsigned long>(j));
                    ++total;
                    if (represent(ctx, p, n).trace() == CycScalar(Rat(expect))) ++good;
                }
        }
        rep.expect_all("trace of a j-dotted minimal projection is d^j, d in {1,2,3}, j<=4", total, good);
    }

    // separating vectors and full-rank independence
    for (int d : {1, 2}) {
        ToyContext ctx{d};
        int cap = d == 1 ? 4 : 3;
        std::size_t total = 0, good = 0, rank_total = 0, rank_good = 0;
        for (int m = 0; m <= cap; ++m)
            for (int n = 0; n <= cap; ++n) {
                std::vector<StandardWord> words;
                for (const auto& sw : enumerate_standard(m, n))
                    if (sw.rectangular()) words.push_back(sw);
                std::vector<SeparatingWitness> wits;
                for (const auto& sw : words) {
                    SeparatingWitness w = separating_test(ctx, sw);
                    ++total;
                    if (w.value == CycScalar(1) && w.vanishing_ok) ++good;
                    wits.push_back(std::move(w));
                }
                ExactMatrix eval(words.size(), words.size());
                for (std::size_t r = 0; r < words.size(); ++r)
                    for (std::size_t c = 0; c < words.size(); ++c) {
                        ExactMatrix m2 = represent(ctx, words[c]);
                        eval.at(r, c) = m2.at(ctx.tuple_index(wits[r].eta), ctx.tuple_index(wits[r].xi));
                    }
                ++rank_total;
                if (eval.rank() == words.size()) ++rank_good;
            }
        rep.expect_all("separating pairings are exactly 1 with prescribed vanishing, d=" + std::to_string(d),
                       total, good);
        rep.expect_all("standard words act with full rank (faithfulness), d=" + std::to_string(d),
                       rank_total, rank_good);
    }

    // annular identities for the cyclic shift
    {
        std::size_t total = 0, good = 0;
        for (int d : {1, 2}) {
            ToyContext ctx{d};
            for (int m = 0; m <= m_cap; ++m) {
                ExactMatrix r = toy_rotation(ctx, m);
                ExactMatrix pw = ExactMatrix::identity(ctx.level_dim(m));
                for (int x = 0; x < m; ++x) pw = pw * r;
                total += 2;
                if (m == 0 || pw == ExactMatrix::identity(ctx.level_dim(m))) ++good;
                if (r * r.conj_transpose() == ExactMatrix::identity(ctx.level_dim(m))) ++good;
                for (int i = 2; i <= m + 1 && m + 1 <= m_cap; ++i) {
                    ++total;
                    if (toy_create(ctx, i, m) * r == toy_rotation(ctx, m + 1) * toy_create(ctx, i - 1, m))
                        ++good;
                }
                for (int i = 2; i <= m; ++i) {
                    ++total;
                    if (toy_annihilate(ctx, i, m) * r ==
                        toy_rotation(ctx, m - 1) * toy_annihilate(ctx, i - 1, m))
                        ++good;
                }
                // the derived relation a*_1 tau = a*_m
                if (m >= 1) {
                    ++total;
                    if (toy_annihilate(ctx, 1, m) * r == toy_annihilate(ctx, m, m)) ++good;
                }
            }
        }
        rep.expect_all("annular relations for the cyclic shift, m<=" + std::to_string(m_cap), total, good);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Criterion 9: cross-module consistency.
// ---------------------------------------------------------------------------
inline VerifyReport verify_cross_consistency(int size_cap = 6, int d_cap = 3, int k_cap = 4) {
    VerifyReport rep{"cross", {}};
    std::size_t total = 0, good = 0;
    for (int m = 0; m <= size_cap; ++m)
        for (int n = 0; n <= size_cap; ++n) {
            ++total;
            Int formula = count_ann(m, n);
            if (Int(enumerate_standard(m, n).size()) == formula &&
                Int(enumerate_ann(m, n).size()) == formula)
                ++good;
        }
    rep.expect_all("count formula = |standard words| = |tangles|, m,n<=" + std::to_string(size_cap), total,
                   good);

    total = good = 0;
    for (int d = 1; d <= d_cap; ++d) {
        DegeneracyReport r = annular_degeneracy_report(ToyContext{d}, k_cap, true);
        std::map<std::pair<int, int>, Int> table;
        for (const auto& p : r.multiplicities) table[{p.spec.k, p.spec.omega_index}] = Int(p.multiplicity);
        for (int k = 1; k <= k_cap; ++k)
            for (int rr = 0; rr < k; ++rr) {
                ++total;
                if (table[{k, rr}] == necklace_count(d, k, rr)) ++good;
            }
        ++total;
        if (r.dims_consistent) ++good;
    }
    rep.expect_all("toy annular multiplicities match the necklace formula, k<=" + std::to_string(k_cap) +
                       ", d<=" + std::to_string(d_cap),
                   total, good);
    return rep;
}

// ---------------------------------------------------------------------------
// Umbrella.
// ---------------------------------------------------------------------------
inline std::vector<VerifyReport> verify_all(const std::string& suite = "all", int max_override = 0) {
    std::vector<std::pair<std::string, std::function<VerifyReport()>>> suites = {
        {"counting", [&] { return verify_counting(max_override ? std::min(max_override, 6) : 6,
                                                  max_override ? std::min(max_override, 8) : 8); }},
        {"standard-form",
         [&] { return verify_standard_form(10000, max_override ? std::min(max_override, 4) : 4); }},
        {"gicar", [&] { return verify_gicar_structure(max_override ? std::min(max_override, 4) : 4,
                                                      max_override ? std::min(max_override, 8) : 8); }},
        {"intertwine", [&] { return verify_intertwining(max_override ? std::min(max_override, 4) : 4); }},
        {"gicar-rep",
         [&] { return verify_gicar_representations(max_override ? std::min(max_override, 4) : 4); }},
        {"annular-wedderburn",
         [&] { return verify_annular_wedderburn(max_override ? std::min(max_override, 4) : 4); }},
        {"irreducibles", [&] { return verify_irreducibles(3, 6, 20); }},
        {"toy", [&] { return verify_toy(max_override ? std::min(max_override, 4) : 4); }},
        {"cross", [&] { return verify_cross_consistency(max_override ? std::min(max_override, 6) : 6); }},
    };
    std::vector<VerifyReport> out;
    for (auto& [name, fn] : suites)
        if (suite == "all" || suite == name) out.push_back(fn());
    if (out.empty()) throw std::invalid_argument("verify: unknown suite " + suite);
    return out;
}

}  // namespace gicar
