#pragma once

#include <deque>
#include <map>
#include <mutex>
#include <tuple>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gicar/diagram.hpp"
#include "gicar/lincomb.hpp"
#include "gicar/matrix.hpp"

namespace gicar {

/// Element of fermionic Fock space over n modes, written in the wedge basis
/// indexed by sorted subsets of {1..n} (the empty set is the vacuum).
struct FockVector {
    int modes = 0;
    LinComb<Subset> coeffs;

    FockVector() = default;
    explicit FockVector(int n) : modes(n) {}
    FockVector(int n, const Subset& s, const CycScalar& c = CycScalar(1)) : modes(n), coeffs(s, c) {}
};

inline CycScalar inner(const FockVector& u, const FockVector& v) {
    if (u.modes != v.modes) throw std::invalid_argument("inner: mode count mismatch");
    CycScalar out;
    for (const auto& [s, c] : u.coeffs.terms()) out += c * v.coeffs.coeff(s).conj();
    return out;
}

/// Wedge-prepend with the reordering sign; kills occupied modes.
inline FockVector car_create(int i, const FockVector& v) {
    if (i < 1 || i > v.modes) throw std::invalid_argument("car_create: index out of range");
    FockVector out(v.modes);
    for (const auto& [s, c] : v.coeffs.terms()) {
        if (std::binary_search(s.begin(), s.end(), i)) continue;
        Subset t = s;
        t.insert(std::lower_bound(t.begin(), t.end(), i), i);
        int below = static_cast<int>(std::lower_bound(s.begin(), s.end(), i) - s.begin());
        out.coeffs.add_term(t, (below % 2 == 0) ? c : -c);
    }
    return out;
}

/// Adjoint of car_create: removes mode i with the alternating sign.
inline FockVector car_annihilate(int i, const FockVector& v) {
    if (i < 1 || i > v.modes) throw std::invalid_argument("car_annihilate: index out of range");
    FockVector out(v.modes);
    for (const auto& [s, c] : v.coeffs.terms()) {
        auto it = std::lower_bound(s.begin(), s.end(), i);
        if (it == s.end() || *it != i) continue;
        int below = static_cast<int>(it - s.begin());
        Subset t = s;
        t.erase(t.begin() + below);
        out.coeffs.add_term(t, (below % 2 == 0) ? c : -c);
    }
    return out;
}

/// One letter of a CAR word; words are written in ordinary operator order,
/// so the rightmost letter acts first.
struct CarLetter {
    bool create;
    int index;
    friend bool operator==(const CarLetter& a, const CarLetter& b) {
        return a.create == b.create && a.index == b.index;
    }
};

using CarWord = std::vector<CarLetter>;

inline FockVector apply_car(const CarWord& w, FockVector v) {
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        v = it->create ? car_create(it->index, v) : car_annihilate(it->index, v);
    return v;
}

/// Wedge basis ordered by (cardinality, lexicographic).
inline std::vector<Subset> wedge_basis(int n) {
    std::vector<Subset> out;
    for (int k = 0; k <= n; ++k)
        subsets_of_size(n, k, [&](const Subset& s) { out.push_back(s); });
    return out;
}

inline std::map<Subset, std::size_t> basis_index(const std::vector<Subset>& basis) {
    std::map<Subset, std::size_t> out;
    for (std::size_t i = 0; i < basis.size(); ++i) out[basis[i]] = i;
    return out;
}

inline bool gauge_invariant(const CarWord& w) {
    long bal = 0;
    for (const auto& l : w) bal += l.create ? 1 : -1;
    return bal == 0;
}

/// Matrix of a CAR word on the 2^n-dimensional Fock space, wedge basis
/// ordered by (cardinality, lexicographic).
inline ExactMatrix gicar_element(const CarWord& w, int n) {
    auto basis = wedge_basis(n);
    auto index = basis_index(basis);
    ExactMatrix m(basis.size(), basis.size());
    for (std::size_t col = 0; col < basis.size(); ++col) {
        FockVector image = apply_car(w, FockVector(n, basis[col]));
        for (const auto& [s, c] : image.coeffs.terms()) m.at(index.at(s), col) += c;
    }
    return m;
}

inline CarWord parse_car_word(const std::string& text) {
    std::istringstream is(text);
    std::string tok;
    CarWord out;
    while (is >> tok) {
        bool create = true;
        std::string body = tok;
        if (body.size() >= 2 && body.substr(body.size() - 1) == "*") {
            create = false;
            body = body.substr(0, body.size() - 1);
        }
        if (body.empty() || body[0] != 'a') throw std::invalid_argument("parse_car_word: bad token " + tok);
        std::size_t start = 1, end = body.size();
        if (body.rfind("a*", 0) == 0) {  // also accept a*3 style
            create = false;
            start = 2;
        }
        out.push_back({create, std::stoi(body.substr(start, end - start))});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Normal ordering.  Rewrites a CAR word into the basis of normal-ordered
// monomials a_{i_k}...a_{i_1} a*_{j_1}...a*_{j_l} with strictly increasing
// index lists, using the anticommutation relations.
// ---------------------------------------------------------------------------

/// Creations on the left, annihilations on the right, indices strictly
/// increasing; acts on the wedge basis by moving the occupied set J to I.
struct NormalMonomial {
    Subset creations;      // I
    Subset annihilations;  // J

    CarWord as_word() const {
        CarWord w;
        for (auto it = creations.rbegin(); it != creations.rend(); ++it) w.push_back({true, *it});
        for (int j : annihilations) w.push_back({false, j});
        return w;
    }
    bool gauge_invariant() const { return creations.size() == annihilations.size(); }
    NormalMonomial adjoint() const { return {annihilations, creations}; }

    friend bool operator==(const NormalMonomial& a, const NormalMonomial& b) {
        return a.creations == b.creations && a.annihilations == b.annihilations;
    }
    friend bool operator<(const NormalMonomial& a, const NormalMonomial& b) {
        return std::tie(a.creations, a.annihilations) < std::tie(b.creations, b.annihilations);
    }
};

inline LinComb<NormalMonomial> normal_order(const CarWord& input) {
    LinComb<NormalMonomial> out;
    std::deque<std::pair<CycScalar, CarWord>> queue{{CycScalar(1), input}};
    while (!queue.empty()) {
        auto [coeff, w] = queue.front();
        queue.pop_front();
        bool rewrote = false;
        for (std::size_t p = 0; p + 1 < w.size() && !rewrote; ++p) {
            const CarLetter &x = w[p], &y = w[p + 1];
            if (!x.create && y.create) {
                // a*_j a_i = delta_ij - a_i a*_j
                if (x.index == y.index) {
                    CarWord dropped = w;
                    dropped.erase(dropped.begin() + p, dropped.begin() + p + 2);
                    queue.emplace_back(coeff, std::move(dropped));
                }
                CarWord swapped = w;
                std::swap(swapped[p], swapped[p + 1]);
                queue.emplace_back(-coeff, std::move(swapped));
                rewrote = true;
            } else if (x.create && y.create && x.index <= y.index) {
                if (x.index == y.index) { rewrote = true; break; }  // square is zero
                CarWord swapped = w;
                std::swap(swapped[p], swapped[p + 1]);
                queue.emplace_back(-coeff, std::move(swapped));
                rewrote = true;
            } else if (!x.create && !y.create && x.index >= y.index) {
                if (x.index == y.index) { rewrote = true; break; }
                CarWord swapped = w;
                std::swap(swapped[p], swapped[p + 1]);
                queue.emplace_back(-coeff, std::move(swapped));
                rewrote = true;
            }
        }
        if (rewrote) continue;
        NormalMonomial m;
        for (const auto& l : w)
            (l.create ? m.creations : m.annihilations).push_back(l.index);
        std::reverse(m.creations.begin(), m.creations.end());
        out.add_term(m, coeff);
    }
    return out;
}

// ---------------------------------------------------------------------------
// The diagrammatic image of the GICAR algebra.  Generator images:
//   a*_i a_i      -> identity with the i-th strand dotted
//   a_i a*_i      -> the broken strand at i
//   a_i a*_{i+1}  -> dotted diagonal strand i -> i+1, broken ends at the
//                    complementary positions (moves a cup from i+1 to i)
// Arbitrary gauge-invariant words are normal ordered and each monomial is
// factored into these generators; longer hops expand by the commutator
// identity  a_b a*_c = (a_b a*_m)(a_m a*_c) - (a_m a*_c)(a_b a*_m),  b < m < c.
// ---------------------------------------------------------------------------

using RectComb = LinComb<RectDiagram>;

/// Operator product in the diagram algebra: x then y reading right to left,
/// i.e. (x*y) acts as x after y.
inline RectComb rp_mul(const RectComb& x, const RectComb& y) { return compose_lin_plain(y, x); }

namespace detail {

inline RectDiagram identity_except(int n, const std::vector<int>& skip_lower,
                                   const std::vector<int>& skip_upper,
                                   std::vector<std::pair<int, int>> extra) {
    for (int x = 1; x <= n; ++x) {
        if (std::find(skip_lower.begin(), skip_lower.end(), x) != skip_lower.end()) continue;
        extra.emplace_back(x, x);
    }
    (void)skip_upper;
    return {n, n, std::move(extra)};
}

}  // namespace detail

/// theta(a*_i a_i): the dotted strand at position i.
inline RectComb theta_unoccupied_projection(int i, int n) {
    if (i < 1 || i > n) throw std::invalid_argument("theta: index out of range");
    RectDiagram base = RectDiagram::identity(n);
    return expand_decorated(DecoratedRect(base, {i}));
}

/// theta(a_i a*_i): the broken strand at position i.
inline RectComb theta_occupied_projection(int i, int n) {
    if (i < 1 || i > n) throw std::invalid_argument("theta: index out of range");
    return RectComb(detail::identity_except(n, {i}, {i}, {}));
}

/// theta(a_b a*_c) for any b, c; the nearest-neighbor cases are single
/// decorated diagrams, longer hops recurse by the commutator identity.
inline RectComb theta_hop(int b, int c, int n) {
    if (b < 1 || c < 1 || b > n || c > n) throw std::invalid_argument("theta: index out of range");
    static std::map<std::tuple<int, int, int>, RectComb> cache;
    static std::mutex mtx;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find({b, c, n});
        if (it != cache.end()) return it->second;
    }
    RectComb out;
    if (b == c) {
        out = theta_occupied_projection(b, n);
    } else if (b + 1 == c) {
        // moves a cup from c to b
        RectDiagram base = detail::identity_except(n, {b, c}, {b, c}, {{b, c}});
        out = expand_decorated(DecoratedRect(base, {b}));
    } else if (c + 1 == b) {
        RectDiagram base = detail::identity_except(n, {b, c}, {b, c}, {{b, c}});
        out = expand_decorated(DecoratedRect(base, {b}));
    } else if (b < c) {
        RectComb inner_hop = theta_hop(b, c - 1, n), last = theta_hop(c - 1, c, n);
        out = rp_mul(inner_hop, last) - rp_mul(last, inner_hop);
    } else {
        RectComb inner_hop = theta_hop(b, c + 1, n), last = theta_hop(c + 1, c, n);
        out = rp_mul(inner_hop, last) - rp_mul(last, inner_hop);
    }
    std::lock_guard<std::mutex> lock(mtx);
    return cache.emplace(std::make_tuple(b, c, n), std::move(out)).first->second;
}

/// theta of a gauge-invariant normal-ordered monomial, by peeling off the
/// factor that carries the largest mode index.
inline RectComb theta_monomial(const NormalMonomial& m, int n) {
    if (!m.gauge_invariant())
        throw std::invalid_argument("theta: monomial is not gauge invariant");
    if (m.creations.empty()) return RectComb(RectDiagram::identity(n));
    int i = m.creations.back(), j = m.annihilations.back();
    if (i >= j) {
        NormalMonomial rest{Subset(m.creations.begin(), m.creations.end() - 1),
                            Subset(m.annihilations.begin(), m.annihilations.end() - 1)};
        return rp_mul(theta_monomial(rest, n), theta_hop(i, j, n));
    }
    return adjoint_lin(theta_monomial(m.adjoint(), n));
}

/// theta of a gauge-invariant CAR word: normal order, then map monomials.
inline RectComb theta(const CarWord& w, int n) {
    for (const auto& l : w)
        if (l.index < 1 || l.index > n) throw std::invalid_argument("theta: index out of range");
    LinComb<NormalMonomial> nf = normal_order(w);
    RectComb out;
    for (const auto& [m, c] : nf.terms()) out += c * theta_monomial(m, n);
    return out;
}

// ---------------------------------------------------------------------------
// The diagrammatic Fock space D_n: diagrams with n top points, no caps and
// all through strands dotted, identified by their cup sets.
// ---------------------------------------------------------------------------

struct DVector {
    int top = 0;
    LinComb<Subset> coeffs;  // keyed by cup set

    DVector() = default;
    explicit DVector(int n) : top(n) {}
    DVector(int n, const Subset& cups, const CycScalar& c = CycScalar(1)) : top(n), coeffs(cups, c) {}
};

inline CycScalar inner(const DVector& u, const DVector& v) {
    if (u.top != v.top) throw std::invalid_argument("inner: size mismatch");
    CycScalar out;
    for (const auto& [s, c] : u.coeffs.terms()) out += c * v.coeffs.coeff(s).conj();
    return out;
}

/// The basis diagram of D_n with cups at U: all other top points are tops
/// of dotted through strands attached to the full bottom row.
inline DecoratedRect d_basis_diagram(int n, const Subset& cups) {
    std::vector<std::pair<int, int>> strands;
    std::vector<int> dots;
    int lower = 0;
    for (int x = 1; x <= n; ++x) {
        if (std::binary_search(cups.begin(), cups.end(), x)) continue;
        ++lower;
        strands.emplace_back(lower, x);
        dots.push_back(lower);
    }
    return DecoratedRect(RectDiagram(n - static_cast<int>(cups.size()), n, std::move(strands)),
                         std::move(dots));
}

/// Spatial identification of Fock space with D_n: occupied set = cup set.
inline DVector big_theta(const FockVector& v) {
    DVector out(v.modes);
    out.coeffs = v.coeffs;
    return out;
}

inline FockVector big_theta_inverse(const DVector& v) {
    FockVector out(v.top);
    out.coeffs = v.coeffs;
    return out;
}

/// Left action of a diagram combination on D_n by stacking on top; a dot
/// meeting a broken end kills the term, so the result stays in the cup-set
/// basis.
inline DVector d_action(const RectComb& x, const DVector& v) {
    DVector out(v.top);
    for (const auto& [cups, cv] : v.coeffs.terms()) {
        DecoratedRect dv = d_basis_diagram(v.top, cups);
        for (const auto& [p, cp] : x.terms()) {
            if (p.lower != v.top || p.upper != v.top)
                throw std::invalid_argument("d_action: size mismatch");
            auto composed = compose_decorated(dv, DecoratedRect(p, {}));
            if (!composed) continue;
            out.coeffs.add_term(composed->base.cups(), cv * cp);
        }
    }
    return out;
}

/// Matrix of a diagram combination acting on D_n, cup sets ordered by
/// (cardinality, lexicographic) to match the wedge basis.
inline ExactMatrix d_matrix(const RectComb& x, int n) {
    auto basis = wedge_basis(n);
    auto index = basis_index(basis);
    ExactMatrix m(basis.size(), basis.size());
    for (std::size_t col = 0; col < basis.size(); ++col) {
        DVector image = d_action(x, DVector(n, basis[col]));
        for (const auto& [s, c] : image.coeffs.terms()) m.at(index.at(s), col) += c;
    }
    return m;
}

}  // namespace gicar
