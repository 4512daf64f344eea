#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "gicar/cyclotomic.hpp"
#include "gicar/lincomb.hpp"

namespace gicar {

using Subset = std::vector<int>;  // sorted index set

inline Int binom(long n, long k) {
    if (k < 0 || k > n || n < 0) return 0;
    Int out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

/// Basis morphism of the rectangular planar rook category RP(m, n):
/// an order-preserving partial injection {1..m} -> {1..n}.  Lower points
/// outside the domain carry caps, upper points outside the image carry cups.
struct RectDiagram {
    int lower = 0;  // m
    int upper = 0;  // n
    std::vector<std::pair<int, int>> through;  // sorted, strictly increasing in both slots

    RectDiagram() = default;
    RectDiagram(int m, int n, std::vector<std::pair<int, int>> strands)
        : lower(m), upper(n), through(std::move(strands)) {
        std::sort(through.begin(), through.end());
        validate();
    }

    static RectDiagram identity(int n) {
        std::vector<std::pair<int, int>> s;
        for (int i = 1; i <= n; ++i) s.emplace_back(i, i);
        return {n, n, std::move(s)};
    }

    int through_count() const { return static_cast<int>(through.size()); }

    std::vector<int> domain() const {
        std::vector<int> out;
        for (auto& [s, u] : through) out.push_back(s);
        return out;
    }
    std::vector<int> image() const {
        std::vector<int> out;
        for (auto& [s, u] : through) out.push_back(u);
        std::sort(out.begin(), out.end());
        return out;
    }
    /// Lower points carrying caps.
    std::vector<int> caps() const {
        std::vector<int> out;
        auto dom = domain();
        for (int i = 1; i <= lower; ++i)
            if (!std::binary_search(dom.begin(), dom.end(), i)) out.push_back(i);
        return out;
    }
    /// Upper points carrying cups.
    std::vector<int> cups() const {
        std::vector<int> out;
        auto img = image();
        for (int i = 1; i <= upper; ++i)
            if (!std::binary_search(img.begin(), img.end(), i)) out.push_back(i);
        return out;
    }

    std::optional<int> apply(int i) const {
        for (auto& [s, u] : through)
            if (s == i) return u;
        return std::nullopt;
    }

    void validate() const {
        if (lower < 0 || upper < 0) throw std::invalid_argument("RectDiagram: negative boundary");
        for (std::size_t j = 0; j < through.size(); ++j) {
            auto [s, u] = through[j];
            if (s < 1 || s > lower || u < 1 || u > upper)
                throw std::invalid_argument("RectDiagram: strand out of range");
            if (j > 0 && (through[j - 1].first >= s || through[j - 1].second >= u))
                throw std::invalid_argument("RectDiagram: strands must be strictly increasing");
        }
    }

    friend bool operator==(const RectDiagram& a, const RectDiagram& b) {
        return a.lower == b.lower && a.upper == b.upper && a.through == b.through;
    }
    friend bool operator<(const RectDiagram& a, const RectDiagram& b) {
        return std::tie(a.lower, a.upper, a.through) < std::tie(b.lower, b.upper, b.through);
    }

    std::string str() const {
        std::ostringstream os;
        os << "rect(" << lower << "->" << upper << ";";
        for (auto& [s, u] : through) os << " " << s << ">" << u;
        os << ")";
        return os.str();
    }
};

/// Basis tangle of the annular planar rook category AP(m, n): a partial
/// injection Z/m -> Z/n preserving cyclic order.  Stored as the sorted
/// domain S, the sorted image T and an offset o in Z/t: listing both
/// boundaries clockwise from their stars, strand j attaches S[j] to
/// T[(j + o) mod t].  The through-string count t fully determines the
/// isotopy class together with (S, T, o), matching the counting formula
/// N(m,n;k) = k C(m,k) C(n,k).
struct AnnDiagram {
    int inner = 0;  // m
    int outer = 0;  // n
    std::vector<int> dom;  // S, sorted
    std::vector<int> img;  // T, sorted
    int offset = 0;        // 0 <= offset < t (0 when t = 0)

    AnnDiagram() = default;
    AnnDiagram(int m, int n, std::vector<int> S, std::vector<int> T, int o)
        : inner(m), outer(n), dom(std::move(S)), img(std::move(T)), offset(o) {
        validate();
    }

    static AnnDiagram identity(int n) {
        std::vector<int> all(n);
        for (int i = 0; i < n; ++i) all[i] = i + 1;
        return {n, n, all, all, 0};
    }

    /// One-click rotation: the image of the abstract rotation generator,
    /// the full matching i -> i+1 (mod n).
    static AnnDiagram rotation(int n, int power = 1) {
        std::vector<int> all(n);
        for (int i = 0; i < n; ++i) all[i] = i + 1;
        int o = n > 0 ? ((power % n) + n) % n : 0;
        return {n, n, all, all, o};
    }

    /// Build from an explicit strand list; rejects matchings that do not
    /// preserve cyclic order.
    static AnnDiagram from_pairs(int m, int n, std::vector<std::pair<int, int>> pairs) {
        std::sort(pairs.begin(), pairs.end());
        std::vector<int> S, T;
        for (auto& [s, u] : pairs) S.push_back(s);
        for (auto& [s, u] : pairs) T.push_back(u);
        std::vector<int> Tsorted = T;
        std::sort(Tsorted.begin(), Tsorted.end());
        int t = static_cast<int>(pairs.size());
        int o = 0;
        if (t > 0) {
            auto it = std::lower_bound(Tsorted.begin(), Tsorted.end(), T[0]);
            if (it == Tsorted.end() || *it != T[0])
                throw std::invalid_argument("AnnDiagram: duplicate image point");
            o = static_cast<int>(it - Tsorted.begin());
            for (int j = 0; j < t; ++j)
                if (Tsorted[(j + o) % t] != T[j])
                    throw std::invalid_argument("AnnDiagram: matching does not preserve cyclic order");
        }
        return {m, n, std::move(S), std::move(Tsorted), o};
    }

    int through_count() const { return static_cast<int>(dom.size()); }

    /// Image point of strand j under the canonical lift, as an integer that
    /// may exceed the outer size (winding recorded additively).
    long lifted_image(int j) const {
        int t = through_count();
        int k = j + offset;
        return img[k % t] + static_cast<long>(outer) * (k / t);
    }

    int partner(int j) const {
        int t = through_count();
        return img[(j + offset) % t];
    }

    std::vector<int> caps() const {
        std::vector<int> out;
        for (int i = 1; i <= inner; ++i)
            if (!std::binary_search(dom.begin(), dom.end(), i)) out.push_back(i);
        return out;
    }
    std::vector<int> cups() const {
        std::vector<int> out;
        for (int i = 1; i <= outer; ++i)
            if (!std::binary_search(img.begin(), img.end(), i)) out.push_back(i);
        return out;
    }

    void validate() const {
        if (inner < 0 || outer < 0) throw std::invalid_argument("AnnDiagram: negative boundary");
        if (dom.size() != img.size()) throw std::invalid_argument("AnnDiagram: |S| != |T|");
        int t = through_count();
        if (t == 0) {
            if (offset != 0) throw std::invalid_argument("AnnDiagram: offset must be 0 when t = 0");
            return;
        }
        if (offset < 0 || offset >= t) throw std::invalid_argument("AnnDiagram: offset out of range");
        for (int j = 0; j < t; ++j) {
            if (dom[j] < 1 || dom[j] > inner || img[j] < 1 || img[j] > outer)
                throw std::invalid_argument("AnnDiagram: boundary point out of range");
            if (j > 0 && (dom[j - 1] >= dom[j] || img[j - 1] >= img[j]))
                throw std::invalid_argument("AnnDiagram: S and T must be strictly increasing");
        }
    }

    friend bool operator==(const AnnDiagram& a, const AnnDiagram& b) {
        return a.inner == b.inner && a.outer == b.outer && a.dom == b.dom && a.img == b.img &&
               a.offset == b.offset;
    }
    friend bool operator<(const AnnDiagram& a, const AnnDiagram& b) {
        return std::tie(a.inner, a.outer, a.dom, a.img, a.offset) <
               std::tie(b.inner, b.outer, b.dom, b.img, b.offset);
    }

    std::string str() const {
        std::ostringstream os;
        os << "ann(" << inner << "->" << outer << "; o=" << offset << ";";
        for (int j = 0; j < through_count(); ++j) os << " " << dom[j] << ">" << partner(j);
        os << ")";
        return os.str();
    }
};

/// Offset-0 embedding of a rectangular diagram as an annular tangle.
inline AnnDiagram ann_embed(const RectDiagram& d) {
    std::vector<int> S, T;
    for (auto& [s, u] : d.through) {
        S.push_back(s);
        T.push_back(u);
    }
    std::sort(T.begin(), T.end());
    return {d.lower, d.upper, std::move(S), std::move(T), 0};
}

/// Inverse of ann_embed; requires offset 0.
inline RectDiagram rect_from_ann(const AnnDiagram& d) {
    if (d.offset != 0) throw std::invalid_argument("rect_from_ann: nonzero offset");
    std::vector<std::pair<int, int>> s;
    for (int j = 0; j < d.through_count(); ++j) s.emplace_back(d.dom[j], d.img[j]);
    return {d.inner, d.outer, std::move(s)};
}

// ---------------------------------------------------------------------------
// Composition.  compose(f, g) stacks g on top of f: f is applied first, so
// the result is the partial injection g o f.  Free-floating strands are
// removed with value 1.
// ---------------------------------------------------------------------------

/// Strand bookkeeping for one composition, used by the decorated layer.
/// Composite strand k joins f's strand f_strand[k] to g's strand g_strand[k].
struct ComposeTrace {
    std::vector<int> f_strand, g_strand;
    std::vector<int> f_capped;  // f strands that end in a cap of g
    std::vector<int> g_cupped;  // g strands that start at a cup of f
};

inline RectDiagram compose(const RectDiagram& f, const RectDiagram& g, ComposeTrace* trace = nullptr) {
    if (f.upper != g.lower)
        throw std::invalid_argument("compose: boundary mismatch " + std::to_string(f.upper) + " vs " +
                                    std::to_string(g.lower));
    std::vector<std::pair<int, int>> strands;
    std::vector<bool> g_used(g.through.size(), false);
    for (std::size_t j = 0; j < f.through.size(); ++j) {
        auto [s, mid] = f.through[j];
        bool matched = false;
        for (std::size_t q = 0; q < g.through.size(); ++q) {
            if (g.through[q].first == mid) {
                strands.emplace_back(s, g.through[q].second);
                g_used[q] = true;
                matched = true;
                if (trace) {
                    trace->f_strand.push_back(static_cast<int>(j));
                    trace->g_strand.push_back(static_cast<int>(q));
                }
                break;
            }
        }
        if (!matched && trace) trace->f_capped.push_back(static_cast<int>(j));
    }
    if (trace)
        for (std::size_t q = 0; q < g.through.size(); ++q)
            if (!g_used[q]) trace->g_cupped.push_back(static_cast<int>(q));
    return {f.lower, g.upper, std::move(strands)};
}

inline AnnDiagram compose(const AnnDiagram& f, const AnnDiagram& g, ComposeTrace* trace = nullptr) {
    if (f.outer != g.inner)
        throw std::invalid_argument("compose: boundary mismatch " + std::to_string(f.outer) + " vs " +
                                    std::to_string(g.inner));
    const int n = f.outer, p = g.outer;
    const int tf = f.through_count(), tg = g.through_count();
    std::vector<int> S;
    std::vector<long> lifted;
    std::vector<bool> g_used(tg, false);
    for (int j = 0; j < tf; ++j) {
        long y = f.lifted_image(j);
        int y0 = static_cast<int>(((y - 1) % n) + 1);
        long wind = (y - y0) / n;
        auto it = std::lower_bound(g.dom.begin(), g.dom.end(), y0);
        if (it != g.dom.end() && *it == y0) {
            int q = static_cast<int>(it - g.dom.begin());
            S.push_back(f.dom[j]);
            lifted.push_back(g.lifted_image(q) + static_cast<long>(p) * wind);
            g_used[q] = true;
            if (trace) {
                trace->f_strand.push_back(j);
                trace->g_strand.push_back(q);
            }
        } else if (trace) {
            trace->f_capped.push_back(j);
        }
    }
    if (trace)
        for (int q = 0; q < tg; ++q)
            if (!g_used[q]) trace->g_cupped.push_back(q);

    const int t = static_cast<int>(S.size());
    if (t == 0) return {f.inner, p, {}, {}, 0};
    std::vector<int> T(t);
    for (int k = 0; k < t; ++k) T[k] = static_cast<int>(((lifted[k] - 1) % p) + 1);
    std::vector<int> Tsorted = T;
    std::sort(Tsorted.begin(), Tsorted.end());
    int o = static_cast<int>(std::lower_bound(Tsorted.begin(), Tsorted.end(), T[0]) - Tsorted.begin());
    AnnDiagram out{f.inner, p, std::move(S), std::move(Tsorted), o};
    for (int k = 0; k < t; ++k)
        if (out.partner(k) != T[k]) throw std::logic_error("compose: cyclic order broken");
    return out;
}

inline RectDiagram adjoint(const RectDiagram& d) {
    std::vector<std::pair<int, int>> s;
    for (auto& [a, b] : d.through) s.emplace_back(b, a);
    return {d.upper, d.lower, std::move(s)};
}

/// Flip the tangle inside out: the inverse partial injection.  The offset
/// negates; the sign is pinned by the involution and anti-homomorphism laws
/// (exhaustively tested at small sizes).
inline AnnDiagram adjoint(const AnnDiagram& d) {
    int t = d.through_count();
    int o = t > 0 ? ((-d.offset) % t + t) % t : 0;
    return {d.outer, d.inner, d.img, d.dom, o};
}

/// Horizontal join of rectangular diagrams.
inline RectDiagram tensor(const RectDiagram& a, const RectDiagram& b) {
    std::vector<std::pair<int, int>> s = a.through;
    for (auto& [x, y] : b.through) s.emplace_back(x + a.lower, y + a.upper);
    return {a.lower + b.lower, a.upper + b.upper, std::move(s)};
}

// ---------------------------------------------------------------------------
// Dotted strands.  A DecoratedDiagram is a basis diagram with a subset of
// its through strands dotted (dotted = identity - broken).  Decorated
// diagrams compose among themselves by the dotted-strand relations: a dot
// meeting a broken end kills the composite, doubled dots collapse, and
// plain floating strands evaluate to 1.
// ---------------------------------------------------------------------------

template <class D>
struct Decorated {
    D base;
    std::vector<int> dotted;  // domain points of dotted through strands, sorted

    Decorated() = default;
    explicit Decorated(D b, std::vector<int> dots = {}) : base(std::move(b)), dotted(std::move(dots)) {
        std::sort(dotted.begin(), dotted.end());
        auto dom = base_domain();
        for (int i : dotted)
            if (!std::binary_search(dom.begin(), dom.end(), i))
                throw std::invalid_argument("Decorated: dot on a non-through strand");
    }

    std::vector<int> base_domain() const {
        if constexpr (std::is_same_v<D, RectDiagram>) {
            return base.domain();
        } else {
            return base.dom;
        }
    }

    bool strand_dotted(int strand_index) const {
        int s;
        if constexpr (std::is_same_v<D, RectDiagram>)
            s = base.through[strand_index].first;
        else
            s = base.dom[strand_index];
        return std::binary_search(dotted.begin(), dotted.end(), s);
    }

    friend bool operator==(const Decorated& a, const Decorated& b) {
        return a.base == b.base && a.dotted == b.dotted;
    }
    friend bool operator<(const Decorated& a, const Decorated& b) {
        return std::tie(a.base, a.dotted) < std::tie(b.base, b.dotted);
    }

    std::string str() const {
        std::ostringstream os;
        os << base.str() << " dots{";
        for (int i : dotted) os << i << " ";
        os << "}";
        return os.str();
    }
};

using DecoratedRect = Decorated<RectDiagram>;
using DecoratedAnn = Decorated<AnnDiagram>;

/// Remove the through strands at the given domain points (they become a
/// cap-cup pair).  Dots on surviving strands are kept.
template <class D>
Decorated<D> break_strands(const Decorated<D>& d, const std::vector<int>& at) {
    std::vector<int> keep_dots;
    for (int x : d.dotted)
        if (!std::binary_search(at.begin(), at.end(), x)) keep_dots.push_back(x);
    if constexpr (std::is_same_v<D, RectDiagram>) {
        std::vector<std::pair<int, int>> strands;
        for (auto& [s, u] : d.base.through)
            if (!std::binary_search(at.begin(), at.end(), s)) strands.emplace_back(s, u);
        return Decorated<D>(D(d.base.lower, d.base.upper, std::move(strands)), std::move(keep_dots));
    } else {
        std::vector<std::pair<int, int>> pairs;
        for (int j = 0; j < d.base.through_count(); ++j)
            if (!std::binary_search(at.begin(), at.end(), d.base.dom[j]))
                pairs.emplace_back(d.base.dom[j], d.base.partner(j));
        return Decorated<D>(D::from_pairs(d.base.inner, d.base.outer, std::move(pairs)),
                            std::move(keep_dots));
    }
}

/// Inclusion-exclusion expansion of the dots into plain basis diagrams.
template <class D>
LinComb<D> expand_decorated(const Decorated<D>& d) {
    LinComb<D> out;
    const std::size_t nd = d.dotted.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << nd); ++mask) {
        std::vector<int> broken;
        for (std::size_t b = 0; b < nd; ++b)
            if (mask & (std::size_t{1} << b)) broken.push_back(d.dotted[b]);
        int sign = (broken.size() % 2 == 0) ? 1 : -1;
        out.add_term(break_strands(d, broken).base, CycScalar(sign));
    }
    return out;
}

/// Compose decorated diagrams, f first.  Returns nullopt when a dotted
/// strand meets a broken end.  The surviving composite always carries
/// coefficient +1 (plain floating strands evaluate to 1).
template <class D>
std::optional<Decorated<D>> compose_decorated(const Decorated<D>& f, const Decorated<D>& g) {
    ComposeTrace tr;
    D base = compose(f.base, g.base, &tr);
    for (int j : tr.f_capped)
        if (f.strand_dotted(j)) return std::nullopt;
    for (int q : tr.g_cupped)
        if (g.strand_dotted(q)) return std::nullopt;
    std::vector<int> dots;
    for (std::size_t k = 0; k < tr.f_strand.size(); ++k) {
        if (f.strand_dotted(tr.f_strand[k]) || g.strand_dotted(tr.g_strand[k])) {
            if constexpr (std::is_same_v<D, RectDiagram>)
                dots.push_back(f.base.through[tr.f_strand[k]].first);
            else
                dots.push_back(f.base.dom[tr.f_strand[k]]);
        }
    }
    return Decorated<D>(std::move(base), std::move(dots));
}

template <class D>
LinComb<Decorated<D>> compose_lin(const LinComb<Decorated<D>>& a, const LinComb<Decorated<D>>& b) {
    return bilinear(a, b, [](const Decorated<D>& x, const Decorated<D>& y) {
        auto c = compose_decorated(x, y);
        return c ? LinComb<Decorated<D>>(*c) : LinComb<Decorated<D>>();
    });
}

template <class D>
LinComb<D> compose_lin_plain(const LinComb<D>& a, const LinComb<D>& b) {
    return bilinear(a, b, [](const D& x, const D& y) { return LinComb<D>(compose(x, y)); });
}

template <class D>
LinComb<D> adjoint_lin(const LinComb<D>& a) {
    LinComb<D> out;
    for (const auto& [d, c] : a.terms()) out.add_term(adjoint(d), c.conj());
    return out;
}

template <class D>
Decorated<D> adjoint(const Decorated<D>& d) {
    std::vector<int> dots;
    for (int j = 0; j < static_cast<int>(d.base_domain().size()); ++j)
        if (d.strand_dotted(j)) {
            if constexpr (std::is_same_v<D, RectDiagram>)
                dots.push_back(d.base.through[j].second);
            else
                dots.push_back(d.base.partner(j));
        }
    return Decorated<D>(adjoint(d.base), std::move(dots));
}

template <class D>
LinComb<Decorated<D>> adjoint_declin(const LinComb<Decorated<D>>& a) {
    LinComb<Decorated<D>> out;
    for (const auto& [d, c] : a.terms()) out.add_term(adjoint(d), c.conj());
    return out;
}

inline DecoratedRect tensor(const DecoratedRect& a, const DecoratedRect& b) {
    std::vector<int> dots = a.dotted;
    for (int x : b.dotted) dots.push_back(x + a.base.lower);
    return DecoratedRect(tensor(a.base, b.base), std::move(dots));
}

// ---------------------------------------------------------------------------
// Enumeration and counting.
// ---------------------------------------------------------------------------

inline void subsets_of_size(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int next) {
        if (static_cast<int>(cur.size()) == k) {
            fn(cur);
            return;
        }
        if (n - next + 1 < k - static_cast<int>(cur.size())) return;
        for (int i = next; i <= n; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(1);
}

/// All rectangular basis diagrams in RP(m, n), lexicographic in (t, S, T).
inline std::vector<RectDiagram> enumerate_rect(int m, int n, std::optional<int> k = std::nullopt) {
    std::vector<RectDiagram> out;
    int tmin = k.value_or(0), tmax = k.value_or(std::min(m, n));
    for (int t = tmin; t <= tmax; ++t) {
        if (t > std::min(m, n)) continue;
        subsets_of_size(m, t, [&](const std::vector<int>& S) {
            subsets_of_size(n, t, [&](const std::vector<int>& T) {
                std::vector<std::pair<int, int>> strands;
                for (int j = 0; j < t; ++j) strands.emplace_back(S[j], T[j]);
                out.emplace_back(m, n, std::move(strands));
            });
        });
    }
    return out;
}

/// All annular basis tangles in AP(m, n), lexicographic in (t, S, T, o).
inline std::vector<AnnDiagram> enumerate_ann(int m, int n, std::optional<int> k = std::nullopt) {
    std::vector<AnnDiagram> out;
    int tmin = k.value_or(0), tmax = k.value_or(std::min(m, n));
    for (int t = tmin; t <= tmax; ++t) {
        if (t > std::min(m, n)) continue;
        if (t == 0) {
            out.emplace_back(m, n, std::vector<int>{}, std::vector<int>{}, 0);
            continue;
        }
        subsets_of_size(m, t, [&](const std::vector<int>& S) {
            subsets_of_size(n, t, [&](const std::vector<int>& T) {
                for (int o = 0; o < t; ++o) out.emplace_back(m, n, S, T, o);
            });
        });
    }
    return out;
}

/// N(m, n; k), the number of annular tangles with k through strings:
/// 1 for k = 0, else m C(n,k) C(m-1,k-1) (= k C(m,k) C(n,k)).
inline Int count_ann(int m, int n, int k) {
    if (k == 0) return 1;
    if (k < 0 || k > std::min(m, n)) return 0;
    return Int(m) * binom(n, k) * binom(m - 1, k - 1);
}

/// N(m, n) = 1 + sum over k of the above.
inline Int count_ann(int m, int n) {
    Int total = 0;
    for (int k = 0; k <= std::min(m, n); ++k) total += count_ann(m, n, k);
    return total;
}

inline Int count_rect(int m, int n, int k) {
    if (k < 0 || k > std::min(m, n)) return 0;
    return binom(m, k) * binom(n, k);
}

inline Int count_rect(int m, int n) {
    Int total = 0;
    for (int k = 0; k <= std::min(m, n); ++k) total += count_rect(m, n, k);
    return total;
}

}  // namespace gicar
