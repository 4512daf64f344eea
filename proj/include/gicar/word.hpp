#pragma once

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "gicar/diagram.hpp"

namespace gicar {

/// One generator of the annular GICAR category.  Create(i) : [n] -> [n+1]
/// inserts a point at position i (1 <= i <= n+1); Annihilate(i) : [n] -> [n-1]
/// is its adjoint (1 <= i <= n); Rotate is the one-click rotation.
struct Letter {
    enum Kind { Create, Annihilate, Rotate, RotateInv } kind;
    int index = 0;  // unused for rotations

    static Letter create(int i) { return {Create, i}; }
    static Letter annihilate(int i) { return {Annihilate, i}; }
    static Letter rot() { return {Rotate, 0}; }
    static Letter rot_inv() { return {RotateInv, 0}; }

    friend bool operator==(const Letter& a, const Letter& b) {
        return a.kind == b.kind && a.index == b.index;
    }
};

inline int letter_target(const Letter& l, int source) {
    switch (l.kind) {
        case Letter::Create:
            if (l.index < 1 || l.index > source + 1)
                throw std::invalid_argument("word: creation index out of range at level " +
                                            std::to_string(source));
            return source + 1;
        case Letter::Annihilate:
            if (source < 1 || l.index < 1 || l.index > source)
                throw std::invalid_argument("word: annihilation index out of range at level " +
                                            std::to_string(source));
            return source - 1;
        default:
            return source;
    }
}

/// Image of a single generator under the equivalence with the annular
/// planar rook category.  Create(i) is the full-domain injection skipping
/// i in the image (a cup at outer position i); Rotate is the full matching
/// x -> x+1 (mod n).
inline AnnDiagram letter_diagram(const Letter& l, int source) {
    switch (l.kind) {
        case Letter::Create: {
            std::vector<int> S(source), T;
            for (int x = 1; x <= source; ++x) S[x - 1] = x;
            for (int x = 1; x <= source + 1; ++x)
                if (x != l.index) T.push_back(x);
            return {source, source + 1, std::move(S), std::move(T), 0};
        }
        case Letter::Annihilate:
            return adjoint(letter_diagram(Letter::create(l.index), source - 1));
        case Letter::Rotate:
            return AnnDiagram::rotation(source, 1);
        case Letter::RotateInv:
            return AnnDiagram::rotation(source, -1);
    }
    throw std::logic_error("letter_diagram: bad kind");
}

/// A composable word of generators.  Letters are stored in application
/// order: letters[0] acts on the source object first.
struct Word {
    int source = 0;
    std::vector<Letter> letters;

    Word() = default;
    Word(int src, std::vector<Letter> ls) : source(src), letters(std::move(ls)) { target(); }

    int target() const {
        int sz = source;
        for (const auto& l : letters) sz = letter_target(l, sz);
        return sz;
    }

    /// Object size right before letter k is applied.
    std::vector<int> level_trace() const {
        std::vector<int> out{source};
        int sz = source;
        for (const auto& l : letters) out.push_back(sz = letter_target(l, sz));
        return out;
    }
};

/// The unique standard form: annihilations at increasing positions, then a
/// bounded rotation power, then creations at increasing positions.
struct StandardWord {
    int source = 0;
    std::vector<int> annihilations;  // j_1 < ... < j_l, subset of [source]
    int rot = 0;                     // 0 <= rot < source - l (0 when the middle object is empty or a point)
    std::vector<int> creations;      // i_1 < ... < i_k, subset of [target]

    StandardWord() = default;
    StandardWord(int src, std::vector<int> J, int r, std::vector<int> I)
        : source(src), annihilations(std::move(J)), rot(r), creations(std::move(I)) {
        validate();
    }

    static StandardWord identity(int n) { return {n, {}, 0, {}}; }

    int middle() const { return source - static_cast<int>(annihilations.size()); }
    int target() const { return middle() + static_cast<int>(creations.size()); }
    bool rectangular() const { return rot == 0; }
    std::size_t length() const { return annihilations.size() + rot + creations.size(); }

    void validate() const {
        int prev = 0;
        for (int j : annihilations) {
            if (j <= prev || j > source) throw std::invalid_argument("StandardWord: bad annihilation list");
            prev = j;
        }
        int mid = middle();
        if (mid < 0) throw std::invalid_argument("StandardWord: too many annihilations");
        if (rot < 0 || (mid >= 1 && rot >= mid) || (mid == 0 && rot != 0))
            throw std::invalid_argument("StandardWord: rotation exponent out of range");
        prev = 0;
        int tgt = target();
        for (int i : creations) {
            if (i <= prev || i > tgt) throw std::invalid_argument("StandardWord: bad creation list");
            prev = i;
        }
    }

    Word as_word() const {
        std::vector<Letter> ls;
        for (auto it = annihilations.rbegin(); it != annihilations.rend(); ++it)
            ls.push_back(Letter::annihilate(*it));
        for (int x = 0; x < rot; ++x) ls.push_back(Letter::rot());
        for (int i : creations) ls.push_back(Letter::create(i));
        return {source, std::move(ls)};
    }

    friend bool operator==(const StandardWord& a, const StandardWord& b) {
        return a.source == b.source && a.annihilations == b.annihilations && a.rot == b.rot &&
               a.creations == b.creations;
    }
    friend bool operator<(const StandardWord& a, const StandardWord& b) {
        return std::tie(a.source, a.annihilations, a.rot, a.creations) <
               std::tie(b.source, b.annihilations, b.rot, b.creations);
    }

    std::string str() const {
        std::ostringstream os;
        bool any = false;
        for (auto it = creations.rbegin(); it != creations.rend(); ++it, any = true) os << "a" << *it << " ";
        if (rot > 0) {
            os << "t";
            if (rot > 1) os << "^" << rot;
            os << " ";
            any = true;
        }
        for (int j : annihilations) {
            os << "a*" << j << " ";
            any = true;
        }
        if (!any) os << "id ";
        os << "@" << source;
        return os.str();
    }
};

/// Adjoint of a word: reverse the letters and star each one.
inline Word adjoint(const Word& w) {
    std::vector<Letter> ls;
    for (std::size_t k = w.letters.size(); k-- > 0;) {
        const Letter& l = w.letters[k];
        switch (l.kind) {
            case Letter::Create: ls.push_back(Letter::annihilate(l.index)); break;
            case Letter::Annihilate: ls.push_back(Letter::create(l.index)); break;
            case Letter::Rotate: ls.push_back(Letter::rot_inv()); break;
            case Letter::RotateInv: ls.push_back(Letter::rot()); break;
        }
    }
    return {w.target(), std::move(ls)};
}

// ---------------------------------------------------------------------------
// Normalization.  The oriented rules, written with the right factor applied
// first (ordinary operator order):
//   cancellation/commutation  a*_i a_j  ->  id (i=j) | a_{j-1} a*_i (i<j) | a_j a*_{i-1} (i>j)
//   rotation past a*          a*_i t    ->  t a*_{i-1} (i>=2) | a*_n (i=1, t acting on [n])
//   rotation past a           t a_j     ->  a_{j+1} t (j<=n) | a_1 (j=n+1, t acting on [n])
//   sorting                   a_c a_d -> a_{d+1} a_c (c<=d),  a*_c a*_d -> a*_d a*_{c+1} (c>=d)
//   exponent                  t^r on [n] -> t^{r mod n}
// Each stage terminates; the result is the unique standard form (uniqueness
// is exercised against the diagram semantics in the test suite).
// ---------------------------------------------------------------------------

inline StandardWord normalize(const Word& input) {
    std::vector<Letter> w = input.letters;
    const int m = input.source;
    input.target();  // validates

    auto level_at = [&](std::size_t pos) {
        int sz = m;
        for (std::size_t k = 0; k < pos; ++k) sz = letter_target(w[k], sz);
        return sz;
    };

    // expand inverse rotations, drop trivial rotations
    for (std::size_t pos = 0; pos < w.size();) {
        int lv = level_at(pos);
        if (w[pos].kind == Letter::RotateInv) {
            w.erase(w.begin() + pos);
            for (int x = 0; x + 1 < lv; ++x) w.insert(w.begin() + pos, Letter::rot());
        } else if (w[pos].kind == Letter::Rotate && lv <= 1) {
            w.erase(w.begin() + pos);
        } else {
            ++pos;
        }
    }

    // push annihilations to the front (application order)
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t pos = 0; pos + 1 < w.size(); ++pos) {
            if (w[pos + 1].kind != Letter::Annihilate) continue;
            int i = w[pos + 1].index;
            if (w[pos].kind == Letter::Create) {
                int j = w[pos].index;
                if (i == j) {
                    w.erase(w.begin() + pos, w.begin() + pos + 2);
                } else if (i < j) {
                    w[pos] = Letter::annihilate(i);
                    w[pos + 1] = Letter::create(j - 1);
                } else {
                    w[pos] = Letter::annihilate(i - 1);
                    w[pos + 1] = Letter::create(j);
                }
                changed = true;
                break;
            }
            if (w[pos].kind == Letter::Rotate) {
                if (i >= 2) {
                    w[pos] = Letter::annihilate(i - 1);
                    w[pos + 1] = Letter::rot();
                } else {
                    int lv = level_at(pos);  // rotation acts on [lv]
                    w[pos] = Letter::annihilate(lv);
                    w.erase(w.begin() + pos + 1);
                }
                changed = true;
                break;
            }
        }
    }

    // move rotations before creations, absorbing top-index creations
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t pos = 0; pos + 1 < w.size(); ++pos) {
            if (w[pos].kind != Letter::Create || w[pos + 1].kind != Letter::Rotate) continue;
            int lv = level_at(pos);  // creation acts on [lv]
            int j = w[pos].index;
            if (j == lv + 1) {
                w[pos] = Letter::create(1);
                w.erase(w.begin() + pos + 1);
            } else {
                w[pos] = Letter::rot();
                w[pos + 1] = Letter::create(j + 1);
            }
            changed = true;
            break;
        }
        // a rotation may have moved next to a trivial level
        for (std::size_t pos = 0; pos < w.size();) {
            if (w[pos].kind == Letter::Rotate && level_at(pos) <= 1) {
                w.erase(w.begin() + pos);
                changed = true;
            } else {
                ++pos;
            }
        }
    }

    // split into the three runs; the fixpoints above force this segregation
    std::vector<int> anns, rots, creates;
    int stage = 0;
    for (const auto& l : w) {
        int s = l.kind == Letter::Annihilate ? 0 : (l.kind == Letter::Rotate ? 1 : 2);
        if (s < stage) throw std::logic_error("normalize: rewriting left an unsegregated word");
        stage = s;
        if (s == 0) anns.push_back(l.index);
        else if (s == 1) rots.push_back(0);
        else creates.push_back(l.index);
    }

    // sort annihilations: application-adjacent (a then b) wants b < a
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t k = 0; k + 1 < anns.size(); ++k) {
            int a = anns[k], b = anns[k + 1];
            if (b >= a) {
                anns[k] = b + 1;
                anns[k + 1] = a;
                changed = true;
            }
        }
    }

    // sort creations: application-adjacent (c then d) wants d > c
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t k = 0; k + 1 < creates.size(); ++k) {
            int c = creates[k], d = creates[k + 1];
            if (d <= c) {
                creates[k] = d;
                creates[k + 1] = c + 1;
                changed = true;
            }
        }
    }

    int mid = m - static_cast<int>(anns.size());
    int r = mid >= 2 ? static_cast<int>(rots.size()) % mid : 0;
    std::vector<int> J(anns.rbegin(), anns.rend());
    return {m, std::move(J), r, creates};
}

inline StandardWord normalize(const StandardWord& sw) { return normalize(sw.as_word()); }

/// Concatenate and normalize; w1 is applied first.
inline StandardWord compose_words(const Word& w1, const Word& w2) {
    if (w1.target() != w2.source)
        throw std::invalid_argument("compose_words: target " + std::to_string(w1.target()) +
                                    " != source " + std::to_string(w2.source));
    std::vector<Letter> ls = w1.letters;
    ls.insert(ls.end(), w2.letters.begin(), w2.letters.end());
    return normalize(Word{w1.source, std::move(ls)});
}

inline StandardWord compose_words(const StandardWord& a, const StandardWord& b) {
    return compose_words(a.as_word(), b.as_word());
}

// ---------------------------------------------------------------------------
// The equivalence with the annular planar rook category.
// ---------------------------------------------------------------------------

/// Direct image of a standard word: caps at the annihilation positions,
/// cups at the creation positions, offset the rotation exponent.
inline AnnDiagram psi(const StandardWord& sw) {
    std::vector<int> S, T;
    for (int x = 1; x <= sw.source; ++x)
        if (!std::binary_search(sw.annihilations.begin(), sw.annihilations.end(), x)) S.push_back(x);
    int tgt = sw.target();
    for (int x = 1; x <= tgt; ++x)
        if (!std::binary_search(sw.creations.begin(), sw.creations.end(), x)) T.push_back(x);
    return {sw.source, tgt, std::move(S), std::move(T), sw.rot};
}

/// Image of an arbitrary word: the composite of its generator images.
inline AnnDiagram psi(const Word& w) {
    AnnDiagram acc = AnnDiagram::identity(w.source);
    int sz = w.source;
    for (const auto& l : w.letters) {
        acc = compose(acc, letter_diagram(l, sz));
        sz = letter_target(l, sz);
    }
    return acc;
}

/// Rectangular image; the word must normalize with no rotation part.
inline RectDiagram psi_rect(const StandardWord& sw) {
    if (!sw.rectangular()) throw std::invalid_argument("psi_rect: word has a rotation part");
    return rect_from_ann(psi(sw));
}

/// Inverse equivalence: read off caps, cups and the relative star position.
inline StandardWord psi_inverse(const AnnDiagram& d) {
    return {d.inner, d.caps(), d.offset, d.cups()};
}

inline StandardWord psi_inverse(const RectDiagram& d) { return psi_inverse(ann_embed(d)); }

/// Index-shifted merge realizing the tensor product of rectangular words.
inline StandardWord tensor_words(const StandardWord& a, const StandardWord& b) {
    if (!a.rectangular() || !b.rectangular())
        throw std::invalid_argument("tensor_words: both factors must be rectangular");
    int n1 = a.target(), m1 = a.source;
    std::vector<int> I = a.creations, J = a.annihilations;
    for (int i : b.creations) I.push_back(i + n1);
    for (int j : b.annihilations) J.push_back(j + m1);
    return {a.source + b.source, std::move(J), 0, std::move(I)};
}

/// All standard forms [m] -> [n].
inline std::vector<StandardWord> enumerate_standard(int m, int n) {
    std::vector<StandardWord> out;
    for (int l = std::max(0, m - n); l <= m; ++l) {
        int k = n - m + l;
        if (k < 0 || k > n) continue;
        int mid = m - l;
        subsets_of_size(m, l, [&](const std::vector<int>& J) {
            subsets_of_size(n, k, [&](const std::vector<int>& I) {
                int rmax = mid >= 1 ? mid : 1;
                for (int r = 0; r < rmax; ++r) out.emplace_back(m, J, r, I);
            });
        });
    }
    return out;
}

// ---------------------------------------------------------------------------
// Text syntax: "a3 a1 t^2 a*2 a*4 @5" reads as the morphism with source [5]
// whose rightmost letter is applied first.
// ---------------------------------------------------------------------------

inline Word parse_word(const std::string& text) {
    std::istringstream is(text);
    std::string tok;
    std::vector<std::pair<char, int>> math_order;  // ('a', i), ('A', j) = a*_j, ('t', power)
    std::optional<int> source;
    while (is >> tok) {
        if (tok[0] == '@') {
            source = std::stoi(tok.substr(1));
        } else if (tok == "id") {
            continue;
        } else if (tok[0] == 't') {
            int p = 1;
            if (tok.size() > 1) {
                if (tok[1] != '^') throw std::invalid_argument("parse_word: bad token " + tok);
                p = std::stoi(tok.substr(2));
            }
            math_order.emplace_back('t', p);
        } else if (tok.rfind("a*", 0) == 0) {
            math_order.emplace_back('A', std::stoi(tok.substr(2)));
        } else if (tok[0] == 'a') {
            math_order.emplace_back('a', std::stoi(tok.substr(1)));
        } else {
            throw std::invalid_argument("parse_word: bad token " + tok);
        }
    }
    if (!source) throw std::invalid_argument("parse_word: missing @source");
    std::vector<Letter> ls;
    for (auto it = math_order.rbegin(); it != math_order.rend(); ++it) {
        auto [c, v] = *it;
        if (c == 'a') ls.push_back(Letter::create(v));
        else if (c == 'A') ls.push_back(Letter::annihilate(v));
        else
            for (int x = 0; x < std::abs(v); ++x) ls.push_back(v > 0 ? Letter::rot() : Letter::rot_inv());
    }
    return {*source, std::move(ls)};
}

inline std::string word_str(const Word& w) {
    std::ostringstream os;
    for (std::size_t k = w.letters.size(); k-- > 0;) {
        const Letter& l = w.letters[k];
        switch (l.kind) {
            case Letter::Create: os << "a" << l.index << " "; break;
            case Letter::Annihilate: os << "a*" << l.index << " "; break;
            case Letter::Rotate: os << "t "; break;
            case Letter::RotateInv: os << "t^-1 "; break;
        }
    }
    if (w.letters.empty()) os << "id ";
    os << "@" << w.source;
    return os.str();
}

}  // namespace gicar
