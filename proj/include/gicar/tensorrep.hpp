#pragma once

#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "gicar/algebra.hpp"
#include "gicar/cmodule.hpp"

namespace gicar {

/// Tensor-power representation space over the scalars: H = (line spanned by
/// the distinguished unit vector zeta) + K with dim K = d.  Basis of H is
/// e_0 = zeta, e_1..e_d spanning K; level m carries the product basis of
/// H^{tensor m} indexed by digit tuples.  kappa is fixed as e_1.
struct ToyContext {
    int d = 2;

    int hdim() const { return d + 1; }
    std::size_t level_dim(int m) const {
        std::size_t out = 1;
        for (int x = 0; x < m; ++x) out *= static_cast<std::size_t>(hdim());
        return out;
    }
    std::size_t tuple_index(const std::vector<int>& t) const {
        std::size_t idx = 0;
        for (int digit : t) idx = idx * hdim() + static_cast<std::size_t>(digit);
        return idx;
    }
    std::vector<int> index_tuple(std::size_t idx, int m) const {
        std::vector<int> t(m);
        for (int slot = m - 1; slot >= 0; --slot) {
            t[slot] = static_cast<int>(idx % hdim());
            idx /= hdim();
        }
        return t;
    }
};

/// Creation at slot i: insert zeta.
inline ExactMatrix toy_create(const ToyContext& ctx, int i, int m) {
    if (i < 1 || i > m + 1) throw std::invalid_argument("toy_create: slot out of range");
    ExactMatrix out(ctx.level_dim(m + 1), ctx.level_dim(m));
    for (std::size_t c = 0; c < ctx.level_dim(m); ++c) {
        auto t = ctx.index_tuple(c, m);
        t.insert(t.begin() + (i - 1), 0);
        out.at(ctx.tuple_index(t), c) = CycScalar(1);
    }
    return out;
}

/// Annihilation at slot i: contract the slot against zeta (zero on K).
inline ExactMatrix toy_annihilate(const ToyContext& ctx, int i, int m) {
    if (i < 1 || i > m) throw std::invalid_argument("toy_annihilate: slot out of range");
    ExactMatrix out(ctx.level_dim(m - 1), ctx.level_dim(m));
    for (std::size_t c = 0; c < ctx.level_dim(m); ++c) {
        auto t = ctx.index_tuple(c, m);
        if (t[i - 1] != 0) continue;
        t.erase(t.begin() + (i - 1));
        out.at(ctx.tuple_index(t), c) = CycScalar(1);
    }
    return out;
}

/// The rotation: cyclic shift of tensor factors moving the last slot first.
inline ExactMatrix toy_rotation(const ToyContext& ctx, int m) {
    ExactMatrix out(ctx.level_dim(m), ctx.level_dim(m));
    for (std::size_t c = 0; c < ctx.level_dim(m); ++c) {
        auto t = ctx.index_tuple(c, m);
        if (m > 0) std::rotate(t.begin(), t.end() - 1, t.end());
        out.at(ctx.tuple_index(t), c) = CycScalar(1);
    }
    return out;
}

/// Odd Jones projection e_{2i-1} = a_i a_i^* on level m.
inline ExactMatrix odd_jones(const ToyContext& ctx, int i, int m) {
    if (i < 1 || i > m) throw std::invalid_argument("odd_jones: slot out of range");
    return toy_create(ctx, i, m - 1) * toy_annihilate(ctx, i, m);
}

/// Matrix of a word on the tensor tower.
inline ExactMatrix represent(const ToyContext& ctx, const Word& w) {
    ExactMatrix acc = ExactMatrix::identity(ctx.level_dim(w.source));
    int level = w.source;
    for (const auto& l : w.letters) {
        ExactMatrix g;
        switch (l.kind) {
            case Letter::Create: g = toy_create(ctx, l.index, level); break;
            case Letter::Annihilate: g = toy_annihilate(ctx, l.index, level); break;
            case Letter::Rotate: g = toy_rotation(ctx, level); break;
            case Letter::RotateInv: g = toy_rotation(ctx, level).transpose(); break;
        }
        acc = g * acc;
        level = letter_target(l, level);
    }
    return acc;
}

inline ExactMatrix represent(const ToyContext& ctx, const StandardWord& sw) {
    return represent(ctx, sw.as_word());
}

/// Matrix of a single basis diagram via the word equivalence.
inline ExactMatrix represent(const ToyContext& ctx, const AnnDiagram& dgm) {
    return represent(ctx, psi_inverse(dgm));
}
inline ExactMatrix represent(const ToyContext& ctx, const RectDiagram& dgm) {
    return represent(ctx, psi_inverse(dgm));
}

template <class D>
ExactMatrix represent(const ToyContext& ctx, const LinComb<D>& comb, int source_level) {
    ExactMatrix acc;
    bool first = true;
    for (const auto& [dgm, c] : comb.terms()) {
        ExactMatrix m = c * represent(ctx, dgm);
        acc = first ? m : acc + m;
        first = false;
    }
    if (first) {
        // empty combination: need the level to size the zero matrix
        return ExactMatrix(ctx.level_dim(source_level), ctx.level_dim(source_level));
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Separating vectors.
// ---------------------------------------------------------------------------

struct SeparatingWitness {
    std::vector<int> xi;   // tuple at the source level: zeta on the annihilated slots
    std::vector<int> eta;  // tuple at the target level: zeta on the created slots
    CycScalar value;
    std::size_t vanishing_checked = 0;
    bool vanishing_ok = false;
};

/// The witness pair of a rectangular standard word: zeta in the cap slots of
/// xi and the cup slots of eta, kappa elsewhere; the pairing is exactly one,
/// and every other standard word of length >= that of x pairs to zero.
inline SeparatingWitness separating_test(const ToyContext& ctx, const StandardWord& x) {
    if (ctx.d < 1) throw std::invalid_argument("separating_test: needs a nonzero complement (d >= 1)");
    if (!x.rectangular()) throw std::invalid_argument("separating_test: rectangular words only");
    SeparatingWitness out;
    int n = x.source, tgt = x.target();
    out.xi.assign(n, 1);  // kappa = e_1
    for (int j : x.annihilations) out.xi[j - 1] = 0;
    out.eta.assign(tgt, 1);
    for (int i : x.creations) out.eta[i - 1] = 0;

    ExactMatrix rep = represent(ctx, x);
    out.value = rep.at(ctx.tuple_index(out.eta), ctx.tuple_index(out.xi));

    out.vanishing_ok = true;
    for (const auto& y : enumerate_standard(n, tgt)) {
        if (!y.rectangular() || y == x || y.length() < x.length()) continue;
        ExactMatrix ry = represent(ctx, y);
        if (!ry.at(ctx.tuple_index(out.eta), ctx.tuple_index(out.xi)).is_zero()) out.vanishing_ok = false;
        ++out.vanishing_checked;
    }
    return out;
}

// ---------------------------------------------------------------------------
// The tower as a Hilbert module, and the degeneracy bookkeeping.
// ---------------------------------------------------------------------------

/// Package levels 0..m_max as a SequenceModule (orthonormal product bases,
/// so every Gram matrix is the identity).  Annular modules are emitted at
/// scalar order lcm(1..m_max) so rotation eigenspaces can be split later.
inline SequenceModule toy_sequence_module(const ToyContext& ctx, int m_max, bool annular) {
    SequenceModule M;
    M.annular = annular;
    M.mmax = m_max;
    unsigned L = 1;
    if (annular)
        for (int k = 2; k <= m_max; ++k) L = static_cast<unsigned>(std::lcm<long>(L, k));
    M.order = L;
    for (int m = 0; m <= m_max; ++m) {
        M.dims.push_back(ctx.level_dim(m));
        M.gram.push_back(ExactMatrix::identity(ctx.level_dim(m), L));
        std::vector<ExactMatrix> creates, anns;
        if (m + 1 <= m_max)
            for (int i = 1; i <= m + 1; ++i) creates.push_back(toy_create(ctx, i, m).embedded(L));
        if (m >= 1)
            for (int i = 1; i <= m; ++i) anns.push_back(toy_annihilate(ctx, i, m).embedded(L));
        M.create.push_back(std::move(creates));
        M.annihilate.push_back(std::move(anns));
        if (annular) M.rot.push_back(toy_rotation(ctx, m).embedded(L));
    }
    return M;
}

/// Number of length-k necklaces over d letters with rotation character
/// zeta_k^r: (1/k) sum_j zeta_k^{-rj} d^{gcd(j,k)}.
inline Int necklace_count(int d, int k, int r) {
    CycScalar sum(Rat(0), static_cast<unsigned>(k));
    for (int j = 0; j < k; ++j) {
        Int p;
        mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(d),
                      static_cast<unsigned long>(std::gcd(j, k)));
        sum += CycScalar::zeta(static_cast<unsigned>(k), -static_cast<long>(r) * j) *
               CycScalar(Rat(p), static_cast<unsigned>(k));
    }
    CycScalar val = CycScalar(rat(1, k), static_cast<unsigned>(k)) * sum;
    Rat q = val.rational_value();
    if (q.get_den() != 1) throw std::logic_error("necklace_count: non-integral value");
    return q.get_num();
}

struct DegeneracyReport {
    int d = 0;
    int m_max = 0;
    bool annular = false;
    std::vector<DecompositionPiece> multiplicities;
    bool dims_consistent = false;
    bool necklace_match = true;  // annular only

    std::string str() const {
        std::ostringstream os;
        os << (annular ? "annular" : "rectangular") << " tower, d=" << d << ", levels 0.." << m_max
           << ":";
        for (const auto& p : multiplicities) {
            os << "  V^" << p.spec.k;
            if (annular && p.spec.k >= 1) os << "(w=" << p.spec.omega_index << ")";
            os << " x" << p.multiplicity;
        }
        if (!dims_consistent) os << "  [dimension check FAILED]";
        if (annular && !necklace_match) os << "  [necklace check FAILED]";
        return os.str();
    }
};

/// Multiplicity table of the tensor tower as a category module.  The d = 0
/// tower collapses to the zeta-line, so only the weight-zero module
/// survives; for d >= 1 the annular weight-k multiplicities are counted by
/// necklaces.
inline DegeneracyReport annular_degeneracy_report(const ToyContext& ctx, int m_max, bool annular) {
    DegeneracyReport rep;
    rep.d = ctx.d;
    rep.m_max = m_max;
    rep.annular = annular;
    Decomposition dec = decompose(toy_sequence_module(ctx, m_max, annular));
    rep.multiplicities = dec.pieces;
    rep.dims_consistent = dec.dims_consistent;
    if (annular)
        for (const auto& p : dec.pieces)
            if (p.spec.k >= 1 &&
                Int(p.multiplicity) != necklace_count(ctx.d, p.spec.k, p.spec.omega_index))
                rep.necklace_match = false;
    return rep;
}

}  // namespace gicar
