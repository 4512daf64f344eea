#pragma once

#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gicar/matrix.hpp"
#include "gicar/word.hpp"

namespace gicar {

/// Label of an irreducible Hilbert module: weight k, and for the annular
/// category the power omega_index of the primitive k-th root of unity that
/// is the rotation eigenvalue on the lowest-weight line.
struct IrrModuleSpec {
    bool annular = false;
    int k = 0;
    int omega_index = 0;  // 0 <= omega_index < max(k,1)

    friend bool operator==(const IrrModuleSpec& a, const IrrModuleSpec& b) {
        return a.annular == b.annular && a.k == b.k && a.omega_index == b.omega_index;
    }
    friend bool operator<(const IrrModuleSpec& a, const IrrModuleSpec& b) {
        return std::tie(a.annular, a.k, a.omega_index) < std::tie(b.annular, b.k, b.omega_index);
    }
};

/// A finite-dimensional Hilbert module for the rectangular or annular
/// category, given by per-level Gram matrices and generator matrices.
/// create[m][i-1] maps level m to m+1 (i = 1..m+1); annihilate[m][i-1]
/// maps level m to m-1 (i = 1..m); rot[m] acts on level m (annular only).
struct SequenceModule {
    bool annular = false;
    unsigned order = 1;  // scalar order shared by all matrices
    int mmax = 0;
    std::vector<std::size_t> dims;
    std::vector<ExactMatrix> gram;
    std::vector<std::vector<ExactMatrix>> create;
    std::vector<std::vector<ExactMatrix>> annihilate;
    std::vector<ExactMatrix> rot;

    std::size_t dim(int m) const { return m >= 0 && m <= mmax ? dims[m] : 0; }
};

/// Check the category relations and adjointness as exact matrix identities.
/// Returns the names of all failing identities (empty = valid module).
inline std::vector<std::string> validate_module(const SequenceModule& M) {
    std::vector<std::string> bad;
    auto name = [](const std::string& s, int m, int i, int j = -1) {
        std::ostringstream os;
        os << s << " at level " << m << " (i=" << i;
        if (j >= 0) os << ", j=" << j;
        os << ")";
        return os.str();
    };
    for (int m = 0; m <= M.mmax; ++m) {
        // adjointness G_{m+1} C_i = A_i^dag G_m
        if (m + 1 <= M.mmax)
            for (int i = 1; i <= m + 1; ++i) {
                const ExactMatrix& C = M.create[m][i - 1];
                const ExactMatrix& A = M.annihilate[m + 1][i - 1];
                if (!(M.gram[m + 1] * C == A.conj_transpose() * M.gram[m]))
                    bad.push_back(name("adjointness", m, i));
            }
        // AG1 on creations
        if (m + 2 <= M.mmax)
            for (int i = 1; i <= m + 2; ++i)
                for (int j = i + 1; j <= m + 2; ++j) {
                    if (j - 1 > m + 1 || i > m + 1) continue;
                    const ExactMatrix lhs = M.create[m + 1][i - 1] * M.create[m][j - 2];
                    const ExactMatrix rhs = M.create[m + 1][j - 1] * M.create[m][i - 1];
                    if (!(lhs == rhs)) bad.push_back(name("creation commutation", m, i, j));
                }
        // AG2
        if (m + 1 <= M.mmax)
            for (int i = 1; i <= m + 1; ++i)
                for (int j = 1; j <= m + 1; ++j) {
                    const ExactMatrix lhs = M.annihilate[m + 1][i - 1] * M.create[m][j - 1];
                    ExactMatrix rhs;
                    if (i == j) rhs = ExactMatrix::identity(M.dims[m], M.order);
                    else if (i < j) rhs = (m >= 1) ? M.create[m - 1][j - 2] * M.annihilate[m][i - 1]
                                                   : ExactMatrix(M.dims[m], M.dims[m], M.order);
                    else rhs = (m >= 1) ? M.create[m - 1][j - 1] * M.annihilate[m][i - 2]
                              : ExactMatrix(M.dims[m], M.dims[m], M.order);
                    if (m == 0 && i != j) {
                        if (!lhs.is_zero()) bad.push_back(name("cancellation", m, i, j));
                        continue;
                    }
                    if (!(lhs == rhs)) bad.push_back(name("cancellation", m, i, j));
                }
        if (M.annular) {
            const ExactMatrix& R = M.rot[m];
            // AG3: R^m = 1 and unitarity against the form
            ExactMatrix pw = ExactMatrix::identity(M.dims[m], M.order);
            for (int x = 0; x < std::max(m, 1); ++x) pw = pw * R;
            if (!(pw == ExactMatrix::identity(M.dims[m], M.order)))
                bad.push_back(name("rotation period", m, 0));
            if (!(R.conj_transpose() * M.gram[m] * R == M.gram[m]))
                bad.push_back(name("rotation unitarity", m, 0));
            // AG4
            if (m + 1 <= M.mmax)
                for (int i = 2; i <= m + 1; ++i)
                    if (!(M.create[m][i - 1] * R == M.rot[m + 1] * M.create[m][i - 2]))
                        bad.push_back(name("rotation migration (create)", m, i));
            if (m >= 1)
                for (int i = 2; i <= m; ++i)
                    if (!(M.annihilate[m][i - 1] * R == M.rot[m - 1] * M.annihilate[m][i - 2]))
                        bad.push_back(name("rotation migration (annihilate)", m, i));
        }
    }
    return bad;
}

// ---------------------------------------------------------------------------
// The irreducible modules.  At level m the basis is indexed by the cup sets
// of the creation monomials applied to the lowest-weight vector; generators
// act by normalizing the composite word and evaluating: any annihilation
// reaching the lowest-weight vector kills the term (it is uncappable), a
// residual rotation contributes omega^r.
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<Subset> irr_basis(int k, int m) {
    std::vector<Subset> out;
    if (m < k) return out;
    subsets_of_size(m, m - k, [&](const Subset& I) { out.push_back(I); });
    return out;
}

}  // namespace detail

/// Generator matrices of V^k (rectangular) or V^{k, omega} (annular) up to
/// level m_max, in the orthonormal monomial basis.  The Gram recipe is also
/// evaluated from the three determining properties and checked to be the
/// identity before returning.
inline SequenceModule irr_matrices(const IrrModuleSpec& spec, int m_max) {
    if (spec.k < 0) throw std::invalid_argument("irr_matrices: negative weight");
    if (m_max < spec.k) throw std::invalid_argument("irr_matrices: m_max below the weight");
    const int k = spec.k;
    const unsigned ord = (spec.annular && k >= 2) ? static_cast<unsigned>(k) : 1;
    if (!spec.annular && spec.omega_index != 0)
        throw std::invalid_argument("irr_matrices: rectangular modules carry no eigenvalue");
    if (spec.omega_index < 0 || spec.omega_index >= std::max(k, 1))
        throw std::invalid_argument("irr_matrices: omega index out of range");

    SequenceModule M;
    M.annular = spec.annular;
    M.order = ord;
    M.mmax = m_max;

    auto creation_word = [&](const Subset& I) { return StandardWord(k, {}, 0, I); };

    // evaluate a word applied to the lowest-weight vector: zero if any
    // annihilation survives normalization, else omega^r times the basis
    // vector of the creation set
    auto evaluate = [&](const StandardWord& sw) -> std::optional<std::pair<Subset, CycScalar>> {
        if (!sw.annihilations.empty()) return std::nullopt;
        CycScalar c(Rat(1), ord);
        if (sw.rot != 0) {
            if (!spec.annular) throw std::logic_error("irr_matrices: rotation in a rectangular module");
            c = CycScalar::zeta(ord, static_cast<long>(spec.omega_index) * sw.rot);
        }
        return std::make_pair(sw.creations, c);
    };

    std::vector<std::map<Subset, std::size_t>> index(m_max + 1);
    for (int m = 0; m <= m_max; ++m) {
        auto basis = detail::irr_basis(k, m);
        M.dims.push_back(basis.size());
        for (std::size_t b = 0; b < basis.size(); ++b) index[m][basis[b]] = b;
    }

    for (int m = 0; m <= m_max; ++m) {
        auto basis = detail::irr_basis(k, m);
        // gram from the determining properties
        ExactMatrix G(basis.size(), basis.size(), ord);
        for (std::size_t a = 0; a < basis.size(); ++a)
            for (std::size_t b = 0; b < basis.size(); ++b) {
                StandardWord pairing =
                    compose_words(creation_word(basis[a]).as_word(), adjoint(creation_word(basis[b]).as_word()));
                auto val = evaluate(pairing);
                if (val && val->first.empty()) G.at(b, a) = val->second;
            }
        if (!(G == ExactMatrix::identity(basis.size(), ord)))
            throw std::logic_error("irr_matrices: monomial basis failed to be orthonormal");
        M.gram.push_back(std::move(G));

        auto act = [&](const Word& gen, int target_level) {
            ExactMatrix out(M.dims[target_level], basis.size(), ord);
            for (std::size_t b = 0; b < basis.size(); ++b) {
                StandardWord img = compose_words(creation_word(basis[b]).as_word(), gen);
                auto val = evaluate(img);
                if (!val) continue;
                out.at(index[target_level].at(val->first), b) = val->second;
            }
            return out;
        };

        std::vector<ExactMatrix> creates, anns;
        if (m + 1 <= m_max)
            for (int i = 1; i <= m + 1; ++i) creates.push_back(act(Word(m, {Letter::create(i)}), m + 1));
        if (m >= 1)
            for (int i = 1; i <= m; ++i) anns.push_back(act(Word(m, {Letter::annihilate(i)}), m - 1));
        else
            anns.clear();
        M.create.push_back(std::move(creates));
        M.annihilate.push_back(std::move(anns));
        if (spec.annular) M.rot.push_back(act(Word(m, {Letter::rot()}), m));
    }
    return M;
}

// ---------------------------------------------------------------------------
// Lowest-weight extraction and full decomposition.
// ---------------------------------------------------------------------------

/// Basis (as matrix columns) of the intersection of the kernels of all
/// annihilations leaving level k; for annular modules, also the split of
/// that space into rotation eigenspaces indexed by the power of zeta_k.
struct LowestWeightSpace {
    ExactMatrix basis;                       // dim(k) x w
    std::vector<ExactMatrix> eigenspaces;    // annular: per omega_index, columns in module coordinates
};

inline ExactMatrix kernel_of_annihilators(const SequenceModule& M, int k) {
    if (k < 0 || k > M.mmax) throw std::invalid_argument("lowest_weight_space: level out of range");
    if (k == 0 || M.dims[k] == 0) {
        ExactMatrix id = ExactMatrix::identity(M.dims[k], M.order);
        return id;
    }
    std::vector<ExactMatrix> stack;
    for (int i = 1; i <= k; ++i) stack.push_back(M.annihilate[k][i - 1]);
    return ExactMatrix::vcat(stack).kernel();
}

inline LowestWeightSpace lowest_weight_space(const SequenceModule& M, int k) {
    LowestWeightSpace out;
    out.basis = kernel_of_annihilators(M, k);
    if (!M.annular || out.basis.cols() == 0) return out;
    int period = std::max(k, 1);
    if (period > 1 && M.order % static_cast<unsigned>(period) != 0)
        throw std::invalid_argument("lowest_weight_space: scalar order " + std::to_string(M.order) +
                                    " cannot express the level-" + std::to_string(k) +
                                    " rotation eigenvalues");
    // restrict the rotation to the kernel: R basis = basis * Rres
    const ExactMatrix& R = M.rot[k];
    ExactMatrix Rres = out.basis.solve(R * out.basis);
    for (int r = 0; r < period; ++r) {
        CycScalar omega = CycScalar::zeta(M.order, static_cast<long>(M.order / period) * r);
        ExactMatrix shifted = Rres - omega * ExactMatrix::identity(Rres.rows(), M.order);
        out.eigenspaces.push_back(out.basis * shifted.kernel());
    }
    return out;
}

struct DecompositionPiece {
    IrrModuleSpec spec;
    std::size_t multiplicity = 0;
};

struct Decomposition {
    std::vector<DecompositionPiece> pieces;
    bool dims_consistent = false;
};

/// Canonical decomposition into irreducibles: the lowest-weight space at
/// each level (split into rotation eigenspaces for annular modules) counts
/// the multiplicities.  Dimension bookkeeping across all levels certifies
/// completeness.
inline Decomposition decompose(const SequenceModule& M) {
    auto bad = validate_module(M);
    if (!bad.empty()) throw std::invalid_argument("decompose: module relations fail: " + bad.front());
    Decomposition out;
    for (int k = 0; k <= M.mmax; ++k) {
        LowestWeightSpace lw = lowest_weight_space(M, k);
        if (M.annular) {
            for (std::size_t r = 0; r < lw.eigenspaces.size(); ++r)
                if (lw.eigenspaces[r].cols() > 0)
                    out.pieces.push_back({{true, k, static_cast<int>(r)}, lw.eigenspaces[r].cols()});
        } else if (lw.basis.cols() > 0) {
            out.pieces.push_back({{false, k, 0}, lw.basis.cols()});
        }
    }
    out.dims_consistent = true;
    for (int m = 0; m <= M.mmax; ++m) {
        Int expect = 0;
        for (const auto& p : out.pieces) expect += Int(p.multiplicity) * binom(m, p.spec.k);
        if (expect != Int(M.dims[m])) out.dims_consistent = false;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Radical quotient for degenerate sesquilinear forms.
// ---------------------------------------------------------------------------

/// Quotient each level by the radical of its Gram form, re-expressing the
/// generator actions in a basis of surviving vectors.
inline SequenceModule quotient_by_radical(const SequenceModule& M) {
    SequenceModule Q;
    Q.annular = M.annular;
    Q.order = M.order;
    Q.mmax = M.mmax;
    std::vector<std::vector<std::size_t>> keep(M.mmax + 1);
    for (int m = 0; m <= M.mmax; ++m) {
        // greedy choice of a basis whose principal Gram block stays invertible
        std::vector<std::size_t> chosen;
        std::size_t target = M.dims[m] - M.gram[m].kernel().cols();
        for (std::size_t j = 0; j < M.dims[m] && chosen.size() < target; ++j) {
            std::vector<std::size_t> trial = chosen;
            trial.push_back(j);
            ExactMatrix sub(trial.size(), trial.size(), M.order);
            for (std::size_t a = 0; a < trial.size(); ++a)
                for (std::size_t b = 0; b < trial.size(); ++b) sub.at(a, b) = M.gram[m].at(trial[a], trial[b]);
            if (sub.rank() == trial.size()) chosen = std::move(trial);
        }
        if (chosen.size() != target)
            throw std::logic_error("quotient_by_radical: no nondegenerate principal block");
        keep[m] = chosen;
        Q.dims.push_back(chosen.size());
        ExactMatrix G(chosen.size(), chosen.size(), M.order);
        for (std::size_t a = 0; a < chosen.size(); ++a)
            for (std::size_t b = 0; b < chosen.size(); ++b) G.at(a, b) = M.gram[m].at(keep[m][a], keep[m][b]);
        Q.gram.push_back(std::move(G));
    }
    // quotient coordinates of the class of vector v at level m:
    // solve G_B x = (<v, e_b>)_b
    auto project = [&](int m, const ExactMatrix& vecs) {
        ExactMatrix rhs(keep[m].size(), vecs.cols(), M.order);
        ExactMatrix pairings = M.gram[m] * vecs;
        for (std::size_t a = 0; a < keep[m].size(); ++a)
            for (std::size_t c = 0; c < vecs.cols(); ++c) rhs.at(a, c) = pairings.at(keep[m][a], c);
        return Q.gram[m].solve(rhs);
    };
    for (int m = 0; m <= M.mmax; ++m) {
        std::vector<ExactMatrix> creates, anns;
        auto columns = [&](int src) {
            ExactMatrix cols(M.dims[src], keep[src].size(), M.order);
            for (std::size_t j = 0; j < keep[src].size(); ++j) cols.at(keep[src][j], j) = CycScalar(Rat(1), M.order);
            return cols;
        };
        if (m + 1 <= M.mmax)
            for (int i = 1; i <= m + 1; ++i) creates.push_back(project(m + 1, M.create[m][i - 1] * columns(m)));
        if (m >= 1)
            for (int i = 1; i <= m; ++i) anns.push_back(project(m - 1, M.annihilate[m][i - 1] * columns(m)));
        Q.create.push_back(std::move(creates));
        Q.annihilate.push_back(std::move(anns));
        if (M.annular) Q.rot.push_back(project(m, M.rot[m] * columns(m)));
    }
    return Q;
}

/// Direct sum of modules with matching kind, scalar order and level range.
inline SequenceModule direct_sum(const std::vector<SequenceModule>& parts) {
    if (parts.empty()) throw std::invalid_argument("direct_sum: empty");
    SequenceModule out;
    out.annular = parts[0].annular;
    out.order = parts[0].order;
    out.mmax = parts[0].mmax;
    auto block_diag = [&](const std::vector<ExactMatrix>& blocks) {
        std::size_t r = 0, c = 0;
        for (const auto& b : blocks) {
            r += b.rows();
            c += b.cols();
        }
        ExactMatrix m(r, c, out.order);
        std::size_t ro = 0, co = 0;
        for (const auto& b : blocks) {
            for (std::size_t i = 0; i < b.rows(); ++i)
                for (std::size_t j = 0; j < b.cols(); ++j) m.at(ro + i, co + j) = b.at(i, j);
            ro += b.rows();
            co += b.cols();
        }
        return m;
    };
    for (int m = 0; m <= out.mmax; ++m) {
        std::vector<ExactMatrix> g;
        std::size_t d = 0;
        for (const auto& p : parts) {
            if (p.annular != out.annular || p.order != out.order || p.mmax != out.mmax)
                throw std::invalid_argument("direct_sum: incompatible parts");
            g.push_back(p.gram[m]);
            d += p.dims[m];
        }
        out.dims.push_back(d);
        out.gram.push_back(block_diag(g));
        std::vector<ExactMatrix> creates, anns;
        if (m + 1 <= out.mmax)
            for (int i = 1; i <= m + 1; ++i) {
                std::vector<ExactMatrix> blocks;
                for (const auto& p : parts) blocks.push_back(p.create[m][i - 1]);
                creates.push_back(block_diag(blocks));
            }
        if (m >= 1)
            for (int i = 1; i <= m; ++i) {
                std::vector<ExactMatrix> blocks;
                for (const auto& p : parts) blocks.push_back(p.annihilate[m][i - 1]);
                anns.push_back(block_diag(blocks));
            }
        out.create.push_back(std::move(creates));
        out.annihilate.push_back(std::move(anns));
        if (out.annular) {
            std::vector<ExactMatrix> blocks;
            for (const auto& p : parts) blocks.push_back(p.rot[m]);
            out.rot.push_back(block_diag(blocks));
        }
    }
    return out;
}

/// Re-express every level in a new basis given by the columns of unitary
/// matrices Q[m]: the gram becomes Q^dag G Q and a generator from level m
/// to m' becomes Q_{m'}^dag g Q_m.
inline SequenceModule conjugate_levels(const SequenceModule& M, const std::vector<ExactMatrix>& Q) {
    SequenceModule out = M;
    for (int m = 0; m <= M.mmax; ++m) {
        out.gram[m] = Q[m].conj_transpose() * M.gram[m] * Q[m];
        if (m + 1 <= M.mmax)
            for (int i = 1; i <= m + 1; ++i)
                out.create[m][i - 1] = Q[m + 1].conj_transpose() * M.create[m][i - 1] * Q[m];
        if (m >= 1)
            for (int i = 1; i <= m; ++i)
                out.annihilate[m][i - 1] = Q[m - 1].conj_transpose() * M.annihilate[m][i - 1] * Q[m];
        if (M.annular) out.rot[m] = Q[m].conj_transpose() * M.rot[m] * Q[m];
    }
    return out;
}

}  // namespace gicar
