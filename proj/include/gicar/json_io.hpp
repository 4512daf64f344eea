#pragma once

#include <json.hpp>

#include "gicar/algebra.hpp"
#include "gicar/cmodule.hpp"
#include "gicar/fock.hpp"
#include "gicar/tensorrep.hpp"
#include "gicar/word.hpp"

namespace gicar {

using nlohmann::json;

// scalars: {"order": N, "num": [...], "den": [...]} with decimal strings

inline json to_json(const CycScalar& s) {
    json num = json::array(), den = json::array();
    for (const Rat& c : s.coeffs()) {
        num.push_back(c.get_num().get_str());
        den.push_back(c.get_den().get_str());
    }
    return {{"order", s.order()}, {"num", num}, {"den", den}};
}

inline CycScalar scalar_from_json(const json& j) {
    unsigned order = j.at("order").get<unsigned>();
    const auto& num = j.at("num");
    const auto& den = j.at("den");
    if (num.size() != order || den.size() != order)
        throw std::invalid_argument("scalar: coefficient arrays must have length N");
    std::vector<Rat> coeffs;
    for (std::size_t i = 0; i < order; ++i) {
        Rat c(Int(num[i].get<std::string>()), Int(den[i].get<std::string>()));
        c.canonicalize();
        coeffs.push_back(c);
    }
    return CycScalar::from_coeffs(order, std::move(coeffs));
}

inline json to_json(const ExactMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

inline ExactMatrix matrix_from_json(const json& j) {
    std::size_t r = j.at("rows").get<std::size_t>(), c = j.at("cols").get<std::size_t>();
    ExactMatrix m(r, c);
    const auto& rows = j.at("entries");
    if (rows.size() != r) throw std::invalid_argument("matrix: row count mismatch");
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw std::invalid_argument("matrix: column count mismatch");
        for (std::size_t k = 0; k < c; ++k) m.at(i, k) = scalar_from_json(rows[i][k]);
    }
    return m;
}

// diagrams: {"kind","m","n","through":[[i,j],...],"offset":o}

inline json to_json(const RectDiagram& d) {
    json through = json::array();
    for (auto& [s, u] : d.through) through.push_back(json::array({s, u}));
    return {{"kind", "rect"}, {"m", d.lower}, {"n", d.upper}, {"through", through}, {"offset", 0}};
}

inline json to_json(const AnnDiagram& d) {
    json through = json::array();
    for (int j = 0; j < d.through_count(); ++j) through.push_back(json::array({d.dom[j], d.partner(j)}));
    return {{"kind", "ann"}, {"m", d.inner}, {"n", d.outer}, {"through", through}, {"offset", d.offset}};
}

inline RectDiagram rect_from_json(const json& j) {
    if (j.at("kind").get<std::string>() != "rect") throw std::invalid_argument("expected a rect diagram");
    std::vector<std::pair<int, int>> strands;
    for (const auto& p : j.at("through")) strands.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
    return {j.at("m").get<int>(), j.at("n").get<int>(), std::move(strands)};
}

inline AnnDiagram ann_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "rect") return ann_embed(rect_from_json(j));
    if (kind != "ann") throw std::invalid_argument("expected a diagram kind");
    std::vector<std::pair<int, int>> strands;
    for (const auto& p : j.at("through")) strands.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
    AnnDiagram d = AnnDiagram::from_pairs(j.at("m").get<int>(), j.at("n").get<int>(), strands);
    if (j.contains("offset") && j.at("offset").get<int>() != d.offset)
        throw std::invalid_argument("diagram: offset disagrees with the strand list");
    return d;
}

template <class D>
json to_json(const Decorated<D>& d) {
    json out = to_json(d.base);
    out["dotted"] = d.dotted;
    return out;
}

inline DecoratedRect decorated_rect_from_json(const json& j) {
    std::vector<int> dots;
    if (j.contains("dotted")) dots = j.at("dotted").get<std::vector<int>>();
    return DecoratedRect(rect_from_json(j), std::move(dots));
}

inline DecoratedAnn decorated_ann_from_json(const json& j) {
    std::vector<int> dots;
    if (j.contains("dotted")) dots = j.at("dotted").get<std::vector<int>>();
    return DecoratedAnn(ann_from_json(j), std::move(dots));
}

template <class D>
json comb_to_json(const LinComb<D>& comb) {
    json terms = json::array();
    for (const auto& [d, c] : comb.terms()) terms.push_back({{"coeff", to_json(c)}, {"diagram", to_json(d)}});
    return terms;
}

// words

inline json to_json(const StandardWord& w) {
    return {{"source", w.source},
            {"target", w.target()},
            {"annihilations", w.annihilations},
            {"rot", w.rot},
            {"creations", w.creations},
            {"text", w.str()}};
}

inline StandardWord standard_word_from_json(const json& j) {
    return {j.at("source").get<int>(), j.at("annihilations").get<std::vector<int>>(),
            j.at("rot").get<int>(), j.at("creations").get<std::vector<int>>()};
}

// sequence modules: the bundle consumed by the decompose front end

inline json to_json(const SequenceModule& m) {
    json j;
    j["kind"] = m.annular ? "ann" : "rect";
    j["order"] = m.order;
    j["mmax"] = m.mmax;
    j["dims"] = m.dims;
    json gram = json::array(), create = json::array(), annihilate = json::array(), rot = json::array();
    for (int lv = 0; lv <= m.mmax; ++lv) {
        gram.push_back(to_json(m.gram[lv]));
        json cl = json::array(), al = json::array();
        for (const auto& g : m.create[lv]) cl.push_back(to_json(g));
        for (const auto& g : m.annihilate[lv]) al.push_back(to_json(g));
        create.push_back(std::move(cl));
        annihilate.push_back(std::move(al));
        if (m.annular) rot.push_back(to_json(m.rot[lv]));
    }
    j["gram"] = std::move(gram);
    j["create"] = std::move(create);
    j["annihilate"] = std::move(annihilate);
    if (m.annular) j["rot"] = std::move(rot);
    return j;
}

inline SequenceModule module_from_json(const json& j) {
    SequenceModule m;
    m.annular = j.at("kind").get<std::string>() == "ann";
    m.order = j.at("order").get<unsigned>();
    m.mmax = j.at("mmax").get<int>();
    for (int lv = 0; lv <= m.mmax; ++lv) {
        m.gram.push_back(matrix_from_json(j.at("gram").at(lv)).embedded(m.order));
        m.dims.push_back(m.gram.back().rows());
        std::vector<ExactMatrix> cl, al;
        for (const auto& g : j.at("create").at(lv)) cl.push_back(matrix_from_json(g).embedded(m.order));
        for (const auto& g : j.at("annihilate").at(lv)) al.push_back(matrix_from_json(g).embedded(m.order));
        m.create.push_back(std::move(cl));
        m.annihilate.push_back(std::move(al));
        if (m.annular) m.rot.push_back(matrix_from_json(j.at("rot").at(lv)).embedded(m.order));
    }
    return m;
}

inline json to_json(const Decomposition& d) {
    json pieces = json::array();
    for (const auto& p : d.pieces)
        pieces.push_back({{"k", p.spec.k},
                          {"omega", p.spec.omega_index},
                          {"multiplicity", p.multiplicity}});
    return {{"pieces", pieces}, {"dims_consistent", d.dims_consistent}};
}

inline json to_json(const WedderburnReport& r) {
    json summands = json::array();
    for (const auto& s : r.summands)
        summands.push_back({{"k", s.k}, {"omega", s.omega}, {"size", s.size.get_str()}});
    return {{"kind", r.kind},
            {"n", r.n},
            {"summands", summands},
            {"dimension", r.dimension.get_str()},
            {"basis_count", r.basis_count.get_str()},
            {"units_checked", r.units_checked},
            {"pass", r.pass},
            {"failure", r.failure}};
}

inline json to_json(const std::vector<BratteliRow>& rows) {
    json out = json::array();
    for (const auto& row : rows) {
        json mult = json::array();
        for (const auto& m : row.multiplicities) mult.push_back(m.get_str());
        json edges = json::array();
        for (std::size_t e = 0; e < row.edges.size(); ++e)
            edges.push_back({{"from_k", row.edges[e].first},
                             {"to_k", row.edges[e].second},
                             {"multiplicity", row.edge_multiplicities[e].get_str()}});
        out.push_back({{"level", row.level}, {"multiplicities", mult}, {"edges", edges}});
    }
    return out;
}

inline json to_json(const DegeneracyReport& r) {
    json mult = json::array();
    for (const auto& p : r.multiplicities)
        mult.push_back({{"k", p.spec.k}, {"omega", p.spec.omega_index}, {"multiplicity", p.multiplicity}});
    return {{"d", r.d},
            {"m_max", r.m_max},
            {"annular", r.annular},
            {"multiplicities", mult},
            {"dims_consistent", r.dims_consistent},
            {"necklace_match", r.necklace_match}};
}

inline json to_json(const SeparatingWitness& w) {
    return {{"xi", w.xi},
            {"eta", w.eta},
            {"value", to_json(w.value)},
            {"vanishing_checked", w.vanishing_checked},
            {"vanishing_ok", w.vanishing_ok}};
}

}  // namespace gicar
