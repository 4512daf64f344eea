// gicarkit: command-line front end for the planar rook / GICAR engine.
// Subcommands emit deterministic JSON (default) or text; see README.md.
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gicar/json_io.hpp"
#include "gicar/verify.hpp"

using namespace gicar;

namespace {

int size_cap() {
    const char* env = std::getenv("GICARKIT_MAX");
    if (!env) return 8;
    int v = std::atoi(env);
    return v > 0 ? v : 8;
}

void check_cap(int value, const std::string& what) {
    if (value > size_cap())
        throw std::invalid_argument(what + " = " + std::to_string(value) + " exceeds GICARKIT_MAX = " +
                                    std::to_string(size_cap()));
}

/// wedderburn builds a full matrix-unit system; its own default bound is
/// lower, overridable through GICARKIT_MAX.
void check_wedderburn_cap(int value) {
    int bound = std::getenv("GICARKIT_MAX") ? size_cap() : 5;
    if (value > bound)
        throw std::invalid_argument("n = " + std::to_string(value) +
                                    " exceeds the wedderburn bound (set GICARKIT_MAX to raise it)");
}

/// Inline JSON, or @path to read a file, or "-" for stdin.
json load_json_arg(const std::string& arg) {
    if (arg == "-") return json::parse(std::cin);
    if (!arg.empty() && arg[0] == '@') {
        std::ifstream in(arg.substr(1));
        if (!in) throw std::invalid_argument("cannot open " + arg.substr(1));
        return json::parse(in);
    }
    return json::parse(arg);
}

struct Output {
    bool text = false;
    std::string path;  // empty = stdout

    void emit(const json& payload, const std::string& text_form) const {
        std::ostringstream body;
        if (text) body << text_form << "\n";
        else body << payload.dump(2) << "\n";
        if (path.empty()) {
            std::cout << body.str();
        } else {
            std::ofstream f(path);
            if (!f) throw std::invalid_argument("cannot open " + path);
            f << body.str();
        }
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact engine for the rectangular and annular planar rook / GICAR categories"};
    app.require_subcommand(1);

    Output out;
    app.add_flag("--text", out.text, "human-readable output instead of JSON");
    bool json_flag = false;
    app.add_flag("--json", json_flag, "JSON output (the default)");
    app.add_option("--out", out.path, "write output to a file");
    bool meta = false;
    app.add_flag("--meta", meta, "emit a run-metadata line on stderr (payloads stay deterministic)");

    // compose
    auto* cmd_compose = app.add_subcommand("compose", "compose two basis diagrams (first, then second)");
    std::string first_arg, second_arg;
    cmd_compose->add_option("--first", first_arg, "diagram JSON, @file or -")->required();
    cmd_compose->add_option("--second", second_arg, "diagram JSON, @file or -")->required();

    // enumerate
    auto* cmd_enum = app.add_subcommand("enumerate", "list all basis diagrams");
    std::string enum_kind = "ann";
    int em = 0, en = 0, ek = -1;
    cmd_enum->add_option("--kind", enum_kind, "rect or ann (default ann)");
    cmd_enum->add_option("--m", em)->required();
    cmd_enum->add_option("--n", en)->required();
    cmd_enum->add_option("--k", ek, "restrict to k through strings");

    // count
    auto* cmd_count = app.add_subcommand("count", "closed-form diagram counts");
    std::string count_kind = "ann";
    int cm = 0, cn = 0, ck = -1;
    cmd_count->add_option("--kind", count_kind, "rect or ann (default ann)");
    cmd_count->add_option("--m", cm)->required();
    cmd_count->add_option("--n", cn)->required();
    cmd_count->add_option("--k", ck, "count only k through strings");

    // normalize / psi / psi-inv
    auto* cmd_norm = app.add_subcommand("normalize", "standard form of a word");
    std::string word_arg;
    cmd_norm->add_option("--word", word_arg, "e.g. \"a3 a1 t^2 a*2 a*4 @5\"")->required();

    auto* cmd_psi = app.add_subcommand("psi", "diagram image of a word");
    std::string psi_word;
    bool psi_rect_flag = false;
    cmd_psi->add_option("--word", psi_word)->required();
    cmd_psi->add_flag("--rect", psi_rect_flag, "emit a rectangular diagram (requires rotation-free form)");

    auto* cmd_psiinv = app.add_subcommand("psi-inv", "standard word of a basis diagram");
    std::string psiinv_arg;
    cmd_psiinv->add_option("--diagram", psiinv_arg, "diagram JSON, @file or -")->required();

    // theta / fock-matrix
    auto* cmd_theta = app.add_subcommand("theta", "diagrammatic image of a gauge-invariant CAR word");
    int theta_n = 0;
    std::string theta_word;
    cmd_theta->add_option("--n", theta_n)->required();
    cmd_theta->add_option("--word", theta_word, "e.g. \"a1 a3*\"")->required();

    auto* cmd_fock = app.add_subcommand("fock-matrix", "matrix of a CAR word on Fock space");
    int fock_n = 0;
    std::string fock_word;
    cmd_fock->add_option("--n", fock_n)->required();
    cmd_fock->add_option("--word", fock_word)->required();

    // wedderburn / bratteli
    auto* cmd_wed = app.add_subcommand("wedderburn", "verify the semisimple structure");
    std::string wed_kind = "ann";
    int wed_n = 0;
    cmd_wed->add_option("--kind", wed_kind, "rect or ann");
    cmd_wed->add_option("--n", wed_n)->required();

    auto* cmd_brat = app.add_subcommand("bratteli", "tower branching data");
    int brat_max = 0;
    std::string brat_dot;
    cmd_brat->add_option("--max", brat_max)->required();
    cmd_brat->add_option("--dot", brat_dot, "write DOT to a file, or - for stdout");

    // irr / decompose
    auto* cmd_irr = app.add_subcommand("irr", "generator matrices of an irreducible module");
    std::string irr_kind = "ann";
    int irr_k = 0, irr_omega = 0, irr_mmax = 0;
    cmd_irr->add_option("--kind", irr_kind, "rect or ann");
    cmd_irr->add_option("--k", irr_k)->required();
    cmd_irr->add_option("--omega", irr_omega, "power of the primitive k-th root (ann only)");
    cmd_irr->add_option("--mmax", irr_mmax)->required();

    auto* cmd_dec = app.add_subcommand("decompose", "decompose a module bundle into irreducibles");
    std::string dec_arg;
    cmd_dec->add_option("--module", dec_arg, "SequenceModule JSON, @file or -")->required();

    // toy
    auto* cmd_toy = app.add_subcommand("toy", "tensor-power representation tools");
    int toy_d = 2, toy_mmax = 4;
    cmd_toy->add_option("--d", toy_d, "dimension of the complement (default 2)");
    cmd_toy->add_option("--mmax", toy_mmax, "largest tensor power (default 4)");
    auto* toy_verify = cmd_toy->add_subcommand("verify", "run the tensor-tower identity suite");
    auto* toy_trace = cmd_toy->add_subcommand("trace", "trace of a minimal projection");
    std::string toy_pattern;
    toy_trace->add_option("--pattern", toy_pattern, "strand pattern over {b,d}, e.g. bdd")->required();
    auto* toy_report = cmd_toy->add_subcommand("report", "multiplicity table of the tower");
    bool toy_ann = false;
    toy_report->add_flag("--ann", toy_ann, "annular module (default rectangular)");
    cmd_toy->require_subcommand(1);

    // verify
    auto* cmd_verify = app.add_subcommand("verify", "run acceptance suites");
    std::string verify_suite = "all";
    int verify_max = 0;
    cmd_verify->add_option("--suite", verify_suite,
                           "all, counting, standard-form, gicar, intertwine, gicar-rep, "
                           "annular-wedderburn, irreducibles, toy, cross");
    cmd_verify->add_option("--max", verify_max, "cap the size bounds");

    for (CLI::App* sc : app.get_subcommands([](const CLI::App*) { return true; })) {
        sc->fallthrough();
        for (CLI::App* nested : sc->get_subcommands([](const CLI::App*) { return true; }))
            nested->fallthrough();
    }

    CLI11_PARSE(app, argc, argv);

    if (meta) {
        std::time_t now = std::time(nullptr);
        char buf[64];
        std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&now));
        std::cerr << "{\"timestamp\": \"" << buf << "\"}\n";
    }

    try {
        if (*cmd_compose) {
            json a = load_json_arg(first_arg), b = load_json_arg(second_arg);
            if (a.at("kind") == "rect" && b.at("kind") == "rect") {
                RectDiagram d = compose(rect_from_json(a), rect_from_json(b));
                out.emit(to_json(d), d.str());
            } else {
                AnnDiagram d = compose(ann_from_json(a), ann_from_json(b));
                out.emit(to_json(d), d.str());
            }
        } else if (*cmd_enum) {
            check_cap(em, "m");
            check_cap(en, "n");
            std::optional<int> k = ek >= 0 ? std::optional<int>(ek) : std::nullopt;
            json list = json::array();
            std::string text;
            if (enum_kind == "rect") {
                for (const auto& d : enumerate_rect(em, en, k)) {
                    list.push_back(to_json(d));
                    text += d.str() + "\n";
                }
            } else if (enum_kind == "ann") {
                for (const auto& d : enumerate_ann(em, en, k)) {
                    list.push_back(to_json(d));
                    text += d.str() + "\n";
                }
            } else {
                throw std::invalid_argument("enumerate: kind must be rect or ann");
            }
            out.emit(list, text);
        } else if (*cmd_count) {
            Int value;
            if (count_kind == "ann") value = ck >= 0 ? count_ann(cm, cn, ck) : count_ann(cm, cn);
            else if (count_kind == "rect") value = ck >= 0 ? count_rect(cm, cn, ck) : count_rect(cm, cn);
            else throw std::invalid_argument("count: kind must be rect or ann");
            out.emit(json{{"kind", count_kind}, {"m", cm}, {"n", cn},
                          {"k", ck >= 0 ? json(ck) : json()}, {"count", value.get_str()}},
                     value.get_str());
        } else if (*cmd_norm) {
            StandardWord sw = normalize(parse_word(word_arg));
            out.emit(to_json(sw), sw.str());
        } else if (*cmd_psi) {
            Word w = parse_word(psi_word);
            if (psi_rect_flag) {
                RectDiagram d = psi_rect(normalize(w));
                out.emit(to_json(d), d.str());
            } else {
                AnnDiagram d = psi(w);
                out.emit(to_json(d), d.str());
            }
        } else if (*cmd_psiinv) {
            StandardWord sw = psi_inverse(ann_from_json(load_json_arg(psiinv_arg)));
            out.emit(to_json(sw), sw.str());
        } else if (*cmd_theta) {
            check_cap(theta_n, "n");
            RectComb img = theta(parse_car_word(theta_word), theta_n);
            out.emit(comb_to_json(img), img.str([](const RectDiagram& d) { return d.str(); }));
        } else if (*cmd_fock) {
            check_cap(fock_n, "n");
            CarWord cw = parse_car_word(fock_word);
            ExactMatrix m = gicar_element(cw, fock_n);
            json j = to_json(m);
            j["gauge_invariant"] = gauge_invariant(cw);
            if (!gauge_invariant(cw)) std::cerr << "note: word is not gauge invariant\n";
            out.emit(j, "matrix of size " + std::to_string(m.rows()));
        } else if (*cmd_wed) {
            check_wedderburn_cap(wed_n);
            WedderburnReport rep = wedderburn_check(wed_kind, wed_n);
            out.emit(to_json(rep), rep.str());
            if (!rep.pass) return 1;
        } else if (*cmd_brat) {
            check_cap(brat_max, "max");
            auto rows = bratteli(brat_max);
            if (!brat_dot.empty()) {
                std::string dot = bratteli_dot(rows);
                if (brat_dot == "-") std::cout << dot;
                else {
                    std::ofstream f(brat_dot);
                    if (!f) throw std::invalid_argument("cannot open " + brat_dot);
                    f << dot;
                }
            }
            std::string text;
            for (const auto& row : rows) {
                text += "level " + std::to_string(row.level) + ":";
                for (const auto& m : row.multiplicities) text += " " + m.get_str();
                text += "\n";
            }
            out.emit(to_json(rows), text);
        } else if (*cmd_irr) {
            check_cap(irr_mmax, "mmax");
            SequenceModule v = irr_matrices({irr_kind == "ann", irr_k, irr_omega}, irr_mmax);
            std::string text = "irreducible module, dims:";
            for (auto d : v.dims) text += " " + std::to_string(d);
            out.emit(to_json(v), text);
        } else if (*cmd_dec) {
            SequenceModule m = module_from_json(load_json_arg(dec_arg));
            m = quotient_by_radical(m);
            Decomposition d = decompose(m);
            std::string text;
            for (const auto& p : d.pieces)
                text += "V^" + std::to_string(p.spec.k) +
                        (m.annular ? "(w=" + std::to_string(p.spec.omega_index) + ")" : "") + " x" +
                        std::to_string(p.multiplicity) + "\n";
            text += d.dims_consistent ? "dimension check: ok" : "dimension check: FAILED";
            out.emit(to_json(d), text);
            if (!d.dims_consistent) return 1;
        } else if (*cmd_toy) {
            check_cap(toy_mmax, "mmax");
            ToyContext ctx{toy_d};
            if (*toy_verify) {
                VerifyReport rep = verify_toy(toy_mmax);
                json checks = json::array();
                std::string text;
                for (const auto& c : rep.checks) {
                    checks.push_back({{"id", c.id}, {"expected", c.expected}, {"got", c.got},
                                      {"pass", c.pass}});
                    text += std::string(c.pass ? "PASS " : "FAIL ") + c.id + " [" + c.got + "]\n";
                }
                out.emit(json{{"suite", rep.suite}, {"pass", rep.pass()}, {"checks", checks}}, text);
                if (!rep.pass()) return 1;
            } else if (*toy_trace) {
                ProjectionPattern pat = parse_pattern(toy_pattern);
                RectComb p = minimal_projection(pat);
                CycScalar tr = represent(ctx, p, static_cast<int>(pat.size())).trace();
                out.emit(json{{"pattern", toy_pattern}, {"d", toy_d}, {"trace", to_json(tr)}}, tr.str());
            } else if (*toy_report) {
                DegeneracyReport rep = annular_degeneracy_report(ctx, toy_mmax, toy_ann);
                out.emit(to_json(rep), rep.str());
                if (!rep.dims_consistent || !rep.necklace_match) return 1;
            }
        } else if (*cmd_verify) {
            auto reports = verify_all(verify_suite, verify_max);
            json jr = json::array();
            std::string text;
            bool pass = true;
            for (const auto& rep : reports) {
                pass = pass && rep.pass();
                json checks = json::array();
                for (const auto& c : rep.checks)
                    checks.push_back({{"id", c.id}, {"expected", c.expected}, {"got", c.got},
                                      {"pass", c.pass}});
                jr.push_back({{"suite", rep.suite}, {"pass", rep.pass()}, {"checks", checks}});
                text += std::string(rep.pass() ? "PASS " : "FAIL ") + rep.suite + " (" +
                        std::to_string(rep.checks.size()) + " checks, " + std::to_string(rep.failed()) +
                        " failed)\n";
                for (const auto& c : rep.checks)
                    if (!c.pass)
                        text += "  failed: " + c.id + " expected " + c.expected + " got " + c.got + "\n";
            }
            out.emit(jr, text);
            return pass ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "gicarkit: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
