// nmcoh: exact Hochschild cohomology calculator for the algebras N_m.
//
// Commands: phi, hh, e2, cup, bracket, tangent, n2, verify.
// Formats: json (default), csv, latex. Exit codes: 0 success, 1 failed
// verification, 2 usage or domain error. Output is deterministic.

#include "bimod.hpp"
#include "exactla.hpp"
#include "ghstructure.hpp"
#include "homology.hpp"
#include "qma.hpp"
#include "specseq.hpp"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

namespace {

using exactla::FinAbGroup;
using exactla::Ring;
using nlohmann::json;

enum class Format { json_out, csv, latex };

Format parse_format(const std::string& name) {
    if (name == "json") return Format::json_out;
    if (name == "csv") return Format::csv;
    if (name == "latex") return Format::latex;
    throw CLI::ValidationError("--format", "expected json, csv, or latex");
}

json group_json(const FinAbGroup& g) {
    return json{{"free_rank", g.free_rank}, {"torsion", g.torsion}};
}

std::string torsion_cell(const std::vector<long long>& torsion) {
    std::ostringstream out;
    for (size_t k = 0; k < torsion.size(); ++k) out << (k ? " " : "") << torsion[k];
    return out.str();
}

std::string group_latex(const FinAbGroup& g) {
    if (g.is_trivial()) return "0";
    std::ostringstream out;
    bool first = true;
    if (g.free_rank > 0) {
        out << "\\mathbb{Z}";
        if (g.free_rank > 1) out << "^{" << g.free_rank << "}";
        first = false;
    }
    for (long long t : g.torsion) {
        if (!first) out << " \\oplus ";
        out << "\\mathbb{Z}/" << t;
        first = false;
    }
    return out.str();
}

std::string csv_quote(const std::string& cell) {
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void emit_json(const std::string& command, const json& params, const json& result) {
    json doc{{"command", command}, {"params", params}, {"result", result}};
    std::cout << doc.dump(2) << "\n";
}

void emit_rows(Format format, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    if (format == Format::csv) {
        for (size_t k = 0; k < header.size(); ++k)
            std::cout << (k ? "," : "") << header[k];
        std::cout << "\n";
        for (const auto& row : rows) {
            for (size_t k = 0; k < row.size(); ++k) {
                if (k) std::cout << ",";
                bool plain = row[k].find_first_of(",\"\n") == std::string::npos;
                std::cout << (plain ? row[k] : csv_quote(row[k]));
            }
            std::cout << "\n";
        }
        return;
    }
    std::cout << "\\begin{tabular}{" << std::string(header.size(), 'r') << "}\n";
    for (size_t k = 0; k < header.size(); ++k)
        std::cout << (k ? " & " : "") << "\\textbf{" << header[k] << "}";
    std::cout << " \\\\\n\\hline\n";
    for (const auto& row : rows) {
        for (size_t k = 0; k < row.size(); ++k) std::cout << (k ? " & " : "") << row[k];
        std::cout << " \\\\\n";
    }
    std::cout << "\\end{tabular}\n";
}

// ---- phi ----

int run_phi(Format format, int m, int max_n, const std::string& method_name,
            bool first_not_one, bool last_not_top) {
    std::vector<long long> values;
    for (int q = 0; q <= max_n; ++q) {
        if (first_not_one || last_not_top) {
            values.push_back(qma::phi_constrained(m, q, {first_not_one, last_not_top}));
        } else {
            qma::PhiMethod method = qma::PhiMethod::recursion;
            if (method_name == "enumerate") method = qma::PhiMethod::enumerate;
            else if (method_name == "recursion") method = qma::PhiMethod::recursion;
            else if (method_name == "series") method = qma::PhiMethod::series;
            else if (method_name == "combinatorial") method = qma::PhiMethod::combinatorial;
            else throw CLI::ValidationError("--method", "unknown phi method " + method_name);
            values.push_back(qma::phi(m, q, method));
        }
    }
    if (format == Format::json_out) {
        json params{{"m", m},
                    {"max_n", max_n},
                    {"method", method_name},
                    {"first_not_one", first_not_one},
                    {"last_not_top", last_not_top}};
        emit_json("phi", params, values);
    } else {
        std::vector<std::vector<std::string>> rows;
        for (int q = 0; q <= max_n; ++q)
            rows.push_back({std::to_string(q), std::to_string(values[q])});
        emit_rows(format, {"q", "phi"}, rows);
    }
    return 0;
}

// ---- hh ----

int run_hh(Format format, int m, const std::string& target_name, const std::string& ring_name,
           int max_n, const std::string& model_name, bool bigraded) {
    const homology::Target target = homology::parse_target(target_name);
    const Ring ring = exactla::parse_ring(ring_name);
    const homology::Model model = homology::parse_model(model_name);
    const bimod::Bimodule coeff = bimod::standard_bimodule(m, homology::target_module(target));

    std::vector<FinAbGroup> groups;
    homology::BigradedTable table;
    if (bigraded || model == homology::Model::koszul) {
        table = homology::hochschild_bigraded(m, coeff, ring, max_n);
        for (int n = 0; n <= max_n; ++n) groups.push_back(table.totals.at(n));
    }
    if (model == homology::Model::bar) {
        groups.clear();
        homology::BarCochainComplex cx = homology::bar_complex(m, coeff, max_n + 1);
        for (int n = 0; n <= max_n; ++n) groups.push_back(homology::hochschild(cx, ring, n));
    }

    if (format == Format::json_out) {
        json params{{"m", m},       {"target", target_name}, {"ring", ring_name},
                    {"max_n", max_n}, {"model", model_name},   {"bigraded", bigraded}};
        json ranks = json::array();
        json glist = json::array();
        for (const auto& g : groups) {
            ranks.push_back(g.free_rank);
            glist.push_back(group_json(g));
        }
        json result{{"ranks", ranks}, {"groups", glist}};
        if (bigraded) {
            json blocks = json::array();
            for (const auto& [ns, g] : table.entries)
                blocks.push_back(json{{"n", ns.first}, {"s", ns.second}, {"group", group_json(g)}});
            result["bigraded"] = blocks;
        }
        emit_json("hh", params, result);
    } else if (bigraded) {
        std::vector<std::vector<std::string>> rows;
        for (const auto& [ns, g] : table.entries)
            rows.push_back({std::to_string(ns.first), std::to_string(ns.second),
                            std::to_string(g.free_rank),
                            format == Format::latex ? group_latex(g) : torsion_cell(g.torsion)});
        emit_rows(format, {"n", "s", "free_rank", format == Format::latex ? "group" : "torsion"},
                  rows);
    } else {
        std::vector<std::vector<std::string>> rows;
        for (int n = 0; n <= max_n; ++n)
            rows.push_back({std::to_string(n), std::to_string(groups[n].free_rank),
                            format == Format::latex ? group_latex(groups[n])
                                                    : torsion_cell(groups[n].torsion)});
        emit_rows(format, {"n", "free_rank", format == Format::latex ? "group" : "torsion"}, rows);
    }
    return 0;
}

// ---- e2 ----

int run_e2(Format format, int m, const std::string& target_name, const std::string& ring_name,
           int max_total) {
    const specseq::Target target = specseq::parse_target(target_name);
    const Ring ring = exactla::parse_ring(ring_name);
    const specseq::E1Page e1 = specseq::e1_page(m, target, max_total);
    const specseq::E2Page e2 = specseq::e2_page(e1, ring);

    if (format == Format::json_out) {
        json params{
            {"m", m}, {"target", target_name}, {"ring", ring_name}, {"max_total", max_total}};
        json entries = json::array();
        for (const auto& [pq, entry] : e2.entries)
            entries.push_back(
                json{{"p", pq.first}, {"q", pq.second}, {"group", group_json(entry.group)}});
        emit_json("e2", params, json{{"entries", entries}});
    } else {
        std::vector<std::vector<std::string>> rows;
        for (const auto& [pq, entry] : e2.entries)
            rows.push_back({std::to_string(pq.first), std::to_string(pq.second),
                            std::to_string(entry.group.free_rank),
                            format == Format::latex ? group_latex(entry.group)
                                                    : torsion_cell(entry.group.torsion)});
        emit_rows(format, {"p", "q", "free_rank", format == Format::latex ? "group" : "torsion"},
                  rows);
    }
    return 0;
}

// ---- cup / bracket ----

json class_json(const ghstructure::CohClass& value) {
    json terms = json::array();
    for (const auto& [symbol, coeff] : value.coeff)
        terms.push_back(json{{"symbol", ghstructure::to_string(symbol)}, {"coeff", coeff}});
    return terms;
}

int run_cup(Format format, int m, const std::string& x_text, const std::string& y_text,
            const std::string& ring_name) {
    const Ring ring = exactla::parse_ring(ring_name);
    const ghstructure::CohClass x = ghstructure::class_of(m, ghstructure::parse_symbol(x_text));
    const ghstructure::CohClass y = ghstructure::class_of(m, ghstructure::parse_symbol(y_text));
    const ghstructure::CupResult r = ghstructure::cup_detailed(x, y, ring);
    const char* certificate = r.certificate == ghstructure::CupCertificate::nonzero ? "nonzero"
                              : r.certificate == ghstructure::CupCertificate::bar_solver
                                  ? "bar_solver"
                                  : "spectral";
    if (format == Format::json_out) {
        json params{{"m", m}, {"x", x_text}, {"y", y_text}, {"ring", ring_name}};
        emit_json("cup", params,
                  json{{"value", ghstructure::to_string(r.value)},
                       {"terms", class_json(r.value)},
                       {"zero", r.value.is_zero()},
                       {"certificate", certificate}});
    } else {
        emit_rows(format, {"zero", "certificate", "value"},
                  {{r.value.is_zero() ? "true" : "false", certificate,
                    ghstructure::to_string(r.value)}});
    }
    return 0;
}

int run_bracket(Format format, int m, const std::string& x_text, const std::string& y_text,
                const std::string& method_name) {
    ghstructure::BracketMethod method = ghstructure::BracketMethod::closed_form;
    if (method_name == "closed") method = ghstructure::BracketMethod::closed_form;
    else if (method_name == "cochain") method = ghstructure::BracketMethod::cochain;
    else throw CLI::ValidationError("--method", "expected closed or cochain");
    const ghstructure::CohClass x = ghstructure::class_of(m, ghstructure::parse_symbol(x_text));
    const ghstructure::CohClass y = ghstructure::class_of(m, ghstructure::parse_symbol(y_text));
    const ghstructure::CohClass value = ghstructure::gerstenhaber_bracket(x, y, method);
    if (format == Format::json_out) {
        json params{{"m", m}, {"x", x_text}, {"y", y_text}, {"method", method_name}};
        emit_json("bracket", params,
                  json{{"value", ghstructure::to_string(value)},
                       {"terms", class_json(value)},
                       {"zero", value.is_zero()}});
    } else {
        emit_rows(format, {"zero", "method", "value"},
                  {{value.is_zero() ? "true" : "false", method_name,
                    ghstructure::to_string(value)}});
    }
    return 0;
}

// ---- tangent ----

int run_tangent(Format format, int m) {
    const long dimension = bimod::tangent_dimension(m);
    const long formula = (3L * m * m - 7L * m + 4) / 2;
    if (format == Format::json_out) {
        emit_json("tangent", json{{"m", m}},
                  json{{"dimension", dimension},
                       {"formula", formula},
                       {"match", dimension == formula}});
    } else {
        emit_rows(format, {"m", "dimension", "formula"},
                  {{std::to_string(m), std::to_string(dimension), std::to_string(formula)}});
    }
    return dimension == formula ? 0 : 1;
}

// ---- n2 ----

int run_n2(Format format, const std::string& ring_name, int max_n) {
    const Ring ring = exactla::parse_ring(ring_name);
    const ghstructure::N2Report report = ghstructure::n2_theory(ring, max_n);
    if (format == Format::json_out) {
        json glist = json::array();
        for (const auto& g : report.groups) glist.push_back(group_json(g));
        emit_json("n2", json{{"ring", ring_name}, {"max_n", max_n}},
                  json{{"groups", glist},
                       {"groups_match_koszul", report.groups_match_koszul},
                       {"groups_match_formula", report.groups_match_formula},
                       {"products_ok", report.products_ok},
                       {"brackets_ok", report.brackets_ok},
                       {"bv_family_checked", report.bv_family_checked},
                       {"bv_ok", report.bv_ok},
                       {"delta_squared_zero", report.delta_squared_zero},
                       {"pass", report.pass}});
    } else {
        std::vector<std::vector<std::string>> rows;
        for (int n = 0; n <= max_n; ++n)
            rows.push_back({std::to_string(n), std::to_string(report.groups[n].free_rank),
                            format == Format::latex ? group_latex(report.groups[n])
                                                    : torsion_cell(report.groups[n].torsion)});
        rows.push_back({"pass", report.pass ? "true" : "false", ""});
        emit_rows(format, {"n", "free_rank", format == Format::latex ? "group" : "torsion"}, rows);
    }
    return report.pass ? 0 : 1;
}

// ---- verify ----

struct SuiteOutcome {
    std::string name;
    bool pass = false;
    std::string detail;
};

bool verify_phi() {
    using qma::PhiMethod;
    for (int m = 2; m <= 6; ++m)
        for (int q = 0; q <= 10; ++q) {
            long long base = qma::phi(m, q, PhiMethod::recursion);
            for (PhiMethod method : {PhiMethod::enumerate, PhiMethod::series,
                                     PhiMethod::combinatorial})
                if (qma::phi(m, q, method) != base) return false;
        }
    for (int n = 0; n <= 10; ++n)
        if (qma::phi(3, n) != n + 1) return false;
    for (int m = 2; m <= 6; ++m)
        if (qma::phi(m, 2) != 1LL * m * m - 3 * m + 3) return false;
    return true;
}

bool verify_ranks() {
    for (int m : {3, 4}) {
        const auto coeff = bimod::standard_bimodule(m, bimod::Which::M_over_N);
        const auto over_q = homology::hochschild_bigraded(m, coeff, Ring::Q(), 5);
        for (int n = 0; n <= 5; ++n) {
            long long expect = n == 0 ? m - 1 : (m - 2) * qma::phi(m, n);
            if (over_q.totals.at(n).free_rank != expect) return false;
        }
        const auto nn = bimod::standard_bimodule(m, bimod::Which::N);
        for (int n = 0; n <= 5; ++n) {
            FinAbGroup g = homology::hochschild(m, nn, Ring::Q(), n);
            if (g.free_rank != homology::hh_rank_formula(m, homology::Target::N, n))
                return false;
        }
    }
    for (int m : {2, 3})
        for (int n = 0; n <= 3; ++n) {
            const auto coeff = bimod::standard_bimodule(m, bimod::Which::N);
            FinAbGroup koszul =
                homology::hochschild(m, coeff, Ring::Q(), n, homology::Model::koszul);
            FinAbGroup bar = homology::hochschild(m, coeff, Ring::Q(), n, homology::Model::bar);
            if (!(koszul == bar)) return false;
        }
    return true;
}

bool verify_bigraded() {
    specseq::E2TheoremReport report = specseq::e2_theorem_report(3, 6);
    if (!report.pass || !report.all_free) return false;
    for (int q = 0; q <= 6; ++q)
        if (report.rank_b_p0.at(q) != qma::phi(3, q)) return false;
    return specseq::e2_theorem_report(4, 4).pass;
}

bool verify_homotopy() {
    for (int m : {3, 4})
        for (int q = 0; q <= 4; ++q)
            if (!specseq::contracting_homotopy_check(m, q)) return false;
    return true;
}

bool verify_collapse() {
    if (!specseq::collapse_and_extension_check(3, specseq::Target::N, 4, Ring::Z()).pass)
        return false;
    return specseq::collapse_and_extension_check(3, specseq::Target::M_over_N, 4, Ring::fp(2))
        .pass;
}

bool verify_products() {
    ghstructure::BvReport r = ghstructure::bv_obstruction(3, Ring::Q());
    return r.all_cups_vanish && r.all_cups_bar_certified;
}

bool verify_bracket() {
    const auto pool = ghstructure::basis_symbols(3, 4);
    for (const auto& sx : pool)
        for (const auto& sy : pool) {
            if (static_cast<int>(sx.word.size() + sy.word.size()) > 3) continue;
            auto x = ghstructure::class_of(3, sx);
            auto y = ghstructure::class_of(3, sy);
            if (!(ghstructure::gerstenhaber_bracket(x, y,
                                                    ghstructure::BracketMethod::closed_form) ==
                  ghstructure::gerstenhaber_bracket(x, y, ghstructure::BracketMethod::cochain)))
                return false;
        }
    auto x = ghstructure::class_of(3, ghstructure::Symbol::a(1, {1, 1}));
    auto y = ghstructure::class_of(3, ghstructure::Symbol::a(1, {2, 1}));
    auto expect = ghstructure::class_of(3, ghstructure::Symbol::a(1, {2, 1, 1, 1}));
    return ghstructure::gerstenhaber_bracket(x, y, ghstructure::BracketMethod::closed_form) ==
           expect;
}

bool verify_bv() {
    for (const Ring& ring : {Ring::Q(), Ring::fp(2)})
        if (!ghstructure::bv_obstruction(3, ring).obstruction_holds) return false;
    return true;
}

bool verify_n2() {
    if (!ghstructure::n2_theory(Ring::Z(), 6).pass) return false;
    for (const Ring& ring : {Ring::Q(), Ring::fp(2), Ring::fp(3), Ring::zmod(4)})
        if (!ghstructure::n2_theory(ring, 4).pass) return false;
    return true;
}

bool verify_tangent() {
    for (int m : {3, 4, 5})
        if (bimod::tangent_dimension(m) != (3L * m * m - 7 * m + 4) / 2) return false;
    return bimod::tangent_dimension(3) == 5;
}

int run_verify(Format format, const std::string& suite) {
    const std::vector<std::pair<std::string, std::function<bool()>>> suites{
        {"phi", verify_phi},         {"ranks", verify_ranks},
        {"bigraded", verify_bigraded}, {"homotopy", verify_homotopy},
        {"collapse", verify_collapse}, {"products", verify_products},
        {"bracket", verify_bracket},   {"bv", verify_bv},
        {"n2", verify_n2},             {"tangent", verify_tangent}};
    std::vector<SuiteOutcome> outcomes;
    bool matched = false;
    for (const auto& [name, check] : suites) {
        if (suite != "all" && suite != name) continue;
        matched = true;
        outcomes.push_back({name, check(), ""});
    }
    if (!matched) throw CLI::ValidationError("--suite", "unknown suite " + suite);
    bool all_pass = std::all_of(outcomes.begin(), outcomes.end(),
                                [](const SuiteOutcome& o) { return o.pass; });
    if (format == Format::json_out) {
        json list = json::array();
        for (const auto& o : outcomes)
            list.push_back(json{{"suite", o.name}, {"pass", o.pass}});
        emit_json("verify", json{{"suite", suite}}, json{{"suites", list}, {"pass", all_pass}});
    } else {
        std::vector<std::vector<std::string>> rows;
        for (const auto& o : outcomes) rows.push_back({o.name, o.pass ? "pass" : "FAIL"});
        emit_rows(format, {"suite", "result"}, rows);
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Hochschild cohomology of the algebras N_m"};
    app.require_subcommand(1);
    std::string format_name = "json";
    app.add_option("--format", format_name, "Output format: json, csv, latex")
        ->capture_default_str();

    int m = 3, max_n = 6, max_total = 6;
    std::string target = "N", ring = "Z", model = "koszul", method = "recursion";
    std::string x_text, y_text, suite = "all", bracket_method = "closed";
    bool bigraded = false, first_not_one = false, last_not_top = false;

    CLI::App* phi = app.add_subcommand("phi", "Dual Hilbert function values");
    phi->add_option("--m", m, "Matrix size")->required()->check(CLI::Range(2, 8));
    phi->add_option("--max-n", max_n, "Largest degree")->required()->check(CLI::Range(0, 24));
    phi->add_option("--method", method, "enumerate, recursion, series, combinatorial");
    phi->add_flag("--first-not-one", first_not_one, "Count words with first letter != 1");
    phi->add_flag("--last-not-top", last_not_top, "Count words with last letter != m-1");

    CLI::App* hh = app.add_subcommand("hh", "Hochschild cohomology groups");
    hh->add_option("--m", m, "Matrix size")->required()->check(CLI::Range(2, 8));
    hh->add_option("--target", target, "N, B, M_over_N, M_over_J")->required();
    hh->add_option("--ring", ring, "Z, Q, Fp:<p>, Zmod:<N>");
    hh->add_option("--max-n", max_n, "Largest degree")->required()->check(CLI::Range(0, 16));
    hh->add_option("--model", model, "koszul or bar");
    hh->add_flag("--bigraded", bigraded, "Report the internal-degree decomposition");

    CLI::App* e2 = app.add_subcommand("e2", "Spectral sequence second page");
    e2->add_option("--m", m, "Matrix size")->required()->check(CLI::Range(2, 8));
    e2->add_option("--target", target, "N, B, B/N, M/N, M/J");
    e2->add_option("--ring", ring, "Z, Q, Fp:<p>, Zmod:<N>");
    e2->add_option("--max-total", max_total, "Blocks with p + q below this bound")
        ->required()
        ->check(CLI::Range(1, 16));

    CLI::App* cup = app.add_subcommand("cup", "Cup product of two classes");
    cup->add_option("--m", m, "Matrix size")->required()->check(CLI::Range(2, 8));
    cup->add_option("--x", x_text, "Left class, e.g. a(1,[2,1]) or f(2)")->required();
    cup->add_option("--y", y_text, "Right class")->required();
    cup->add_option("--ring", ring, "Z, Q, Fp:<p>, Zmod:<N>");

    CLI::App* bracket = app.add_subcommand("bracket", "Gerstenhaber bracket of two classes");
    bracket->add_option("--m", m, "Matrix size")->required()->check(CLI::Range(2, 8));
    bracket->add_option("--x", x_text, "Left class")->required();
    bracket->add_option("--y", y_text, "Right class")->required();
    bracket->add_option("--method", bracket_method, "closed or cochain");

    CLI::App* tangent = app.add_subcommand("tangent", "Deformation tangent space dimension");
    tangent->add_option("--m", m, "Matrix size")->required()->check(CLI::Range(3, 8));

    CLI::App* n2 = app.add_subcommand("n2", "Complete m = 2 theory over one ring");
    n2->add_option("--ring", ring, "Z, Q, Fp:<p>, Zmod:<N>");
    n2->add_option("--max-n", max_n, "Largest degree")->check(CLI::Range(1, 16));

    CLI::App* verify = app.add_subcommand("verify", "Run a named verification suite");
    verify->add_option("--suite", suite,
                       "phi, ranks, bigraded, homotopy, collapse, products, bracket, bv, "
                       "n2, tangent, or all");

    for (CLI::App* sub : {phi, hh, e2, cup, bracket, tangent, n2, verify}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const Format format = parse_format(format_name);
        if (app.got_subcommand(phi))
            return run_phi(format, m, max_n, method, first_not_one, last_not_top);
        if (app.got_subcommand(hh))
            return run_hh(format, m, target, ring, max_n, model, bigraded);
        if (app.got_subcommand(e2)) return run_e2(format, m, target, ring, max_total);
        if (app.got_subcommand(cup)) return run_cup(format, m, x_text, y_text, ring);
        if (app.got_subcommand(bracket))
            return run_bracket(format, m, x_text, y_text, bracket_method);
        if (app.got_subcommand(tangent)) return run_tangent(format, m);
        if (app.got_subcommand(n2)) return run_n2(format, ring, max_n);
        if (app.got_subcommand(verify)) return run_verify(format, suite);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
