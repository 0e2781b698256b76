// Command-line front end: classification, solving, verification, toast
// construction, adversarial runs, and homomorphism problems over JSON files.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "lct/adversary.hpp"
#include "lct/classify.hpp"
#include "lct/homproblems.hpp"
#include "lct/io.hpp"
#include "lct/solve.hpp"
#include "lct/toast.hpp"

namespace {

using namespace lct;

constexpr int kExitParse = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitResourceCap = 3;
constexpr int kExitVerification = 4;
constexpr int kExitInternal = 10;

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case Errc::syntax_error:
        case Errc::semantic_error:
        case Errc::degree_mismatch:
        case Errc::multi_edge:
        case Errc::bad_endpoint_count:
        case Errc::unknown_vertex:
            return kExitParse;
        case Errc::max_subsets_exceeded:
            return kExitResourceCap;
        case Errc::invariant_breach:
            return kExitInternal;
        default:
            return kExitPrecondition;
    }
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::syntax_error, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) fail(Errc::bad_parameter, "cannot write '" + out_path + "'");
    out << text;
}

std::optional<std::vector<int>> parse_order(const std::string& csv) {
    if (csv.empty()) return std::nullopt;
    std::vector<int> order;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            order.push_back(std::stoi(item));
        } catch (const std::logic_error&) {
            fail(Errc::bad_parameter, "bad vertex id '" + item + "' in order");
        }
    }
    return order;
}

struct Args {
    std::string lcl_file, graph_file, coloring_file, forest_file, out_file, emit_graph_file;
    std::string mode = "both", strategy, solver_spec, order_csv;
    long long max_subsets = 0;
    std::optional<long long> n0;
    int max_stages = 200;
    int l = 0, delta = 0;
    bool trace = false;
};

int cmd_classify(const Args& a) {
    Lcl lcl = parse_lcl(slurp(a.lcl_file));
    json report;
    bool want_full = a.mode == "full" || a.mode == "both";
    bool want_greedy = a.mode == "greedy" || a.mode == "both";
    json classes;
    if (want_full) {
        auto cert = decide_fullness(lcl, a.max_subsets);
        report["full"] = cert ? fullness_certificate_to_json(*cert, lcl) : json(nullptr);
        classes["HCOMP"] = cert.has_value();
        classes["BAIRE"] = cert.has_value();
    }
    if (want_greedy) {
        auto cert = decide_greediness(lcl);
        report["greedy"] = cert ? greedy_certificate_to_json(*cert, lcl) : json(nullptr);
        classes["COMPUTABLE"] = cert.has_value();
    }
    report["classes"] = std::move(classes);
    emit(report.dump(2) + "\n", a.out_file);
    return 0;
}

int cmd_solve(const Args& a) {
    Lcl lcl = parse_lcl(slurp(a.lcl_file));
    HalfEdgeGraph g = parse_graph(slurp(a.graph_file));
    SolveOptions opts;
    opts.order = parse_order(a.order_csv);
    if (a.trace)
        opts.trace = [&](const SolveTraceEvent& ev) {
            json j;
            j["kind"] = ev.kind;
            j["index"] = ev.index;
            json assigned = json::array();
            for (const auto& [v, e, label] : ev.assigned)
                assigned.push_back(
                    json{{"vertex", v}, {"edge", e}, {"label", lcl.label_name(label)}});
            j["assigned"] = std::move(assigned);
            std::cerr << j.dump() << "\n";
        };
    Coloring coloring;
    if (a.strategy == "greedy") {
        auto cert = decide_greediness(lcl);
        check(cert.has_value(), Errc::certificate_invalid, "problem has no greedy certificate");
        coloring = greedy_color(g, lcl, *cert, opts);
    } else if (a.strategy == "toast") {
        auto cert = decide_fullness(lcl, a.max_subsets);
        check(cert.has_value(), Errc::certificate_invalid, "problem has no fullness certificate");
        coloring = toast_color(g, lcl, *cert, opts);
    } else {
        fail(Errc::bad_parameter, "strategy must be greedy or toast");
    }
    emit(serialize_coloring(coloring, lcl), a.out_file);
    return 0;
}

int cmd_verify(const Args& a) {
    Lcl lcl = parse_lcl(slurp(a.lcl_file));
    HalfEdgeGraph g = parse_graph(slurp(a.graph_file));
    Coloring coloring = parse_coloring(slurp(a.coloring_file), lcl);
    Verdict verdict = verify_coloring(g, lcl, coloring);
    emit(verdict_to_json(verdict, lcl).dump(2) + "\n", a.out_file);
    return verdict.ok() ? 0 : kExitVerification;
}

int cmd_toast(const Args& a) {
    HalfEdgeGraph g = parse_graph(slurp(a.graph_file));
    Toast t = build_toast(g, a.l, parse_order(a.order_csv));
    emit(serialize_toast(t), a.out_file);
    return 0;
}

int cmd_adversary(const Args& a) {
    Lcl lcl = parse_lcl(slurp(a.lcl_file));
    auto solver = make_builtin_solver(lcl, a.solver_spec);
    AdversaryOptions opts{a.max_stages, a.n0};
    AdversaryTranscript t = a.mode == "hc" ? run_hc_adversary(lcl, *solver, opts)
                                           : run_comp_adversary(lcl, *solver, opts);
    emit(transcript_to_jsonl(t, lcl), a.out_file);
    if (!a.emit_graph_file.empty()) emit(serialize_graph(t.final_graph), a.emit_graph_file);
    return 0;
}

int cmd_hom(const Args& a) {
    SimpleGraph h = parse_simple_graph(slurp(a.graph_file));
    emit(serialize_lcl(lcl_from_graph(h, a.delta)), a.out_file);
    return 0;
}

int cmd_hdelta(const Args& a) {
    emit(serialize_simple_graph(build_h_delta(a.delta)), a.out_file);
    return 0;
}

int cmd_homsolve(const Args& a) {
    SimpleGraph forest = parse_simple_graph(slurp(a.forest_file));
    emit(serialize_hom_map(hom_solve_h_delta(forest, a.delta)), a.out_file);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"locally checkable labelings on regular trees: classification, "
                 "solving, and adversarial constructions"};
    app.require_subcommand(1);
    Args a;

    auto* classify = app.add_subcommand("classify", "decide fullness and greediness");
    classify->add_option("--lcl", a.lcl_file, "problem file")->required();
    classify->add_option("--mode", a.mode, "full | greedy | both")
        ->check(CLI::IsMember({"full", "greedy", "both"}));
    classify->add_option("--max-subsets", a.max_subsets, "cap on subset enumeration (0 = off)");

    auto* solve = app.add_subcommand("solve", "color a graph with a certified strategy");
    solve->add_option("--lcl", a.lcl_file, "problem file")->required();
    solve->add_option("--graph", a.graph_file, "graph file")->required();
    solve->add_option("--strategy", a.strategy, "greedy | toast")->required();
    solve->add_option("--order", a.order_csv, "comma-separated vertex order");
    solve->add_flag("--trace", a.trace, "stream per-stage commitments to stderr");

    auto* verify = app.add_subcommand("verify", "check a coloring against a problem");
    verify->add_option("--lcl", a.lcl_file, "problem file")->required();
    verify->add_option("--graph", a.graph_file, "graph file")->required();
    verify->add_option("--coloring", a.coloring_file, "coloring file")->required();

    auto* toast = app.add_subcommand("toast", "build a toast decomposition");
    toast->add_option("--graph", a.graph_file, "graph file")->required();
    toast->add_option("--l", a.l, "separation parameter")->required();
    toast->add_option("--order", a.order_csv, "comma-separated vertex stream");

    auto* adversary = app.add_subcommand("adversary", "run a diagonalization construction");
    adversary->add_option("--lcl", a.lcl_file, "problem file")->required();
    adversary->add_option("--mode", a.mode, "hc | comp")
        ->required()
        ->check(CLI::IsMember({"hc", "comp"}));
    adversary->add_option("--solver", a.solver_spec, "builtin:lookahead:R | builtin:oblivious:LABEL | builtin:replay")
        ->required();
    adversary->add_option("--max-stages", a.max_stages, "stage budget");
    adversary->add_option("--n0", a.n0, "override the initial population (may breach invariants)");
    adversary->add_option("--emit-graph", a.emit_graph_file, "write the final graph here");

    auto* hom = app.add_subcommand("hom", "labeling problem of homomorphisms into a target");
    hom->add_option("--graph", a.graph_file, "target graph file")->required();
    hom->add_option("--delta", a.delta, "regularity")->required();

    auto* hdelta = app.add_subcommand("hdelta", "clique-free tower target graph");
    hdelta->add_option("--delta", a.delta, "level")->required();

    auto* homsolve = app.add_subcommand("homsolve", "homomorphism of a forest into the tower");
    homsolve->add_option("--forest", a.forest_file, "forest file")->required();
    homsolve->add_option("--delta", a.delta, "degree bound")->required();

    for (auto* sub : {classify, solve, verify, toast, adversary, hom, hdelta, homsolve})
        sub->add_option("--out", a.out_file, "write the primary output here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (classify->parsed()) return cmd_classify(a);
        if (solve->parsed()) return cmd_solve(a);
        if (verify->parsed()) return cmd_verify(a);
        if (toast->parsed()) return cmd_toast(a);
        if (adversary->parsed()) return cmd_adversary(a);
        if (hom->parsed()) return cmd_hom(a);
        if (hdelta->parsed()) return cmd_hdelta(a);
        if (homsolve->parsed()) return cmd_homsolve(a);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return 0;
}
