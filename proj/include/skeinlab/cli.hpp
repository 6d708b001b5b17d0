/**
 * @file cli.hpp
 * @brief The `skeinlab` command line, callable in-process.
 *
 * Exit codes: 0 success, 1 internal or I/O failure, 2 invalid input
 * (schema, admissibility, labeling, geometry, poles), 3 state budget exceeded.
 * Data goes to `out` (or to --out files); diagnostics go to `err`.
 */
#pragma once

#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "skeinlab/analytic.hpp"
#include "skeinlab/apollonian.hpp"
#include "skeinlab/diagram.hpp"
#include "skeinlab/json_io.hpp"
#include "skeinlab/recoupling.hpp"
#include "skeinlab/reduction.hpp"
#include "skeinlab/state_sum.hpp"
#include "skeinlab/svg.hpp"

namespace skeinlab::cli {

enum ExitCode : int { ok = 0, failure = 1, invalid = 2, budget = 3 };

/// "re+im i" (or "re-im i") with 12 significant digits.
inline std::string format_complex(ComplexValue z) {
    char buf[80];
    double re = z.real() + 0.0, im = z.imag() + 0.0;  // fold -0 into 0
    std::snprintf(buf, sizeof buf, "%.12g%s%.12gi", re, std::signbit(im) ? "-" : "+", std::abs(im));
    return buf;
}

namespace detail {

inline std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, ',')) out.push_back(cur);
    if (!s.empty() && s.back() == ',') out.emplace_back();
    return out;
}

inline void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") out << text;
    else write_text_file(path, text);
}

struct Args {
    unsigned threads = 0;

    std::string diagram_file;

    std::string net_file, method = "auto";

    std::vector<long long> nums;
    bool unsigned_form = false;

    std::string root, out_path;
    int depth = 0;
    long long q_max = 0;

    std::string pack_file;

    std::string fn, path, range, format = "csv";
    int steps = 100;
    std::vector<double> reals;

    std::string svg_path;
};

inline int net_eval(const Args& a, std::ostream& out, std::ostream& err) {
    SpinNetwork net = network_from_json(read_json_file(a.net_file));
    require_evaluable(net);
    BruteOptions brute;
    brute.threads = a.threads;
    Rational value;
    if (a.method == "brute") {
        value = evaluate_brute(net, brute);
    } else if (a.method == "recoupling") {
        value = evaluate_recoupling(net);
    } else {
        try {
            value = evaluate_recoupling(net);
            err << "method: recoupling\n";
        } catch (const ReductionFailure& e) {
            err << "method: brute force (recoupling gave up: " << e.what() << ")\n";
            value = evaluate_brute(net, brute);
        }
    }
    out << value << "\n";
    return ok;
}

inline int symbols(const std::string& which, const Args& a, std::ostream& out) {
    const auto& n = a.nums;
    Rational v;
    if (which == "delta") v = delta(n[0]);
    else if (which == "theta") v = theta(n[0], n[1], n[2]);
    else if (which == "tet") v = tet(TetLabels{n[0], n[1], n[2], n[3], n[4], n[5]});
    else if (which == "sixj") v = sixj(n[0], n[1], n[2], n[3], n[4], n[5]);
    else if (which == "insert") v = insertion_ratio(n[0], n[1], n[2], n[3]);
    else if (n.size() == 2) v = eval_two(n[0], n[1]);
    else if (n.size() == 3) v = eval_three(n[0], n[1], n[2], !a.unsigned_form);
    else v = eval_four(n[0], n[1], n[2], n[3]);
    out << v << "\n";
    return ok;
}

inline int analytic_sample(const Args& a, std::ostream& out) {
    if (a.fn != "delta" && a.fn != "theta") throw DomainError("--fn must be delta or theta");
    auto colon = a.range.find(':');
    if (colon == std::string::npos) throw DomainError("--range must look like t0:t1");
    SamplePath path;
    path.components = parse_path(a.path);
    path.t0 = skeinlab::detail::parse_number(a.range.substr(0, colon), a.range);
    path.t1 = skeinlab::detail::parse_number(a.range.substr(colon + 1), a.range);
    path.steps = a.steps;
    auto samples = sample(a.fn == "delta" ? ContinuedFunction::delta : ContinuedFunction::theta, path);
    emit(a.format == "svg" ? samples_to_svg(samples) : samples_to_csv(samples), a.out_path, out);
    return ok;
}

}  // namespace detail

/// Run one command. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact evaluation of sl2 spin networks, circle packings and their continuations", "skeinlab"};
    app.require_subcommand(1);
    detail::Args a;
    app.add_option("--threads", a.threads, "worker threads for state sums (0 = all cores)");

    auto* diagram = app.add_subcommand("diagram", "strand diagrams")->require_subcommand(1);
    auto* diagram_eval = diagram->add_subcommand("eval", "contract a diagram JSON file");
    diagram_eval->add_option("file", a.diagram_file)->required();

    auto* net = app.add_subcommand("net", "spin networks")->require_subcommand(1);
    auto* net_eval = net->add_subcommand("eval", "evaluate a network JSON file");
    net_eval->add_option("file", a.net_file)->required();
    net_eval->add_option("--method", a.method)->check(CLI::IsMember({"brute", "recoupling", "auto"}));

    auto* sym = app.add_subcommand("symbols", "closed-form values")->require_subcommand(1);
    auto add_symbol = [&](const char* name, const char* help, int lo, int hi) {
        auto* s = sym->add_subcommand(name, help);
        s->add_option("labels", a.nums)->required()->expected(lo, hi);
        return s;
    };
    add_symbol("delta", "loop value for label n", 1, 1);
    add_symbol("theta", "theta(p, q, r)", 3, 3);
    add_symbol("tet", "Tet(P, Q, R, p, q, r)", 6, 6);
    add_symbol("sixj", "6j symbol {p q i; x y j}", 6, 6);
    add_symbol("insert", "disk insertion ratio for curvatures a b c d", 4, 4);
    add_symbol("disks", "two, three or four tangent disks with curvatures a b [c [d]]", 2, 4)
        ->add_flag("--unsigned", a.unsigned_form, "three disks: drop the (-1)^(a+b+c) sign");

    auto* apollo = app.add_subcommand("apollonian", "Apollonian packings")->require_subcommand(1);
    auto* apollo_gen = apollo->add_subcommand("gen", "generate a packing");
    apollo_gen->add_option("--root", a.root, "four curvatures b1,b2,b3,b4")->required();
    apollo_gen->add_option("--depth", a.depth)->required()->check(CLI::Range(0, 12));
    apollo_gen->add_option("--out", a.out_path, "output file (default stdout)");

    auto* ford = app.add_subcommand("ford", "Ford arrangements")->require_subcommand(1);
    auto* ford_gen = ford->add_subcommand("gen", "generate the Ford disks up to a denominator");
    ford_gen->add_option("--qmax", a.q_max)->required()->check(CLI::Range(1LL, 200LL));
    ford_gen->add_option("--out", a.out_path, "output file (default stdout)");

    auto* pack2net = app.add_subcommand("pack2net", "convert a packing JSON file to a network JSON file");
    pack2net->add_option("file", a.pack_file)->required();
    pack2net->add_option("--out", a.out_path, "output file (default stdout)");

    auto* analytic = app.add_subcommand("analytic", "continued two- and three-disk functions")->require_subcommand(1);
    auto* an_sample = analytic->add_subcommand("sample", "sample along an affine path");
    an_sample->add_option("--fn", a.fn)->required()->check(CLI::IsMember({"delta", "theta"}));
    an_sample->add_option("--path", a.path, "comma-separated affine expressions in x")->required();
    an_sample->add_option("--range", a.range, "t0:t1")->required();
    an_sample->add_option("--steps", a.steps)->required();
    an_sample->add_option("--out", a.format, "csv or svg")->check(CLI::IsMember({"csv", "svg"}));
    an_sample->add_option("--file", a.out_path, "output file (default stdout)");
    auto* an_eval = analytic->add_subcommand("eval", "evaluate at one point");
    an_eval->add_option("--fn", a.fn)->required()->check(CLI::IsMember({"delta", "theta"}));
    an_eval->add_option("args", a.reals)->required()->expected(2, 3);

    auto* render = app.add_subcommand("render", "draw a packing JSON file as SVG");
    render->add_option("file", a.pack_file)->required();
    render->add_option("--svg", a.svg_path, "output file (default stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? ok : invalid;
    }

    try {
        if (diagram_eval->parsed()) {
            StrandDiagram d = diagram_from_json(read_json_file(a.diagram_file));
            Rational value = contract(d);
            if (value != loop_value(d))
                throw std::logic_error("contraction and loop count disagree on this diagram");
            out << value << "\n";
            return ok;
        }
        if (net_eval->parsed()) return detail::net_eval(a, out, err);
        for (auto* s : sym->get_subcommands())
            if (s->parsed()) return detail::symbols(s->get_name(), a, out);
        if (apollo_gen->parsed()) {
            auto parts = detail::split_commas(a.root);
            if (parts.size() != 4) throw DomainError("--root needs four comma-separated curvatures");
            std::array<Rational, 4> root{Rational::parse(parts[0]), Rational::parse(parts[1]), Rational::parse(parts[2]),
                                         Rational::parse(parts[3])};
            detail::emit(packing_to_json(generate_apollonian(root, a.depth)).dump(1) + "\n", a.out_path, out);
            return ok;
        }
        if (ford_gen->parsed()) {
            detail::emit(packing_to_json(generate_ford(a.q_max)).dump(1) + "\n", a.out_path, out);
            return ok;
        }
        if (pack2net->parsed()) {
            auto converted = packing_to_network(packing_from_json(read_json_file(a.pack_file)));
            Json j = network_to_json(converted.network);
            if (!converted.open_ends.empty()) {
                j["open_ends"] = converted.open_ends;
                err << converted.open_ends.size() << " open end(s); the network is not closed\n";
            }
            detail::emit(j.dump(1) + "\n", a.out_path, out);
            return ok;
        }
        if (an_sample->parsed()) return detail::analytic_sample(a, out);
        if (an_eval->parsed()) {
            out << format_complex(evaluate_continued(a.fn == "delta" ? ContinuedFunction::delta : ContinuedFunction::theta,
                                                     a.reals))
                << "\n";
            return ok;
        }
        if (render->parsed()) {
            detail::emit(render_packing_svg(packing_from_json(read_json_file(a.pack_file))), a.svg_path, out);
            return ok;
        }
        err << "nothing to do\n";
        return invalid;
    } catch (const BudgetError& e) {
        err << "error: " << e.what() << "\n";
        return budget;
    } catch (const AdmissibilityError& e) {
        err << "error: " << e.what() << "\n";
        return invalid;
    } catch (const ReductionFailure& e) {
        err << "error: " << e.what() << "\n";
        return failure;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return failure;
    } catch (const Error& e) {
        // Structural, domain, labeling, geometry, pole, unsupported, degenerate.
        err << "error: " << e.what() << "\n";
        return invalid;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return failure;
    }
}

}  // namespace skeinlab::cli
