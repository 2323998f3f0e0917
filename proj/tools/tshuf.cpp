// Command-line front end. Algebra elements travel as JSON documents on disk
// ("-" reads standard input); degrees and windows are flags.

#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "tshuf/acceptance.hpp"
#include "tshuf/config.hpp"
#include "tshuf/generators.hpp"
#include "tshuf/membership.hpp"
#include "tshuf/pairing.hpp"

using namespace tshuf;

namespace {

enum Exit { ok = 0, verdict_out = 1, usage = 2, internal = 3 };

std::string read_text(const std::string& path) {
    if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Json read_doc(const std::string& path) { return parse_document(read_text(path)); }
ShuffleElem read_elem(const std::string& path) { return shuffle_from_json(read_doc(path)); }

std::string out_path;

void emit(const Json& doc) {
    const std::string text = dump_document(doc);
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw InvalidArgument("cannot write " + out_path);
    out << text;
}

SlopeWindow parse_window(const std::string& w) {
    const auto colon = w.find(':');
    if (colon == std::string::npos) throw InvalidArgument("window must be lo:hi");
    auto rational = [](const std::string& s) {
        mpq_class q;
        if (s.empty() || q.set_str(s, 10) != 0) throw InvalidArgument("bad rational \"" + s + "\"");
        q.canonicalize();
        return q;
    };
    SlopeWindow win{rational(w.substr(0, colon)), rational(w.substr(colon + 1))};
    if (win.lo > win.hi) throw InvalidArgument("window lo exceeds hi");
    return win;
}

LadderQ parse_flavor(const std::string& f) {
    if (f == "q1") return LadderQ::q1;
    if (f == "q2") return LadderQ::q2;
    if (f == "q3") return LadderQ::q3;
    throw InvalidArgument("flavor must be q1, q2 or q3");
}

struct GenOptions {
    std::string kind;
    int n = 1;
    int d = 0;
    std::string eps;
    std::string via = "end1";
    std::string flavor = "q2";
    bool kernel = false;
};

Kernel gen_kernel(const GenOptions& o) {
    const SlopePoint p = slope_point(o.n, o.d);
    const HbarVia via = o.via == "end2" ? HbarVia::end2 : HbarVia::end1;
    if (o.kind == "P") return kernel_P(p, parse_flavor(o.flavor));
    if (o.kind == "Pbar") return kernel_Pbar(p);
    if (o.kind == "H") return kernel_H(p);
    if (o.kind == "Hbar") return kernel_Hbar(p, via);
    if (o.kind == "HbarPrime") return kernel_Hbar_prime(p);
    if (o.kind == "Sprime") return kernel_Sprime(p, parse_ribbon(o.eps));
    throw InvalidArgument("no kernel presentation for kind " + o.kind);
}

ShuffleElem gen_value(const GenOptions& o) {
    if (o.kind == "F") {
        if (o.n < 1) throw InvalidArgument("F needs n >= 1");
        return f_n(o.n);
    }
    if (o.via != "end1" && o.via != "end2") throw InvalidArgument("via must be end1 or end2");
    const SlopePoint p = slope_point(o.n, o.d);
    if (o.kind == "P") return gen_P_alt(p, parse_flavor(o.flavor));
    if (o.kind == "Pbar") return gen_Pbar(p);
    if (o.kind == "H") return gen_H(p);
    if (o.kind == "Hbar") return gen_Hbar(p, o.via == "end2" ? HbarVia::end2 : HbarVia::end1);
    if (o.kind == "HbarPrime") return gen_Hbar_prime(p);
    if (o.kind == "Sprime") return gen_Sprime(p, parse_ribbon(o.eps));
    throw InvalidArgument("unknown kind " + o.kind);
}

Json path_doc(const ConvexPath& v) {
    Json pts = Json::array();
    for (const auto& p : v.points) pts.push_back(Json::array({p.n, p.d}));
    return pts;
}

int error_exit(const Error& e) {
    Json doc{{"error", e.what()}};
    if (!e.witness().empty()) {
        try {
            doc["witness"] = Json::parse(e.witness());
        } catch (const Json::exception&) {
            doc["witness"] = e.witness();
        }
    }
    std::cerr << doc.dump(2) << "\n";
    switch (e.error_class()) {
        case ErrorClass::usage: return usage;
        case ErrorClass::verdict: return verdict_out;
        case ErrorClass::internal: return internal;
    }
    return internal;
}

}  // namespace

int main(int argc, char** argv) {
    load_env_overrides();
    CLI::App app{"Exact computations in the integral shuffle algebra"};
    app.require_subcommand(1);
    app.fallthrough();
    int arity_cap = 0, trunc_bound = -1;
    app.add_option("--arity-cap", arity_cap, "largest arity allowed (overrides TSHUF_ARITY_CAP)");
    app.add_option("--trunc-bound", trunc_bound, "constant-term truncation bound, 0 = automatic");
    app.add_option("-o,--out", out_path, "write the result document here instead of stdout");

    int code = ok;
    std::vector<std::pair<CLI::App*, std::function<void()>>> actions;

    GenOptions g;
    auto* gen = app.add_subcommand("gen", "emit a generator");
    gen->add_option("--kind", g.kind, "P|Pbar|H|Hbar|HbarPrime|Sprime|F")->required();
    gen->add_option("--n", g.n, "arity");
    gen->add_option("--d", g.d, "degree");
    gen->add_option("--eps", g.eps, "ribbon bits for Sprime, length t - 1");
    gen->add_option("--via", g.via, "end1|end2 for Hbar");
    gen->add_option("--flavor", g.flavor, "q1|q2|q3 for P");
    gen->add_flag("--kernel", g.kernel, "emit the kernel presentation instead of the value");
    actions.emplace_back(gen, [&] { emit(g.kernel ? to_json(gen_kernel(g)) : to_json(gen_value(g))); });

    std::string a_path, b_path;
    auto* mul = app.add_subcommand("mul", "shuffle product A * B");
    mul->add_option("A", a_path)->required();
    mul->add_option("B", b_path)->required();
    actions.emplace_back(mul, [&] { emit(to_json(shuffle_mul(read_elem(a_path), read_elem(b_path)))); });

    auto* member = app.add_subcommand("member", "integral membership report");
    member->add_option("R", a_path)->required();
    actions.emplace_back(member, [&] {
        const auto report = is_in_S(read_elem(a_path));
        emit(to_json(report));
        if (!report.in) code = verdict_out;
    });

    auto* wheel = app.add_subcommand("wheel", "wheel conditions");
    wheel->add_option("R", a_path)->required();
    actions.emplace_back(wheel, [&] {
        const bool holds = wheel_check(read_elem(a_path));
        emit(Json{{"wheel", holds}});
        if (!holds) code = verdict_out;
    });

    auto* pr = app.add_subcommand("pair", "pairing <R, R'> with R given as a kernel document");
    pr->add_option("R", a_path, "kernel document (gen --kernel)")->required();
    pr->add_option("Rp", b_path, "element document")->required();
    actions.emplace_back(pr, [&] { emit(to_json(pair(kernel_from_json(read_doc(a_path)), read_elem(b_path)))); });

    int pn = 1, pd = 0;
    std::string window_text;
    auto* paths = app.add_subcommand("paths", "convex paths of bidegree (n, d) in a slope window");
    paths->add_option("--n", pn)->required();
    paths->add_option("--d", pd)->required();
    paths->add_option("--window", window_text, "lo:hi")->required();
    actions.emplace_back(paths, [&] {
        Json out = Json::array();
        for (const auto& v : convex_paths(pn, pd, parse_window(window_text))) out.push_back(path_doc(v));
        emit(out);
    });

    auto* expand = app.add_subcommand("expand", "expansion in the Hbar_v basis");
    expand->add_option("R", a_path)->required();
    expand->add_option("--window", window_text, "lo:hi")->required();
    actions.emplace_back(expand, [&] { emit(to_json(pbw_expand(read_elem(a_path), parse_window(window_text)))); });

    auto* integral = app.add_subcommand("integral", "integrality of pairings against H_v");
    integral->add_option("R", a_path)->required();
    integral->add_option("--window", window_text, "lo:hi")->required();
    actions.emplace_back(integral, [&] {
        const auto rep = integrality_check(read_elem(a_path), parse_window(window_text));
        emit(to_json(rep));
        if (!rep.integral) code = verdict_out;
    });

    auto* reduce = app.add_subcommand("reduce", "write R through F_n-generated pieces");
    reduce->add_option("R", a_path)->required();
    actions.emplace_back(reduce, [&] { emit(to_json(reduce_to_generators(read_elem(a_path)))); });

    std::vector<int> only;
    auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
    selftest->add_option("--only", only, "criterion ids");
    actions.emplace_back(selftest, [&] {
        bool all = true;
        run_acceptance(only, [&](const CriterionResult& r) {
            std::cout << format_result(r) << std::endl;
            all = all && r.pass;
        });
        if (!all) code = verdict_out;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? ok : usage;
    }
    try {
        if (arity_cap > 0) settings().arity_cap = arity_cap;
        if (trunc_bound >= 0) settings().trunc_bound = trunc_bound;
        for (auto& [sub, run] : actions)
            if (sub->parsed()) run();
    } catch (const Error& e) {
        return error_exit(e);
    } catch (const std::exception& e) {
        std::cerr << Json{{"error", e.what()}}.dump(2) << "\n";
        return internal;
    }
    return code;
}
