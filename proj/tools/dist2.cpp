// dist2: command line front end.
//
// exit codes: 0 ok, 1 invalid input, 2 property violated, 3 fallback used

#include "dist2/discharging.hpp"
#include "dist2/files.hpp"
#include "dist2/generators.hpp"
#include "dist2/oracle.hpp"
#include "dist2/reduction.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <iostream>
#include <map>
#include <thread>

using namespace dist2;

namespace {

enum Exit { ok = 0, invalid_input = 1, violated = 2, fallback_used = 3 };

// Runs fn(i) for i in [0, count) on a few threads; results keep input order.
template <class Fn> auto parallel_map(std::size_t count, Fn fn)
{
    using R = decltype(fn(std::size_t{0}));
    std::vector<std::optional<R>> slots(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next++) < count;) {
            try {
                slots[i] = fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    {
        const auto threads = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
        std::vector<std::jthread> pool;
        for (std::size_t t = 1; t < std::min(threads, count); ++t)
            pool.emplace_back(work);
        work();
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    std::vector<R> out;
    out.reserve(count);
    for (auto& s : slots)
        out.push_back(std::move(*s));
    return out;
}

json one_or_many(std::vector<json> docs)
{
    if (docs.size() == 1)
        return std::move(docs[0]);
    return json(std::move(docs));
}

template <class Map> std::string histogram(const Map& m)
{
    std::string s;
    for (const auto& [k, v] : m)
        s += (s.empty() ? "" : " ") + std::to_string(k) + ":" + std::to_string(v);
    return s.empty() ? "-" : s;
}

struct Colored {
    ReductionResult result;
    ValidityReport report;
};

int cmd_color(const std::string& in, const std::string& format, int palette, const std::string& trace_out,
              const std::string& coloring_out)
{
    auto graphs = load_graphs(in, parse_format(format));
    auto runs = parallel_map(graphs.size(), [&](std::size_t i) {
        Colored c;
        c.result = color_by_reduction(graphs[i], palette);
        c.report = verify_coloring(graphs[i], c.result.coloring);
        return c;
    });
    int code = ok;
    std::vector<json> traces, colorings;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const auto& r = runs[i].result;
        const auto& rep = runs[i].report;
        const bool good = rep.valid && r.coloring.is_total() && rep.colors_used <= palette;
        std::cout << "graph " << i << ": n=" << graphs[i].vertex_count() << " colors=" << rep.colors_used
                  << " steps=" << r.trace.size() << " max_forbidden=" << r.max_forbidden
                  << (r.fallback ? " FALLBACK" : "") << (good ? " valid" : " INVALID") << '\n';
        if (r.fallback && r.witness)
            std::cout << "  no reduction applies to a " << r.witness->vertex_count() << "-vertex subgraph\n";
        if (!good)
            code = std::max<int>(code, violated);
        if (r.fallback)
            code = fallback_used;
        traces.push_back(to_json(trace_document(r)));
        colorings.push_back(to_json(r.coloring));
    }
    if (!trace_out.empty())
        write_file(trace_out, one_or_many(std::move(traces)).dump(1) + "\n");
    if (!coloring_out.empty())
        write_file(coloring_out, one_or_many(std::move(colorings)).dump(1) + "\n");
    return code;
}

int cmd_verify(const std::string& graph_path, const std::string& coloring_path)
{
    auto graphs = load_graphs(graph_path);
    if (graphs.size() != 1)
        throw Error(Errc::BadParams, "verify expects exactly one graph, got " + std::to_string(graphs.size()));
    auto phi = coloring_from_json(parse_json_text(read_file(coloring_path)));
    ValidityReport rep;
    try {
        rep = verify_coloring(graphs[0], phi);
    } catch (const Error& e) {
        if (e.code() != Errc::ColorOutOfPalette)
            throw;
        std::cout << "invalid: " << e.detail() << '\n';
        return violated;
    }
    if (!phi.is_total()) {
        std::cout << "invalid: coloring is partial\n";
        return violated;
    }
    if (rep.valid) {
        std::cout << "valid: " << rep.colors_used << " colors of " << phi.palette << '\n';
        return ok;
    }
    std::cout << "invalid: " << rep.violations.size() << " conflicts\n";
    for (const auto& v : rep.violations)
        std::cout << "  " << v.u << " " << v.w << " distance " << v.distance << " color " << v.color << '\n';
    return violated;
}

int cmd_exact(const std::string& in, std::size_t limit, int ub)
{
    auto graphs = load_graphs(in);
    oracle::ExactOptions opt;
    opt.vertex_limit = limit;
    opt.upper_bound = ub;
    int code = ok;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        try {
            auto r = oracle::chi2_exact(graphs[i], opt);
            std::cout << "graph " << i << ": chi2=" << r.chi2 << " nodes=" << r.nodes_explored << '\n';
        } catch (const Error& e) {
            if (e.code() != Errc::Infeasible)
                throw;
            std::cout << "graph " << i << ": " << e.detail() << '\n';
            code = violated;
        }
    }
    return code;
}

int cmd_discharge(const std::string& in, const std::string& report_out, bool table)
{
    auto graphs = load_graphs(in);
    auto reports = parallel_map(graphs.size(), [&](std::size_t i) { return audit(graphs[i]); });
    int code = ok;
    std::vector<json> docs;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& g = graphs[i];
        const auto& r = reports[i];
        const bool connected_case = g.component_count() == 1 && g.vertex_count() >= 2;
        std::cout << "graph " << i << ": total " << to_string(r.final_charges.total())
                  << (r.conservation_ok ? " conserved" : " NOT CONSERVED") << ", negative "
                  << r.negative_elements.size() << ", matches " << r.match_count << ", unexplained "
                  << r.unexplained.size() << '\n';
        if (table)
            std::cout << format_table(r);
        if (!r.conservation_ok || (connected_case && !r.contradiction_ok))
            code = violated;
        docs.push_back(to_json(r));
    }
    if (!report_out.empty())
        write_file(report_out, one_or_many(std::move(docs)).dump(1) + "\n");
    return code;
}

int cmd_configs(const std::string& in, bool all)
{
    auto graphs = load_graphs(in);
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        std::vector<ConfigurationMatch> ms;
        if (all) {
            ms = detect_all(graphs[i]);
        } else if (auto m = detect(graphs[i])) {
            ms.push_back(*m);
        }
        std::cout << "graph " << i << ": " << ms.size() << (all ? " matches" : " match") << '\n';
        for (const auto& m : ms) {
            std::cout << "  " << m.id() << " center " << m.center << " delete " << m.deleted;
            for (const auto& [a, b] : m.chords)
                std::cout << " +" << a << "-" << b;
            if (!m.variant.empty())
                std::cout << " [" << m.variant << "]";
            std::cout << '\n';
        }
    }
    return ok;
}

int cmd_gen(const std::string& kind, const std::string& params, std::uint64_t seed, const std::string& out,
            const std::string& format)
{
    auto g = generate(parse_generator(kind, params, seed));
    save_graphs(out, std::span(&g, 1), parse_format(format));
    std::cout << "wrote " << g.vertex_count() << " vertices, " << g.edge_count() << " edges to " << out << '\n';
    return ok;
}

int cmd_stats(const std::string& in)
{
    auto graphs = load_graphs(in);
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        const auto& g = graphs[i];
        std::map<int, int> degrees, face_degrees, m3, n3;
        long sum_m3 = 0, sum_m4 = 0, sum_m5 = 0;
        for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) {
            auto s = vertex_stats(g, v);
            ++degrees[s.degree];
            ++m3[s.m3];
            ++n3[s.n3];
            sum_m3 += s.m3;
            sum_m4 += s.m4;
            sum_m5 += s.m5plus;
        }
        for (const auto& f : g.faces())
            ++face_degrees[static_cast<int>(f.degree())];
        std::cout << "graph " << i << ": n=" << g.vertex_count() << " m=" << g.edge_count()
                  << " faces=" << g.faces().size() << " components=" << g.component_count()
                  << " max_degree=" << g.max_degree() << " euler=" << (satisfies_euler(g) ? "ok" : "FAIL") << '\n'
                  << "  degrees " << histogram(degrees) << '\n'
                  << "  face degrees " << histogram(face_degrees) << '\n'
                  << "  m3 per vertex " << histogram(m3) << " (corners: 3-face " << sum_m3 << ", 4-face "
                  << sum_m4 << ", 5+-face " << sum_m5 << ")\n"
                  << "  n3 per vertex " << histogram(n3) << '\n';
    }
    return ok;
}

int exit_for(Errc c)
{
    switch (c) {
    case Errc::PlanInvalid:
    case Errc::NoSafeColor:
    case Errc::PaletteExhausted:
        return violated;
    default:
        return invalid_input;
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"2-distance coloring of planar graphs with maximum degree 6"};
    app.require_subcommand(1);

    std::string in, format, trace_out, coloring_out, report_out, graph_path, coloring_path, kind, params, out;
    int palette = default_palette, ub = 20;
    std::size_t limit = 16;
    std::uint64_t seed = 0;
    bool table = false, all = false;

    auto* color = app.add_subcommand("color", "color every graph by reductions and verify the result");
    color->add_option("--in", in, "input graph file")->required();
    color->add_option("--format", format, "planarcode or json (default: detect)");
    color->add_option("--palette", palette, "number of colors")->check(CLI::PositiveNumber);
    color->add_option("--trace", trace_out, "write the reduction trace as JSON");
    color->add_option("--out", coloring_out, "write the coloring as JSON");

    auto* verify = app.add_subcommand("verify", "check a coloring against a graph");
    verify->add_option("--graph", graph_path, "graph file")->required();
    verify->add_option("--coloring", coloring_path, "coloring JSON")->required();

    auto* exact = app.add_subcommand("exact", "exact 2-distance chromatic number of small graphs");
    exact->add_option("--in", in, "input graph file")->required();
    exact->add_option("--limit", limit, "largest vertex count to search");
    exact->add_option("--ub", ub, "largest number of colors tried");

    auto* discharge = app.add_subcommand("discharge", "run the charge rules and audit the result");
    discharge->add_option("--in", in, "input graph file")->required();
    discharge->add_option("--report", report_out, "write the report as JSON");
    discharge->add_flag("--table", table, "print per-element charges");

    auto* configs = app.add_subcommand("configs", "list reducible configurations");
    configs->add_option("--in", in, "input graph file")->required();
    configs->add_flag("--all", all, "every match instead of the first");

    auto* gen = app.add_subcommand("gen", "generate a graph");
    gen->add_option("--kind", kind, "platonic, square_grid, tri_grid, hex_grid, cycle, path, random_planar")
        ->required();
    gen->add_option("--params", params, "comma separated parameters, e.g. 4,5 or icosahedron");
    gen->add_option("--seed", seed, "seed for random_planar");
    gen->add_option("--out", out, "output file (.json for JSON, otherwise planar code)")->required();
    gen->add_option("--format", format, "planarcode or json");

    auto* stats = app.add_subcommand("stats", "degree and face statistics");
    stats->add_option("--in", in, "input graph file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : invalid_input;
    }

    try {
        if (*color)
            return cmd_color(in, format, palette, trace_out, coloring_out);
        if (*verify)
            return cmd_verify(graph_path, coloring_path);
        if (*exact)
            return cmd_exact(in, limit, ub);
        if (*discharge)
            return cmd_discharge(in, report_out, table);
        if (*configs)
            return cmd_configs(in, all);
        if (*gen)
            return cmd_gen(kind, params, seed, out, format);
        if (*stats)
            return cmd_stats(in);
    } catch (const Error& e) {
        std::cerr << "error: " << errc_name(e.code()) << ": " << e.detail() << '\n';
        return exit_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return invalid_input;
    }
    return invalid_input;
}
