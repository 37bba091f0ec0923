// Command-line interface to the metric-graph library: validation,
// potential theory, divisor reduction, Weierstrass/Okounkov computations,
// and the equidistribution experiment harness.

#include <CLI11.hpp>
#include <iostream>

#include "mg/experiment.hpp"
#include "mg/json_io.hpp"
#include "mg/okounkov.hpp"
#include "mg/potential.hpp"
#include "mg/reduce.hpp"
#include "mg/slopes.hpp"
#include "mg/weierstrass.hpp"

namespace {

using mg::io::json;

mg::MetricGraph load_graph(const std::string& path) {
    return mg::io::graph_from_json(mg::io::load_json_file(path));
}

// "vertexid" or "edgeid@offset"
mg::Point parse_point(const mg::MetricGraph& g, const std::string& spec) {
    auto pos = spec.rfind('@');
    if (pos == std::string::npos) return mg::Point::vertex(g.vertex_index(spec));
    return mg::Point::on_edge(g, g.edge_index(spec.substr(0, pos)),
                              mg::parse_rat(spec.substr(pos + 1)));
}

void emit(const std::string& out, const std::string& text) {
    if (out.empty())
        std::cout << text;
    else
        mg::io::write_file(out, text);
}

std::string point_csv(const mg::MetricGraph& g, const mg::Point& p) {
    if (p.is_vertex()) return g.vertices()[p.vertex_index()].id;
    return g.edges()[p.edge_index()].id + "@" + mg::rat_str(p.offset());
}

std::string divisor_csv(const mg::MetricGraph& g, const mg::Divisor& d) {
    std::string s = "point,coeff\n";
    for (const auto& [p, c] : d.coeffs()) s += point_csv(g, p) + "," + std::to_string(c) + "\n";
    return s;
}

std::string qdivisor_csv(const mg::MetricGraph& g, const mg::QDivisor& d) {
    std::string s = "point,coeff\n";
    for (const auto& [p, c] : d.coeffs()) s += point_csv(g, p) + "," + mg::rat_str(c) + "\n";
    return s;
}

std::string measure_csv(const mg::MetricGraph& g, const mg::Measure& mu) {
    std::string s = "kind,where,from,to,value\n";
    for (const auto& [p, m] : mu.atoms())
        s += "atom," + point_csv(g, p) + ",,," + mg::rat_str(m) + "\n";
    for (const auto& [ei, pieces] : mu.densities())
        for (const auto& pc : pieces)
            s += "density," + g.edges()[ei].id + "," + mg::rat_str(pc.from) + "," +
                 mg::rat_str(pc.to) + "," + mg::rat_str(pc.density) + "\n";
    return s;
}

std::vector<mg::Point> parse_grid(const mg::MetricGraph& g, const std::string& grid) {
    std::vector<mg::Point> pts;
    if (grid.empty()) {
        for (int v = 0; v < g.num_vertices(); ++v) pts.push_back(mg::Point::vertex(v));
        return pts;
    }
    // Either a comma-separated point list or a rational mesh width.
    if (grid.find('@') == std::string::npos && grid.find(',') == std::string::npos &&
        (std::isdigit(static_cast<unsigned char>(grid[0])) || grid[0] == '-')) {
        mg::Rat h = mg::parse_rat(grid);
        for (int v = 0; v < g.num_vertices(); ++v) pts.push_back(mg::Point::vertex(v));
        for (int ei = 0; ei < g.num_edges(); ++ei) {
            mg::Rat off = h;
            while (off < g.edges()[ei].length) {
                pts.push_back(mg::Point::on_edge(g, ei, off));
                off += h;
            }
        }
        return pts;
    }
    std::stringstream ss(grid);
    std::string item;
    while (std::getline(ss, item, ',')) pts.push_back(parse_point(g, item));
    return pts;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact potential theory, divisor theory, and Weierstrass "
                 "equidistribution on augmented metric graphs"};
    app.require_subcommand(1);

    std::string graph_file, divisor_file, slopes_file, config_file, out_file;
    std::string mode = "tropical-surrogate", wmode = "full", format = "json", grid_spec;
    std::string edge_id, point_a, point_b, point_z;
    long n_max = 50, n_min = 1, n_value = 0;

    auto add_common = [&](CLI::App* cmd, bool need_graph) {
        auto* opt = cmd->add_option("--graph", graph_file, "graph JSON file");
        if (need_graph) opt->required();
        cmd->add_option("--out", out_file, "output file (default: stdout)");
        cmd->add_option("--format", format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    auto* c_validate = app.add_subcommand("validate", "check the model invariants");
    add_common(c_validate, true);

    auto* c_canonical = app.add_subcommand("canonical", "canonical divisor K_X");
    add_common(c_canonical, true);

    auto* c_zhang = app.add_subcommand("zhang", "Zhang's canonical admissible measure");
    add_common(c_zhang, true);

    auto* c_resist = app.add_subcommand("resistance", "effective resistance");
    add_common(c_resist, true);
    c_resist->add_option("--edge", edge_id, "edge id: resistance in the graph minus the edge");
    c_resist->add_option("--from", point_a, "first point (vertex id or edge@offset)");
    c_resist->add_option("--to", point_b, "second point");

    auto* c_green = app.add_subcommand("green", "Green function g_z(x, y)");
    add_common(c_green, true);
    c_green->add_option("--z", point_z, "base point")->required();
    c_green->add_option("--x", point_a, "first argument")->required();
    c_green->add_option("--y", point_b, "second argument")->required();

    auto* c_reduce = app.add_subcommand("reduce", "v-reduced divisor and witness");
    add_common(c_reduce, true);
    c_reduce->add_option("--divisor", divisor_file, "divisor JSON file")->required();
    c_reduce->add_option("--base", point_a, "base point")->required();

    auto* c_rank = app.add_subcommand("rank", "Baker-Norine rank on a grid");
    add_common(c_rank, true);
    c_rank->add_option("--divisor", divisor_file, "divisor JSON file")->required();
    c_rank->add_option("--grid", grid_spec, "point list or mesh width (default: vertices)");

    auto* c_grd = app.add_subcommand("grd-check", "property (*) of a slope structure");
    add_common(c_grd, true);
    c_grd->add_option("--divisor", divisor_file, "divisor JSON file")->required();
    c_grd->add_option("--slopes", slopes_file, "slope structure JSON file")->required();
    c_grd->add_option("--grid", grid_spec, "point list or mesh width (default: vertices)");

    auto* c_weier = app.add_subcommand("weierstrass", "reduced Weierstrass divisor");
    add_common(c_weier, true);
    c_weier->add_option("--slopes", slopes_file, "slope data JSON file")->required();
    c_weier->add_option("--mode", wmode, "full or midpoint")
        ->check(CLI::IsMember({"full", "midpoint"}));

    auto* c_okounkov = app.add_subcommand("okounkov", "slope-family statistics");
    add_common(c_okounkov, false);
    c_okounkov->add_option("--slopes", slopes_file, "slope family JSON file")->required();
    c_okounkov->add_option("--n", n_value, "single n (default: all)");

    auto* c_equi = app.add_subcommand("equidist", "equidistribution experiment");
    add_common(c_equi, false);
    c_equi->add_option("--config", config_file, "experiment config JSON");
    c_equi->add_option("--divisor", divisor_file, "divisor JSON file");
    c_equi->add_option("--n-max", n_max, "largest n");
    c_equi->add_option("--n-min", n_min, "smallest n");
    c_equi->add_option("--mode", mode, "tropical-surrogate or explicit");
    c_equi->add_option("--grid", grid_spec, "comparison resolution h (rational)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_validate->parsed()) {
            mg::MetricGraph g = load_graph(graph_file);
            mg::validate(g);
            mg::Genus gen = mg::genus(g);
            emit(out_file, "valid: |V| = " + std::to_string(g.num_vertices()) +
                               ", |E| = " + std::to_string(g.num_edges()) +
                               ", g(Gamma) = " + std::to_string(gen.betti) +
                               ", g = " + std::to_string(gen.total) + "\n");
        } else if (c_canonical->parsed()) {
            mg::MetricGraph g = load_graph(graph_file);
            mg::validate(g);
            mg::Divisor k = mg::canonical_divisor(g);
            if (format == "csv") {
                emit(out_file, divisor_csv(g, k));
            } else {
                json j = mg::io::divisor_to_json(g, k);
                j["degree"] = k.degree();
                emit(out_file, j.dump(2) + "\n");
            }
        } else if (c_zhang->parsed()) {
            mg::MetricGraph g = load_graph(graph_file);
            mg::validate(g);
            mg::Measure mu = mg::zhang_measure(g);
            if (format == "csv") {
                emit(out_file, measure_csv(g, mu));
            } else {
                json j = mg::io::measure_to_json(g, mu);
                j["mass"] = mg::io::rat_to_json(mu.mass());
                emit(out_file, j.dump(2) + "\n");
            }
        } else if (c_resist->parsed()) {
            mg::MetricGraph g = load_graph(graph_file);
            mg::validate(g);
            mg::Resistance r;
            if (!edge_id.empty())
                r = mg::edge_resistance(g, g.edge_index(edge_id));
            else if (!point_a.empty() && !point_b.empty())
                r = mg::resistance(g, parse_point(g, point_a), parse_point(g, point_b));
            else
                throw std::invalid_argument("resistance: give --edge or --from/--to");
            emit(out_file, (r.infinite ? std::string("inf") : mg::rat_str(r.value)) + "\n");
        } else if (c_green->parsed()) {
            mg::MetricGraph g = load_graph(graph_file);
            mg::validate(g);
            emit(out_file, mg::rat_str(mg::green(g, parse_point(g, point_z),
                                                 parse_point(g, point_a),
                                                 parse_point(g, point_b))) + "\n");
        } else if (c_reduce->parsed()) {
            mg::MetricGraph g = load_graph(graph_file);
            mg::validate(g);
            mg::Divisor d = mg::io::divisor_from_json(g, mg::io::load_json_file(divisor_file));
            mg::ReduceResult rr = mg::reduce(g, d, parse_point(g, point_a));
            json j;
            j["reduced"] = mg::io::divisor_to_json(g, rr.reduced);
            json wv = json::array();
            for (int v = 0; v < g.num_vertices(); ++v)
                wv.push_back({{"vertex", g.vertices()[v].id},
                              {"value", mg::io::rat_to_json(rr.witness.vertex_values()[v])}});
            j["witness_vertex_values"] = wv;
            emit(out_file, j.dump(2) + "\n");
        } else if (c_rank->parsed()) {
            mg::MetricGraph g = load_graph(graph_file);
            mg::validate(g);
            mg::Divisor d = mg::io::divisor_from_json(g, mg::io::load_json_file(divisor_file));
            emit(out_file, std::to_string(mg::rank(g, d, parse_grid(g, grid_spec))) + "\n");
        } else if (c_grd->parsed()) {
            mg::MetricGraph g = load_graph(graph_file);
            mg::validate(g);
            mg::Divisor d = mg::io::divisor_from_json(g, mg::io::load_json_file(divisor_file));
            mg::SlopeStructure s =
                mg::io::slope_structure_from_json(g, mg::io::load_json_file(slopes_file));
            bool ok = mg::is_grd(g, d, s, parse_grid(g, grid_spec));
            emit(out_file, std::string(ok ? "true" : "false") + "\n");
            return ok ? 0 : 1;
        } else if (c_weier->parsed()) {
            mg::MetricGraph g = load_graph(graph_file);
            mg::validate(g);
            mg::SlopeData sd = mg::io::slope_data_from_json(mg::io::load_json_file(slopes_file));
            json j;
            if (wmode == "midpoint") {
                mg::QDivisor w = mg::midpoint_weierstrass(g, sd);
                if (format == "csv") {
                    emit(out_file, qdivisor_csv(g, w));
                    return 0;
                }
                j = mg::io::qdivisor_to_json(g, w);
                j["degree"] = mg::io::rat_to_json(w.degree());
            } else {
                mg::Divisor w = mg::reduce_weierstrass(g, sd);
                if (format == "csv") {
                    emit(out_file, divisor_csv(g, w));
                    return 0;
                }
                j = mg::io::divisor_to_json(g, w);
                j["degree"] = w.degree();
            }
            emit(out_file, j.dump(2) + "\n");
        } else if (c_okounkov->parsed()) {
            mg::SlopeFamily fam =
                mg::io::slope_family_from_json(mg::io::load_json_file(slopes_file));
            mg::FeketeReport rep = mg::fekete_limits(fam);
            json j;
            j["smin_estimate"] = mg::io::rat_to_json(rep.smin_estimate);
            j["smax_estimate"] = mg::io::rat_to_json(rep.smax_estimate);
            j["smin_bracket"] = {mg::io::rat_to_json(rep.smin_lo),
                                 mg::io::rat_to_json(rep.smin_hi)};
            j["smax_bracket"] = {mg::io::rat_to_json(rep.smax_lo),
                                 mg::io::rat_to_json(rep.smax_hi)};
            j["violations"] = rep.violations;
            json stats = json::array();
            for (const auto& [n, l] : fam.lists) {
                if (n_value != 0 && n != n_value) continue;
                mg::Rat a(l.front(), n);
                stats.push_back(
                    {{"n", n},
                     {"ks_uniform",
                      mg::io::rat_to_json(mg::ks_uniformity(fam, n, a, a + mg::Rat(fam.d)))},
                     {"wasserstein_uniform",
                      mg::io::rat_to_json(mg::wasserstein_uniform(fam, n, a, a + mg::Rat(fam.d)))},
                     {"sminmax_gap", mg::io::rat_to_json(mg::sminmax_gap(fam, n))}});
            }
            j["per_n"] = stats;
            emit(out_file, j.dump(2) + "\n");
        } else if (c_equi->parsed()) {
            mg::ExperimentConfig cfg;
            if (!config_file.empty()) {
                cfg = mg::io::config_from_json(mg::io::load_json_file(config_file));
            } else {
                cfg.graph_file = graph_file;
                cfg.divisor_file = divisor_file;
                cfg.n_min = n_min;
                cfg.n_max = n_max;
                cfg.mode = mode;
                if (!grid_spec.empty()) cfg.h = mg::parse_rat(grid_spec);
            }
            if (!out_file.empty()) {
                if (format == "csv")
                    cfg.out_csv = out_file;
                else
                    cfg.out_json = out_file;
            }
            mg::ExperimentResult res = mg::run_experiment(cfg);
            for (const std::string& v : res.verdicts) std::cout << v << "\n";
            if (out_file.empty()) std::cout << res.csv;
            return res.all_pass ? 0 : 1;
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
