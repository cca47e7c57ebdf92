#include "takagi/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "takagi/kernels.hpp"
#include "takagi/serialize.hpp"
#include "takagi/svg.hpp"

namespace takagi::cli {

namespace {

using nlohmann::json;

// Accepts "p/q", plain integers, dyadic "k/2^n", and binary "0.bits(period)"
// literals.
Rational parse_number(const std::string& text) {
    if (text.find('.') != std::string::npos) return PeriodicReal::parse(text).to_rational();
    if (text.find("/2^") != std::string::npos) return dyadic_to_rational(Dyadic::parse(text));
    return Rational::parse(text);
}

struct Common {
    std::string format{"json"};
    std::optional<unsigned> decimals;
    bool timing{false};
};

void emit(const json& payload, const Common& c, const std::string& command,
          std::chrono::steady_clock::time_point t0, std::ostream& out) {
    json envelope{{"command", command}, {"version", kVersion}};
    envelope.update(payload);
    if (c.timing) {
        auto dt = std::chrono::steady_clock::now() - t0;
        envelope["elapsed_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(dt).count();
    }
    out << envelope.dump(2) << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact Takagi function toolkit: evaluation, level sets, humps, plots"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags (--format, --decimals, --timing) may follow the subcommand

    if (const char* cap = std::getenv("TAKAGI_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(cap, &end, 10);
        if (end && *end == '\0' && v > 0) {
            set_enumeration_cap(static_cast<std::size_t>(v));
            set_bracket_cap(static_cast<std::size_t>(v));
        }
    }

    Common common;
    app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    unsigned decimals_opt = 0;
    auto* dec_flag = app.add_option("--decimals", decimals_opt, "Add truncated decimal renderings");
    app.add_flag("--timing", common.timing, "Include elapsed_ms in reports");

    // eval
    std::string eval_x;
    unsigned series_terms = 0;
    auto* eval = app.add_subcommand("eval", "Evaluate T exactly at a rational");
    eval->add_option("--x", eval_x, "Point in [0,1], as p/q or 0.bits(period)")->required();
    eval->add_option("--series-terms", series_terms, "Also report an N-term series enclosure");

    // levelset
    std::string ls_y;
    unsigned ls_depth = 12, ls_order = 8;
    std::string ls_boundary = "closed";
    auto* levelset = app.add_subcommand("levelset", "Certified level-set solve");
    levelset->add_option("--y", ls_y, "Level in [0,2/3]")->required();
    levelset->add_option("--depth", ls_depth, "Refinement depth (<= 40)");
    levelset->add_option("--max-order", ls_order, "Hump order for exact-point harvesting");
    levelset->add_option("--boundary", ls_boundary, "Boundary policy")
        ->check(CLI::IsMember({"closed", "half-open"}));

    // locals
    std::string loc_x;
    unsigned loc_depth = 6;
    auto* locals = app.add_subcommand("locals", "Local level set of a point");
    locals->add_option("--x", loc_x, "Point in [0,1)")->required();
    locals->add_option("--depth", loc_depth, "Excursions enumerated for Cantor-type classes");

    // humps
    unsigned hu_order = 3;
    bool hu_leading = false;
    int hu_generation = -1;
    auto* humps_cmd = app.add_subcommand("humps", "Enumerate humps");
    humps_cmd->add_option("--max-order", hu_order, "Maximum order")->required();
    humps_cmd->add_flag("--leading", hu_leading, "Leading humps only");
    humps_cmd->add_option("--generation", hu_generation, "Restrict to one generation");

    // invert
    std::string inv_y;
    unsigned inv_precision = 48;
    auto* invert = app.add_subcommand("invert", "Invert a level along the monotone spine");
    invert->add_option("--y", inv_y, "Level in [0,1/2]")->required();
    invert->add_option("--precision", inv_precision, "Enclosure width 2^-p");

    // stats
    unsigned st_order = 8;
    std::size_t st_samples = 0;
    std::uint64_t st_seed = 42;
    auto* stats = app.add_subcommand("stats", "Truncated-interval mass and average local counts");
    stats->add_option("--max-order", st_order, "Maximum order")->required();
    stats->add_option("--samples", st_samples, "Monte-Carlo sample count");
    stats->add_option("--seed", st_seed, "Monte-Carlo seed");

    // classify
    std::string cl_y;
    unsigned cl_depth = 16, cl_order = 8;
    auto* classify_cmd = app.add_subcommand("classify", "Budgeted level classification evidence");
    classify_cmd->add_option("--y", cl_y, "Level in [0,2/3]")->required();
    classify_cmd->add_option("--depth", cl_depth, "Solver depth");
    classify_cmd->add_option("--max-order", cl_order, "Hump order budget");

    // plot
    std::string plot_out;
    unsigned plot_depth = 10, plot_humps = 0;
    std::string plot_level;
    auto* plot = app.add_subcommand("plot", "Render the graph as SVG");
    plot->add_option("--out", plot_out, "Output file, or - for stdout")->required();
    plot->add_option("--depth", plot_depth, "Curve sampling depth (<= 16)");
    plot->add_option("--level", plot_level, "Draw the horizontal line at this level");
    plot->add_option("--humps", plot_humps, "Shade humps of order up to this");

    const auto t0 = std::chrono::steady_clock::now();
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        if (*dec_flag) common.decimals = decimals_opt;
        SerializeOptions so{common.decimals};

        if (*eval) {
            Rational x = parse_number(eval_x);
            json j{{"x", json_rational(x, so)}, {"T", json_rational(takagi_rational(x), so)}};
            if (series_terms > 0) {
                Enclosure enc = takagi_series(x, series_terms);
                j["series"] = json{{"terms", series_terms},
                                   {"lo", json_rational(enc.interval.lo, so)},
                                   {"hi", json_rational(enc.interval.hi, so)},
                                   {"width_bound", json_rational(enc.width_bound, so)}};
            }
            emit(j, common, "eval", t0, out);
            return 0;
        }
        if (*levelset) {
            Rational y = parse_number(ls_y);
            SolveOptions opts;
            opts.harvest_order = ls_order;
            LevelSetReport rep = solve(y, ls_depth, opts);
            if (common.format == "csv") {
                out << csv_brackets(rep);
            } else {
                emit(json_level_report(rep, so), common, "levelset", t0, out);
            }
            return rep.truncated ? 3 : 0;
        }
        if (*locals) {
            Rational x = parse_number(loc_x);
            PeriodicReal px = PeriodicReal::from_rational(x);
            LocalLevelSet set = local_level_set(px, loc_depth);
            json j = json_local_set(set, so);
            j["x"] = json_rational(x, so);
            j["binary"] = px.str();
            j["representative"] = reflect_nonneg(px).str();
            j["T"] = json_rational(takagi_rational(x), so);
            emit(j, common, "locals", t0, out);
            return 0;
        }
        if (*humps_cmd) {
            std::vector<Hump> list;
            if (hu_leading) {
                for (const BinaryWord& w : enumerate_leading(hu_order)) {
                    Hump h = hump(w);
                    if (hu_generation >= 0 && h.generation != static_cast<unsigned>(hu_generation)) continue;
                    list.push_back(std::move(h));
                }
            } else {
                std::optional<unsigned> gen;
                if (hu_generation >= 0) gen = static_cast<unsigned>(hu_generation);
                for (const BinaryWord& w : enumerate_balanced(hu_order, gen)) list.push_back(hump(w));
            }
            if (common.format == "csv") {
                out << csv_humps(list);
            } else {
                json arr = json::array();
                for (const Hump& h : list) arr.push_back(json_hump(h, so));
                emit(json{{"count", list.size()}, {"humps", std::move(arr)}}, common, "humps", t0, out);
            }
            return 0;
        }
        if (*invert) {
            Rational y = parse_number(inv_y);
            SpinePoint p = spine_invert(y, inv_precision);
            json j = json_spine_point(p, so);
            j["y"] = json_rational(y, so);
            j["precision"] = inv_precision;
            emit(j, common, "invert", t0, out);
            return 0;
        }
        if (*stats) {
            JtMass mass = jt_mass(st_order);
            Rational avg = average_count_exact(st_order);
            json j{{"max_order", st_order},
                   {"jt_mass", json_rational(mass.closed_form, so)},
                   {"jt_mass_enumerated", json_rational(mass.enumerated, so)},
                   {"avg_count", json_rational(avg, so)}};
            std::vector<std::size_t> counts = count_leading_per_order(st_order);
            j["leading_counts"] = counts;
            if (st_samples > 0) {
                Rational mc = kernels::mc_average_hits(st_order, st_samples, st_seed);
                j["mc_average"] = json_rational(mc, so);
                j["mc_samples"] = st_samples;
                j["mc_seed"] = st_seed;
            }
            emit(j, common, "stats", t0, out);
            return 0;
        }
        if (*classify_cmd) {
            Rational y = parse_number(cl_y);
            ClassificationReport rep = classify(y, cl_depth, cl_order);
            emit(json_classification(rep, so), common, "classify", t0, out);
            return rep.truncated ? 3 : 0;
        }
        if (*plot) {
            PlotRequest req;
            req.depth = plot_depth;
            req.hump_orders = plot_humps;
            if (!plot_level.empty()) req.level = parse_number(plot_level);
            std::string svg = render_svg(req);
            if (plot_out == "-") {
                out << svg;
            } else {
                std::ofstream file(plot_out, std::ios::binary);
                if (!file) throw DomainError("cannot open output file: " + plot_out);
                file << svg;
                emit(json{{"written", plot_out}, {"bytes", svg.size()}}, common, "plot", t0, out);
            }
            return 0;
        }
        err << app.help();
        return 2;
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
            out << app.help();
            return 0;
        }
        err << e.what() << "\n\n" << app.help();
        return 2;
    } catch (const ResourceError& e) {
        err << "resource cap: " << e.what() << "\n";
        return 3;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const StructureError& e) {
        err << "structural error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace takagi::cli
