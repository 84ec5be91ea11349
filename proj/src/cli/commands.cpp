#include "magcouple/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "magcouple/core/kittel.hpp"
#include "magcouple/errors.hpp"
#include "magcouple/fit/fit.hpp"
#include "magcouple/fit/pipeline.hpp"
#include "magcouple/io/config.hpp"
#include "magcouple/io/csv.hpp"
#include "magcouple/io/pgm.hpp"
#include "magcouple/io/report.hpp"
#include "magcouple/oracle/oracle.hpp"
#include "magcouple/sweep/anticrossing.hpp"

namespace magcouple::cli {

namespace fs = std::filesystem;

namespace {

int exit_code_for(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::Config:
    case ErrorKind::InvalidSystem:
    case ErrorKind::NegativeField:
    case ErrorKind::NegativeFrequency:
    case ErrorKind::InvalidGrid:
    case ErrorKind::NegativeCoupling:
    case ErrorKind::DegenerateProblem:
        return kConfigError;
    case ErrorKind::Io:
        return kIoError;
    case ErrorKind::MalformedData:
    case ErrorKind::EmptyMap:
        return kMalformedData;
    default:
        return kFailure;
    }
}

int guarded(std::ostream& err, const std::function<int()>& body)
{
    try {
        return body();
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
}

// Runs `write` against the file at `path`, or against `fallback` if path is empty.
void write_output(const std::string& path, std::ostream& fallback, bool binary,
                  const std::function<void(std::ostream&)>& write)
{
    if (path.empty()) {
        write(fallback);
        return;
    }
    std::ofstream os(path, binary ? std::ios::binary | std::ios::trunc : std::ios::trunc);
    if (!os)
        raise(ErrorKind::Io, fmt::format("cannot open '{}' for writing", path));
    write(os);
    os.flush();
    if (!os)
        raise(ErrorKind::Io, fmt::format("write to '{}' failed", path));
}

std::string sibling(const std::string& out, const std::string& suffix, const std::string& ext)
{
    fs::path p(out);
    const fs::path stem = p.parent_path() / p.stem();
    return stem.string() + suffix + ext;
}

RunConfig load(const Options& opts)
{
    if (opts.config.empty())
        raise(ErrorKind::Config, "--config is required");
    return load_config(opts.config);
}

double freq_scale(const Options& opts, const RunConfig& cfg)
{
    return opts.freq_scale ? *opts.freq_scale : cfg.freq_scale;
}

std::vector<double> default_field_grid(const SystemTemplate& tmpl)
{
    const auto magnons = tmpl.magnon_indices();
    if (magnons.empty())
        return linspace(0.0, 1000.0, 201);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t m : magnons) {
        const double h = crossing_field(tmpl, m);
        lo = std::min(lo, h);
        hi = std::max(hi, h);
    }
    return linspace(0.5 * lo, 1.5 * hi, 201);
}

std::vector<double> default_freq_grid(const SystemTemplate& tmpl)
{
    const double center = tmpl.modes[tmpl.resonator_index()].spec.omega;
    double spread = 0.0;
    for (const auto& c : tmpl.couplings)
        spread = std::max(spread, std::abs(c.g));
    for (const auto& m : tmpl.modes)
        spread = std::max(spread, m.spec.alpha + m.spec.beta);
    if (spread == 0.0)
        spread = 0.1;
    return linspace(std::max(0.0, center - 6.0 * spread), center + 6.0 * spread, 401);
}

std::vector<double> field_grid(const RunConfig& cfg, const SystemTemplate& tmpl)
{
    return cfg.field_grid ? cfg.field_grid->points() : default_field_grid(tmpl);
}

std::vector<double> freq_grid(const RunConfig& cfg, const SystemTemplate& tmpl)
{
    return cfg.freq_grid ? cfg.freq_grid->points() : default_freq_grid(tmpl);
}

// Starting value for one free parameter when the config gives none:
// couplings from half the ridge gap at their crossing, dampings from a
// quarter of the ridge linewidth (2 (alpha + beta), split evenly), anything
// else from the template value.
double default_initial(const SpectrumMap& map, const SystemTemplate& tmpl, const FitBlock& fit, const ParamRef& ref,
                       double lower, double upper)
{
    auto inside = [&](double v) { return std::isfinite(v) && v >= lower && v <= upper; };
    const double midpoint = 0.5 * (lower + upper);
    if (ref.kind == ParamKind::Coupling) {
        const auto magnons = tmpl.magnon_indices();
        const std::size_t res = tmpl.resonator_index();
        const std::size_t magnon = ref.mode == res ? ref.other : ref.mode;
        if ((ref.mode == res || ref.other == res) && tmpl.modes[magnon].is_magnon()) {
            const RidgeSet ridges = extract_ridges(map, fit.n_ridges, fit.min_separation);
            const FieldWindow w = crossing_window(tmpl, magnon, map.fields.front(), map.fields.back());
            const double gap = ridge_gap(ridges, w, tmpl.modes[res].spec.omega);
            if (gap > 0.0 && inside(gap / 2.0))
                return gap / 2.0;
        }
    } else if (ref.kind == ParamKind::Alpha || ref.kind == ParamKind::Beta) {
        // row where this mode sits farthest from every other mode
        double best_dist = -1.0, best_freq = 0.0;
        std::size_t best_row = 0;
        for (std::size_t i = 0; i < map.rows(); ++i) {
            const HybridSystem sys = instantiate(tmpl, map.fields[i]);
            const double w = sys.mode(ref.mode).omega;
            if (w < map.freqs.front() || w > map.freqs.back())
                continue;
            double dist = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < sys.size(); ++k)
                if (k != ref.mode)
                    dist = std::min(dist, std::abs(sys.mode(k).omega - w));
            if (dist > best_dist) {
                best_dist = dist;
                best_row = i;
                best_freq = w;
            }
        }
        if (best_dist >= 0.0) {
            const double width = ridge_fwhm(map, best_row, best_freq);
            if (width > 0.0 && inside(width / 4.0))
                return width / 4.0;
        }
    }
    const double current = get_param(tmpl, ref);
    return inside(current) ? current : midpoint;
}

}  // namespace

int cmd_kittel(const Options& opts, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const RunConfig cfg = load(opts);
        std::vector<double> fields = opts.fields;
        if (fields.empty()) {
            if (!cfg.field_grid)
                raise(ErrorKind::Config, "no fields given: pass --fields or set 'field_grid'");
            fields = cfg.field_grid->points();
        }
        struct Row {
            double h;
            std::string mode;
            double omega;
        };
        std::vector<Row> rows;
        for (const auto& m : cfg.modes) {
            if (!m.material)
                continue;
            const KittelMaterial mat = resolve_material(cfg, *m.material);
            for (double h : fields)
                rows.push_back({h, m.label, kittel_frequency(mat, h)});
        }
        if (rows.empty())
            raise(ErrorKind::Config, "config has no Kittel modes");

        const double scale = freq_scale(opts, cfg);
        out << fmt::format("{:>14} {:>12} {:>20}\n", "H (Oe)", "mode", "omega");
        for (const auto& r : rows)
            out << fmt::format("{:>14.6f} {:>12} {:>20.12g}\n", r.h, r.mode, r.omega * scale);
        if (!opts.out.empty()) {
            write_output(opts.out, out, false, [&](std::ostream& os) {
                os << "h_oe,mode,omega\n";
                for (const auto& r : rows)
                    os << format_double(r.h) << ',' << r.mode << ',' << format_double(r.omega) << '\n';
            });
        }
        return static_cast<int>(kOk);
    });
}

namespace {

int write_map(const Options& opts, std::ostream& out, const SpectrumMap& map)
{
    write_output(opts.out, out, false, [&](std::ostream& os) { write_spectrum_csv(os, map); });
    if (opts.heatmap) {
        if (opts.out.empty())
            raise(ErrorKind::Config, "--heatmap needs --out to name the image");
        write_output(sibling(opts.out, "", ".pgm"), out, true,
                     [&](std::ostream& os) { write_heatmap_pgm(os, map); });
    }
    return kOk;
}

}  // namespace

int cmd_map(const Options& opts, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const RunConfig cfg = load(opts);
        const SystemTemplate tmpl = build_template(cfg);
        return write_map(opts, out, compute_map(tmpl, field_grid(cfg, tmpl), freq_grid(cfg, tmpl)));
    });
}

int cmd_synth(const Options& opts, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const RunConfig cfg = load(opts);
        const SystemTemplate tmpl = build_template(cfg);
        NoiseSpec noise = cfg.noise.value_or(NoiseSpec{});
        if (opts.seed)
            noise.seed = *opts.seed;
        return write_map(opts, out, synth_map(tmpl, field_grid(cfg, tmpl), freq_grid(cfg, tmpl), noise));
    });
}

int cmd_branches(const Options& opts, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const RunConfig cfg = load(opts);
        const SystemTemplate tmpl = build_template(cfg);
        const BranchCurves curves = compute_branches(tmpl, field_grid(cfg, tmpl));
        write_output(opts.out, out, false, [&](std::ostream& os) { write_branches_csv(os, curves); });
        return static_cast<int>(kOk);
    });
}

int cmd_fit(const Options& opts, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const RunConfig cfg = load(opts);
        if (!cfg.fit)
            raise(ErrorKind::Config, "config has no 'fit' block");
        if (opts.data.empty())
            raise(ErrorKind::Config, "--data is required");
        const FitBlock& block = *cfg.fit;
        const SystemTemplate tmpl = build_template(cfg);

        std::ifstream in(opts.data, std::ios::binary);
        if (!in)
            raise(ErrorKind::Io, fmt::format("cannot read data '{}'", opts.data));
        const SpectrumMap map = read_spectrum_csv(in);

        FitProblem problem{tmpl, {}};
        for (const auto& p : block.params) {
            const ParamRef ref = parse_param(tmpl, p.name);
            const double init = p.initial ? *p.initial : default_initial(map, tmpl, block, ref, p.lower, p.upper);
            problem.params.push_back({ref, p.lower, p.upper, init});
        }
        FitOptions fo;
        fo.refine = block.refine;
        fo.optim.max_iterations = static_cast<int>(block.max_iterations);
        if (opts.seed)
            fo.seed = *opts.seed;

        FitResult result;
        if (block.method == "branches")
            result = fit_branches(extract_ridges(map, block.n_ridges, block.min_separation), problem, fo);
        else
            result = fit_map(map, problem, fo);

        write_output(opts.out, out, false, [&](std::ostream& os) { write_fit_report(os, result, block.method); });
        return static_cast<int>(result.converged ? kOk : kNotConverged);
    });
}

int cmd_thickness(const Options& opts, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const RunConfig cfg = load(opts);
        if (!cfg.thickness)
            raise(ErrorKind::Config, "config has no 'thickness' block");
        const SystemTemplate tmpl = build_template(cfg);

        ThicknessStudy study;
        study.base = tmpl;
        study.model = cfg.thickness->model;
        study.crosslink = cfg.thickness->crosslink;
        study.pairs = sweep_couplings(cfg);
        study.thicknesses = cfg.thickness->thicknesses;
        study.fields = field_grid(cfg, tmpl);
        study.freqs = freq_grid(cfg, tmpl);
        study.noise = cfg.noise.value_or(NoiseSpec{});
        if (opts.seed)
            study.noise.seed = *opts.seed;
        study.fit = cfg.fit.has_value();
        if (cfg.fit) {
            study.n_ridges = cfg.fit->n_ridges;
            study.min_separation = cfg.fit->min_separation;
            study.fit_options.refine = cfg.fit->refine;
            study.fit_options.optim.max_iterations = static_cast<int>(cfg.fit->max_iterations);
        }
        const ThicknessResult result = run_thickness_study(study);

        write_output(opts.out, out, false, [&](std::ostream& os) {
            os << "t_um,g1,g2,gap_p1,gap_p2\n";
            for (const auto& r : result.rows)
                os << format_double(r.t) << ',' << format_double(r.g1) << ',' << format_double(r.g2) << ','
                   << format_double(r.gap_p1) << ',' << format_double(r.gap_p2) << '\n';
        });
        std::ostream& summary = opts.out.empty() ? err : out;
        auto line = [&](const char* name, const std::optional<LinearFit>& f) {
            if (f)
                summary << fmt::format("{}: slope={:.17g} intercept={:.17g} r2={:.17g}\n", name, f->slope,
                                       f->intercept, f->r_squared);
            else
                summary << name << ": undefined (constant predictor or single thickness)\n";
        };
        line("g2_vs_t", result.g2_vs_t);
        line("g1_vs_g2", result.g1_vs_g2);

        if (opts.heatmap) {
            if (opts.out.empty())
                raise(ErrorKind::Config, "--heatmap needs --out to name the images");
            const auto sweep = thickness_sweep(tmpl, study.model, study.crosslink, study.thicknesses, study.pairs);
            for (std::size_t i = 0; i < sweep.size(); ++i) {
                const SpectrumMap map = synth_map(sweep[i].second, study.fields, study.freqs,
                                                  {study.noise.sigma, study.noise.seed + i});
                const std::string suffix = fmt::format("_t{}", sweep[i].first);
                write_output(sibling(opts.out, suffix, ".csv"), out, false,
                             [&](std::ostream& os) { write_spectrum_csv(os, map); });
                write_output(sibling(opts.out, suffix, ".pgm"), out, true,
                             [&](std::ostream& os) { write_heatmap_pgm(os, map); });
            }
        }
        bool converged = true;
        for (const auto& r : result.rows)
            converged = converged && r.converged;
        return static_cast<int>(converged ? kOk : kNotConverged);
    });
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Coupled-mode transmission simulator and fitter for photon-mediated magnon-magnon coupling"};
    app.require_subcommand(1);
    Options opts;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", opts.config, "Run configuration (JSON)")->required();
        sub->add_option("--out", opts.out, "Output path (default: standard output)");
        sub->add_option("--seed", opts.seed, "Override the noise / restart seed");
        sub->add_flag("--heatmap", opts.heatmap, "Also write a PGM heatmap of |S21| next to --out");
        sub->add_option("--freq-scale", opts.freq_scale, "Display scale for printed frequencies");
    };

    struct Entry {
        CLI::App* app;
        int (*fn)(const Options&, std::ostream&, std::ostream&);
    };
    std::vector<Entry> entries;
    auto* kittel = app.add_subcommand("kittel", "Kittel frequencies of every magnon mode");
    common(kittel);
    kittel->add_option("--fields", opts.fields, "Applied fields in Oe")->delimiter(',');
    entries.push_back({kittel, &cmd_kittel});
    auto* map = app.add_subcommand("map", "Noise-free S21 map as CSV");
    common(map);
    entries.push_back({map, &cmd_map});
    auto* synth = app.add_subcommand("synth", "S21 map with seeded complex Gaussian noise");
    common(synth);
    entries.push_back({synth, &cmd_synth});
    auto* branches = app.add_subcommand("branches", "Sorted eigenvalue branches as CSV");
    common(branches);
    entries.push_back({branches, &cmd_branches});
    auto* fit = app.add_subcommand("fit", "Fit the config's free parameters to a spectrum CSV");
    common(fit);
    fit->add_option("--data", opts.data, "Spectrum CSV to fit")->required();
    entries.push_back({fit, &cmd_fit});
    auto* thickness = app.add_subcommand("thickness", "YIG thickness sweep with gap and regression summary");
    common(thickness);
    entries.push_back({thickness, &cmd_thickness});

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    }
    for (const auto& e : entries)
        if (e.app->parsed())
            return e.fn(opts, out, err);
    return kConfigError;
}

}  // namespace magcouple::cli
