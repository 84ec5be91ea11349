#include "magcouple/fit/pipeline.hpp"

#include <algorithm>

#include "magcouple/errors.hpp"
#include "magcouple/sweep/anticrossing.hpp"

namespace magcouple {

namespace {

std::size_t magnon_of(const std::pair<std::size_t, std::size_t>& pair, std::size_t resonator)
{
    return pair.first == resonator ? pair.second : pair.first;
}

}  // namespace

std::pair<double, double> initial_couplings(const SpectrumMap& map, const SystemTemplate& tmpl,
                                            const SweepCouplings& pairs, std::size_t n_ridges,
                                            double min_separation, double fallback)
{
    const RidgeSet ridges = extract_ridges(map, n_ridges, min_separation);
    const std::size_t res = tmpl.resonator_index();
    const double center = tmpl.modes[res].spec.omega;
    auto guess = [&](const std::pair<std::size_t, std::size_t>& pair) {
        const FieldWindow w = crossing_window(tmpl, magnon_of(pair, res), map.fields.front(), map.fields.back());
        const double gap = ridge_gap(ridges, w, center);
        return gap > 0.0 ? gap / 2.0 : fallback;
    };
    return {guess(pairs.linked_pair), guess(pairs.thickness_pair)};
}

ThicknessResult run_thickness_study(const ThicknessStudy& study)
{
    const auto sweep = thickness_sweep(study.base, study.model, study.crosslink, study.thicknesses, study.pairs);
    const std::size_t res = study.base.resonator_index();
    const std::size_t p1 = magnon_of(study.pairs.linked_pair, res);
    const std::size_t p2 = magnon_of(study.pairs.thickness_pair, res);
    const ParamRef g1_ref{ParamKind::Coupling, study.pairs.linked_pair.first, study.pairs.linked_pair.second};
    const ParamRef g2_ref{ParamKind::Coupling, study.pairs.thickness_pair.first, study.pairs.thickness_pair.second};

    ThicknessResult out;
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        const auto& [t, truth] = sweep[i];
        ThicknessRow row;
        row.t = t;
        row.g1_true = get_param(truth, g1_ref);
        row.g2_true = get_param(truth, g2_ref);
        SystemTemplate model = truth;

        if (study.fit) {
            const NoiseSpec noise{study.noise.sigma, study.noise.seed + i};
            const SpectrumMap map = synth_map(truth, study.fields, study.freqs, noise);
            const auto [g1_0, g2_0] =
                initial_couplings(map, truth, study.pairs, study.n_ridges, study.min_separation, 0.1);
            auto bound = [](double g) { return std::max(1.0, 4.0 * g); };
            FitProblem problem{truth, {{g1_ref, 0.0, bound(g1_0), g1_0}, {g2_ref, 0.0, bound(g2_0), g2_0}}};
            // the generating couplings are unknown to the fit
            set_param(problem.tmpl, g1_ref, g1_0);
            set_param(problem.tmpl, g2_ref, g2_0);
            const FitResult fit = fit_map(map, problem, study.fit_options);
            model = problem.apply(fit.values);
            row.converged = fit.converged;
        }
        row.g1 = get_param(model, g1_ref);
        row.g2 = get_param(model, g2_ref);

        const BranchCurves curves = compute_branches(model, study.fields);
        const double lo = study.fields.front(), hi = study.fields.back();
        row.gap_p1 = anticrossing_gap(curves, crossing_window(model, p1, lo, hi)).gap;
        row.gap_p2 = anticrossing_gap(curves, crossing_window(model, p2, lo, hi)).gap;
        out.rows.push_back(row);
    }

    std::vector<double> ts, g1s, g2s;
    for (const auto& r : out.rows) {
        ts.push_back(r.t);
        g1s.push_back(r.g1);
        g2s.push_back(r.g2);
    }
    auto regress = [](const std::vector<double>& x, const std::vector<double>& y) -> std::optional<LinearFit> {
        try {
            return linear_regression(x, y);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::DegenerateData)
                throw;
            return std::nullopt;
        }
    };
    out.g2_vs_t = regress(ts, g2s);
    out.g1_vs_g2 = regress(g2s, g1s);
    return out;
}

}  // namespace magcouple
