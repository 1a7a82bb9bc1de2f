#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "oneshot/divergence.hpp"
#include "oneshot/io.hpp"
#include "oneshot/svgplot.hpp"

using namespace oneshot;

namespace {

void emit(const std::optional<std::string>& out_path, const std::string& content) {
    if (out_path)
        io::spit_file_atomic(*out_path, content);
    else
        std::cout << content;
}

std::string read_input(const std::string& path) {
    try {
        return io::slurp_file(path);
    } catch (const std::exception& e) {
        throw validation_error(std::string("input file: ") + e.what());
    }
}

DensityOperator to_density(const io::Hypothesis& h) {
    if (h.index() == 0) return classical_to_density(std::get<ClassicalDistribution>(h));
    return std::get<DensityOperator>(h);
}

int run_solve(const std::string& null_path, const std::string& alt_path, double epsilon,
              const std::optional<std::string>& out) {
    const io::Hypothesis h0 = io::read_hypothesis(read_input(null_path));
    const io::Hypothesis h1 = io::read_hypothesis(read_input(alt_path));
    TestCertificate cert;
    if (h0.index() == 0 && h1.index() == 0)
        cert = solve_classical(std::get<ClassicalDistribution>(h0),
                               std::get<ClassicalDistribution>(h1), epsilon);
    else
        cert = solve_quantum(to_density(h0), to_density(h1), epsilon);
    emit(out, io::write_certificate(cert));
    return 0;
}

int run_composite(const std::string& nulls_path, const std::string& alts_path, double epsilon,
                  const std::optional<std::string>& out) {
    std::vector<DensityOperator> nulls, alts;
    for (const auto& h : io::read_hypothesis_list(read_input(nulls_path)))
        nulls.push_back(to_density(h));
    for (const auto& h : io::read_hypothesis_list(read_input(alts_path)))
        alts.push_back(to_density(h));
    emit(out, io::write_certificate(solve_composite(nulls, alts, epsilon)));
    return 0;
}

int run_stein(const std::string& null_path, const std::string& alt_path, double epsilon,
              int nmax, const std::optional<std::string>& out) {
    const io::Hypothesis h0 = io::read_hypothesis(read_input(null_path));
    const io::Hypothesis h1 = io::read_hypothesis(read_input(alt_path));
    if (h0.index() != 0 || h1.index() != 0)
        throw validation_error("stein: hypotheses must be classical distributions");
    const RateCurve curve = stein_rate_curve(std::get<ClassicalDistribution>(h0),
                                             std::get<ClassicalDistribution>(h1), epsilon, nmax);
    io::Table t;
    t.columns = {"n", "rate_bits", "reference_bits"};
    for (const auto& p : curve.points)
        t.rows.push_back({double(p.n), p.rate_bits, curve.reference_bits});
    emit(out, io::write_csv(t));
    return 0;
}

int run_design(const std::string& channel_path, const std::string& star_path,
               const std::string& polytope_path, const std::string& method, int restarts,
               std::uint64_t seed, const std::optional<std::string>& out) {
    const io::LoadedChannel ch = io::read_channel(read_input(channel_path));
    if (ch.index() != 0) throw validation_error("design: channel must be classical");
    const io::Hypothesis star = io::read_hypothesis(read_input(star_path));
    if (star.index() != 0) throw validation_error("design: star must be a distribution");
    const io::PolytopeSpec spec = io::read_polytope(read_input(polytope_path));
    ConstraintPolytope polytope(spec.dim, spec.inequalities);

    DesignResult r;
    if (method == "exact")
        r = optimize_source_exact(std::get<ClassicalChannel>(ch),
                                  std::get<ClassicalDistribution>(star), polytope);
    else if (method == "gradient")
        r = optimize_source_gradient(std::get<ClassicalChannel>(ch),
                                     std::get<ClassicalDistribution>(star), polytope, restarts,
                                     seed);
    else
        throw validation_error("design: method must be 'exact' or 'gradient'");
    emit(out, io::write_design_result(r));
    return 0;
}

int run_inscribed(const std::string& noise_path, const std::string& null_path,
                  const std::string& energy_path, double budget, double epsilon,
                  const std::optional<std::string>& out) {
    const io::LoadedChannel ch = io::read_channel(read_input(noise_path));
    if (ch.index() != 0) throw validation_error("inscribed: noise must be classical");
    const io::Hypothesis h0 = io::read_hypothesis(read_input(null_path));
    if (h0.index() != 0) throw validation_error("inscribed: null must be a distribution");
    const io::PolytopeSpec espec = io::read_polytope(read_input(energy_path));
    if (!espec.has_energy)
        throw validation_error("inscribed: energy file must carry an energy form");

    const auto [design, cert] =
        inscribed_matter_design(std::get<ClassicalChannel>(ch),
                                std::get<ClassicalDistribution>(h0), epsilon, espec.energy, budget);
    nlohmann::json j;
    j["design"] = nlohmann::json::parse(io::write_design_result(design));
    j["certificate"] = nlohmann::json::parse(io::write_certificate(cert));
    emit(out, j.dump(2) + "\n");
    return 0;
}

int run_meteor(const std::vector<double>& lambdas, const std::vector<double>& epsilons, int kmax,
               const std::optional<std::string>& out) {
    std::vector<int> ks;
    for (int k = 0; k <= kmax; ++k) ks.push_back(k);
    MeteorScenario s(lambdas, epsilons, ks);
    io::Table t;
    t.columns = {"lambda", "epsilon", "k", "beta"};
    for (const auto& row : meteor_experiment(s))
        t.rows.push_back({row.lambda, row.epsilon, double(row.k), row.beta});
    emit(out, io::write_csv(t));
    return 0;
}

int run_laser(int g, int s, int c, double q, double delta, int n, const std::vector<int>& powers,
              const std::optional<std::string>& out) {
    io::Table t;
    t.columns = {"power", "kl_bits", "reference_bits"};
    for (const auto& row : laser_experiment(g, s, c, q, delta, n, powers))
        t.rows.push_back({double(row.power), row.kl_bits, row.reference_bits});
    emit(out, io::write_csv(t));
    return 0;
}

int run_analyze(const std::string& data_path, const std::string& null_path,
                const std::string& models_path, double epsilon, std::vector<double> random_values,
                const std::optional<std::string>& out) {
    const std::string data_text = read_input(data_path);
    const io::Hypothesis h0 = io::read_hypothesis(read_input(null_path));
    if (h0.index() != 0) throw validation_error("analyze: null must be a distribution");
    const ClassicalDistribution& null_dist = std::get<ClassicalDistribution>(h0);
    const long long observed =
        io::read_outcome(data_text, null_dist.space() ? &*null_dist.space() : nullptr);
    std::vector<ClassicalDistribution> models;
    for (const auto& h : io::read_hypothesis_list(read_input(models_path))) {
        if (h.index() != 0) throw validation_error("analyze: models must be distributions");
        models.push_back(std::get<ClassicalDistribution>(h));
    }
    if (random_values.empty()) random_values.assign(models.size(), 0.5);
    if (random_values.size() == 1 && models.size() > 1)
        random_values.assign(models.size(), random_values.front());

    MeasuredDataCase mcase(observed, null_dist, std::move(models), epsilon);
    emit(out, io::write_verdicts(analyze_measured_data(mcase, random_values)));
    return 0;
}

int run_plot(const std::string& table_path, const std::string& x, const std::string& y,
             const std::string& series, const std::string& out) {
    const io::Table t = io::read_csv(read_input(table_path));
    io::spit_file_atomic(out, io::plot_svg(t, x, y, series));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"one-shot hypothesis testing toolkit"};
    app.require_subcommand(1);

    std::string null_path, alt_path, nulls_path, alts_path, channel_path, star_path;
    std::string polytope_path, noise_path, energy_path, data_path, models_path, table_path;
    std::string xcol, ycol, seriescol, svg_out, method = "exact";
    std::optional<std::string> out;
    double epsilon = 0.05;
    double budget = 0.0, q = 0.2, delta = 0.1;
    int nmax = 8, kmax = 15, g = 6, s = 1, c = 1, n = 5, restarts = 8;
    std::uint64_t seed = 1;
    std::vector<double> lambdas{3.0, 6.0};
    std::vector<double> epsilons{0.05, 0.01, 0.001};
    std::vector<int> powers;
    std::vector<double> randoms;

    auto* solve = app.add_subcommand("solve", "optimal binary test for one hypothesis pair");
    solve->add_option("--null", null_path)->required();
    solve->add_option("--alt", alt_path)->required();
    solve->add_option("--epsilon", epsilon)->required();
    solve->add_option("--out", out);

    auto* comp = app.add_subcommand("composite", "test against finite hypothesis sets");
    comp->add_option("--nulls", nulls_path)->required();
    comp->add_option("--alts", alts_path)->required();
    comp->add_option("--epsilon", epsilon)->required();
    comp->add_option("--out", out);

    auto* stein = app.add_subcommand("stein", "block-length rate scan toward the Stein limit");
    stein->add_option("--null", null_path)->required();
    stein->add_option("--alt", alt_path)->required();
    stein->add_option("--epsilon", epsilon)->required();
    stein->add_option("--nmax", nmax);
    stein->add_option("--out", out);

    auto* design = app.add_subcommand("design", "optimal source under polytope constraints");
    design->add_option("--channel", channel_path)->required();
    design->add_option("--star", star_path)->required();
    design->add_option("--polytope", polytope_path)->required();
    design->add_option("--method", method);
    design->add_option("--restarts", restarts);
    design->add_option("--seed", seed);
    design->add_option("--out", out);

    auto* inscribed = app.add_subcommand("inscribed", "alternating designed-signal optimization");
    inscribed->add_option("--noise", noise_path)->required();
    inscribed->add_option("--null", null_path)->required();
    inscribed->add_option("--energy", energy_path)->required();
    inscribed->add_option("--budget", budget)->required();
    inscribed->add_option("--epsilon", epsilon)->required();
    inscribed->add_option("--out", out);

    auto* meteor = app.add_subcommand("meteor", "extra-meteor detection sweep");
    meteor->add_option("--lambdas", lambdas);
    meteor->add_option("--epsilons", epsilons);
    meteor->add_option("--kmax", kmax);
    meteor->add_option("--out", out);

    auto* laser = app.add_subcommand("laser", "pulsed-laser power-independence table");
    laser->add_option("--g", g);
    laser->add_option("--s", s);
    laser->add_option("--c", c);
    laser->add_option("--q", q);
    laser->add_option("--delta", delta);
    laser->add_option("--n", n);
    laser->add_option("--powers", powers)->required();
    laser->add_option("--out", out);

    auto* analyze = app.add_subcommand("analyze", "verdicts for already-measured data");
    analyze->add_option("--data", data_path)->required();
    analyze->add_option("--null", null_path)->required();
    analyze->add_option("--models", models_path)->required();
    analyze->add_option("--epsilon", epsilon)->required();
    analyze->add_option("--random", randoms);
    analyze->add_option("--out", out);

    auto* plot = app.add_subcommand("plot", "SVG line plot of a result table");
    plot->add_option("--table", table_path)->required();
    plot->add_option("--x", xcol)->required();
    plot->add_option("--y", ycol)->required();
    plot->add_option("--series", seriescol)->required();
    plot->add_option("--out", svg_out)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve) return run_solve(null_path, alt_path, epsilon, out);
        if (*comp) return run_composite(nulls_path, alts_path, epsilon, out);
        if (*stein) return run_stein(null_path, alt_path, epsilon, nmax, out);
        if (*design)
            return run_design(channel_path, star_path, polytope_path, method, restarts, seed, out);
        if (*inscribed)
            return run_inscribed(noise_path, null_path, energy_path, budget, epsilon, out);
        if (*meteor) return run_meteor(lambdas, epsilons, kmax, out);
        if (*laser) return run_laser(g, s, c, q, delta, n, powers, out);
        if (*analyze)
            return run_analyze(data_path, null_path, models_path, epsilon, randoms, out);
        if (*plot) return run_plot(table_path, xcol, ycol, seriescol, svg_out);
    } catch (const convergence_error& e) {
        std::fprintf(stderr, "{\"error\": \"non-convergence\", \"detail\": \"%s\", \"last_gap\": %g}\n",
                     e.what(), e.last_gap);
        return 4;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "{\"error\": \"validation\", \"detail\": \"%s\"}\n", e.what());
        return 2;
    } catch (const capacity_error& e) {
        std::fprintf(stderr, "{\"error\": \"capacity\", \"detail\": \"%s\"}\n", e.what());
        return 2;
    } catch (const infeasible_error& e) {
        std::fprintf(stderr, "{\"error\": \"infeasible\", \"detail\": \"%s\"}\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "{\"error\": \"io\", \"detail\": \"%s\"}\n", e.what());
        return 3;
    }
    return 0;
}
