// delaydim - command-line front end.
//
// Exit codes: 0 success, 2 validation error, 3 numerical failure.

#include <CLI11.hpp>

#include <delaydim/delaydim.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

using namespace delaydim;
using Json = nlohmann::json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
    out << text;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string pole_text(Complex z) {
    std::string s = format_double(z.real());
    s += z.imag() < 0 ? " - " : " + ";
    s += format_double(std::abs(z.imag())) + "i";
    return s;
}

struct EstimateOptions {
    std::string in;
    std::size_t hankel_n = 0;
    std::optional<double> epsilon;
    std::optional<double> noise_sigma;
    std::optional<std::size_t> known_d;
    std::optional<std::size_t> known_ds;
    bool json = false;
};

int run_estimate(const EstimateOptions& o) {
    const RealSequence seq = load_sequence_csv(o.in);
    const std::size_t n = o.hankel_n ? o.hankel_n : default_hankel_size(seq.size());
    double eps = 0.0;
    if (o.epsilon) eps = *o.epsilon;
    if (o.noise_sigma) eps = noise_epsilon(*o.noise_sigma, n);
    const RankReport rep = effective_rank(build_hankel(seq, n), eps);
    const DimensionBounds b = dimension_bounds(rep, o.known_d, o.known_ds);
    if (o.json) {
        Json j{{"samples", seq.size()},
               {"n", rep.n},
               {"epsilon", rep.epsilon},
               {"singular_values", rep.singular_values},
               {"dim_v_lower", rep.dim_v_lower},
               {"dim_v_exact_if_clean", rep.dim_v_exact_if_clean},
               {"dim_v", b.dim_v},
               {"d_min", b.d_min}};
        j["dim_c_max_given_d"] = b.dim_c_max_given_d ? Json(*b.dim_c_max_given_d) : Json(nullptr);
        j["d_e_min_given_ds"] = b.d_e_min_given_ds ? Json(*b.d_e_min_given_ds) : Json(nullptr);
        std::cout << j.dump(2) << '\n';
        return 0;
    }
    std::cout << "samples:            " << seq.size() << '\n'
              << "hankel size:        " << rep.n << '\n'
              << "epsilon:            " << format_double(rep.epsilon) << '\n'
              << "leading singular values:";
    for (std::size_t i = 0; i < std::min<std::size_t>(rep.singular_values.size(), 15); ++i)
        std::cout << ' ' << short_number(rep.singular_values[i]);
    std::cout << '\n';
    if (eps > 0.0)
        std::cout << "dim V >=            " << rep.dim_v_lower << "  (singular values above epsilon)\n";
    else
        std::cout << "dim V =             " << rep.dim_v_exact_if_clean << "  (relative threshold 1e-9)\n";
    std::cout << "Hilbert space d >=  " << b.d_min << '\n';
    if (b.dim_c_max_given_d)
        std::cout << "conserved quantities dim C <= " << *b.dim_c_max_given_d << "  (given d = " << *o.known_d << ")\n";
    if (b.d_e_min_given_ds)
        std::cout << "environment memory d_E >= " << *b.d_e_min_given_ds << "  (given d_S = " << *o.known_ds << ")\n";
    return 0;
}

LinearRealization realize_sequence(const RealSequence& seq, std::size_t hankel_n, double rank_tol) {
    const std::size_t n = hankel_n ? hankel_n : default_hankel_size(seq.size());
    return linear_realization(seq, n, rank_tol);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dimension estimation, realization and spectral analysis of observed expectation-value sequences"};
    app.require_subcommand(1);

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Generate a sequence from a model");
    simulate->require_subcommand(1);
    std::string channel_path, rho_path, obs_path, model_path, out_path;
    std::size_t steps = 0;
    auto* sim_q = simulate->add_subcommand("quantum", "a(t) = tr[A T^t(rho)]");
    sim_q->add_option("--channel", channel_path, "Channel JSON")->required();
    sim_q->add_option("--rho", rho_path, "State JSON")->required();
    sim_q->add_option("--obs", obs_path, "Observable JSON")->required();
    sim_q->add_option("--steps", steps, "Number of samples")->required()->check(CLI::PositiveNumber);
    sim_q->add_option("--out", out_path, "Output CSV")->required();
    auto* sim_c = simulate->add_subcommand("classical", "a(t) = <a|S^t|p>");
    sim_c->add_option("--model", model_path, "Stochastic model JSON")->required();
    sim_c->add_option("--steps", steps, "Number of samples")->required()->check(CLI::PositiveNumber);
    sim_c->add_option("--out", out_path, "Output CSV")->required();

    // estimate
    EstimateOptions est;
    auto* estimate = app.add_subcommand("estimate", "Hankel rank and dimension bounds");
    estimate->add_option("--in", est.in, "Sequence CSV")->required();
    estimate->add_option("--hankel-n", est.hankel_n, "Hankel size (default: half the sample count)");
    auto* eps_opt = estimate->add_option("--epsilon", est.epsilon, "Noise threshold on the Hankel operator norm");
    estimate->add_option("--noise-sigma", est.noise_sigma, "Per-sample noise deviation; derives epsilon")
        ->excludes(eps_opt);
    estimate->add_option("--known-d", est.known_d, "Known Hilbert space dimension");
    estimate->add_option("--known-ds", est.known_ds, "Known system dimension (bounds the environment memory)");
    estimate->add_flag("--json", est.json, "Print machine-readable JSON");

    // realize
    std::string in_path;
    std::size_t hankel_n = 0;
    double rank_tol = kDefaultRankTol;
    auto* realize = app.add_subcommand("realize", "Minimal contractive linear realization");
    realize->add_option("--in", in_path, "Sequence CSV")->required();
    realize->add_option("--hankel-n", hankel_n, "Hankel size (default: half the sample count)");
    realize->add_option("--rank-tol", rank_tol, "Relative rank threshold");
    realize->add_option("--out", out_path, "Realization JSON")->required();

    // dilate
    bool verify = false;
    auto* dilate = app.add_subcommand("dilate", "Quantum channel of dimension r + 2 reproducing a realization");
    dilate->add_option("--in", in_path, "Realization JSON")->required();
    dilate->add_option("--out", out_path, "Output JSON")->required();
    dilate->add_flag("--verify", verify, "Check complete positivity and trace preservation");

    // spectrum
    int order_max = kDefaultOrderMax;
    double tol = 1e-9;
    auto* spectrum = app.add_subcommand("spectrum", "Poles and the classical dimension lower bound");
    spectrum->add_option("--in", in_path, "Sequence CSV or realization JSON")->required();
    spectrum->add_option("--order-max", order_max, "Largest hull order tested")->check(CLI::PositiveNumber);
    spectrum->add_option("--tol", tol, "Pole tolerance");
    spectrum->add_option("--hankel-n", hankel_n, "Hankel size for CSV input");
    spectrum->add_option("--out", out_path, "Report JSON")->required();

    // experiment
    auto* experiment = app.add_subcommand("experiment", "Seeded experiment drivers");
    experiment->require_subcommand(1);
    ExperimentConfig cfg;
    unsigned threads = 1;
    auto* fig2 = experiment->add_subcommand("fig2", "Noisy Hankel rank sweep on random qutrit unitaries");
    fig2->add_option("--seed", cfg.seed, "Seed")->required();
    fig2->add_option("--trials", cfg.trials, "Number of trials")->check(CLI::PositiveNumber);
    fig2->add_option("--threads", threads, "Worker threads (0: hardware concurrency)");
    fig2->add_option("--out", out_path, "Output CSV")->required();
    int fig1_order = 4;
    auto* fig1 = experiment->add_subcommand("fig1", "Roots-of-unity hull polygons");
    fig1->add_option("--order-max", fig1_order, "Largest order")->required()->check(CLI::PositiveNumber);
    fig1->add_option("--out", out_path, "Output CSV")->required();
    double gamma = 0.1, omega = 0.7;
    auto* rabi = experiment->add_subcommand("rabi", "Damped oscillation: classical bound vs quantum dimension");
    rabi->add_option("--gamma", gamma, "Damping rate");
    rabi->add_option("--omega", omega, "Angular frequency");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (sim_q->parsed()) {
            const KrausChannel ch = json::channel_from_json(json::load_file(channel_path));
            const DensityMatrix rho = json::state_from_json(json::load_file(rho_path));
            const Observable a = json::observable_from_json(json::load_file(obs_path));
            save_sequence_csv(out_path, evolve_expectations(ch, rho, a, steps));
        } else if (sim_c->parsed()) {
            const StochasticModel model = json::stochastic_model_from_json(json::load_file(model_path));
            save_sequence_csv(out_path, evolve_classical(model, steps));
        } else if (estimate->parsed()) {
            return run_estimate(est);
        } else if (realize->parsed()) {
            const RealSequence seq = load_sequence_csv(in_path);
            const LinearRealization real = enforce_contraction(realize_sequence(seq, hankel_n, rank_tol));
            json::save_file(out_path, json::to_json(real));
            std::cout << "realization size r = " << real.r << ", norm " << short_number(real.contraction_norm) << '\n';
        } else if (dilate->parsed()) {
            LinearRealization real = json::realization_from_json(json::load_file(in_path));
            if (real.contraction_norm > 1.0 + kContractionTol) real = enforce_contraction(real);
            const QuantumRealization q = quantum_realization(real);
            json::save_file(out_path, json::to_json(q));
            std::cout << "dilation dimension " << q.dim << " (r = " << real.r << ")\n";
            if (verify) {
                const CptpReport rep = verify_cptp(q.channel);
                std::cout << "trace-preserving residual " << short_number(rep.trace_preserving_residual)
                          << ", Choi minimum eigenvalue " << short_number(rep.choi_min_eigenvalue) << ": "
                          << (rep.pass ? "PASS" : "FAIL") << '\n';
                if (!rep.pass) return kExitNumerical;
            }
        } else if (spectrum->parsed()) {
            LinearRealization real;
            if (ends_with(in_path, ".json"))
                real = json::realization_from_json(json::load_file(in_path));
            else
                real = realize_sequence(load_sequence_csv(in_path), hankel_n, kDefaultRankTol);
            const SpectralReport rep = spectral_report(real, order_max, tol);
            json::save_file(out_path, json::to_json(rep));
            for (const Complex& p : rep.poles) std::cout << "pole " << pole_text(p) << "  |z| = " << short_number(std::abs(p)) << '\n';
            std::cout << "classical states needed >= "
                      << (rep.min_classical_dimension ? std::to_string(*rep.min_classical_dimension) : "unbounded (order " + std::to_string(order_max) + " tested)")
                      << '\n';
        } else if (fig2->parsed()) {
            if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
            write_text(out_path, fig2_csv(cfg, run_fig2(cfg, threads)));
        } else if (fig1->parsed()) {
            write_text(out_path, emit_region_data(fig1_order));
        } else if (rabi->parsed()) {
            const SeparationReport rep = run_separation_demo(gamma, omega);
            std::cout << "a(t) = exp(-" << format_double(gamma) << " t) cos(" << format_double(omega) << " t), "
                      << rep.samples << " samples\n";
            for (const Complex& p : rep.poles) std::cout << "pole " << pole_text(p) << '\n';
            std::cout << "classical states needed >= "
                      << (rep.min_classical_dimension ? std::to_string(*rep.min_classical_dimension) : "unbounded")
                      << '\n'
                      << "dilation dimension r + 2 = " << rep.dilation_dim << " (max residual "
                      << short_number(rep.dilation_residual) << ")\n"
                      << "direct qubit model d = " << rep.direct_quantum_dim << " (max residual "
                      << short_number(rep.direct_model_residual) << ")\n";
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.numerical() ? kExitNumerical : kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return 0;
}
