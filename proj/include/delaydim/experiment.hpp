// experiment.hpp - seeded experiment drivers behind `delaydim experiment`:
// the noisy-rank sweep on random qutrit unitaries, hull region data, and the
// damped-oscillation classical/quantum separation demo.
#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dilation.hpp"
#include "error.hpp"
#include "quantum.hpp"
#include "realization.hpp"
#include "rng.hpp"
#include "sequence_io.hpp"
#include "sequences.hpp"
#include "spectral.hpp"

namespace delaydim {

struct ExperimentConfig {
    std::uint64_t seed = 0;
    std::size_t trials = 20;
    Eigen::Index d = 3;
    std::size_t steps = 101;
    std::size_t hankel_n = 50;
    std::vector<double> noise_fractions{0.01, 0.02, 0.03, 0.04, 0.05, 0.06, 0.07, 0.08, 0.09, 0.10};
    std::size_t reported_singular_values = 15;

    void validate() const {
        if (trials < 1) throw Error(ErrorCode::InvalidParameter, "trials must be positive");
        if (d < 1) throw Error(ErrorCode::InvalidParameter, "d must be positive");
        if (hankel_n < 1) throw Error(ErrorCode::InvalidParameter, "hankel_n must be positive");
        if (steps < 2 * hankel_n)
            throw Error(ErrorCode::InvalidParameter, "steps must be at least 2 * hankel_n");
        for (double f : noise_fractions)
            if (!(f >= 0.0 && f <= 1.0))
                throw Error(ErrorCode::InvalidParameter, "noise fractions must lie in [0, 1]");
    }

    /// dim V of a generic unitary sequence: d^2 - d + 1 (d eigenprojectors are conserved).
    std::size_t expected_rank() const { return static_cast<std::size_t>(d * d - d + 1); }
};

struct NoisyRank {
    double fraction = 0.0;
    double sigma = 0.0;
    double epsilon = 0.0;
    std::size_t effective_rank = 0;
    std::vector<double> singular_values;  ///< leading values only
};

struct Fig2Trial {
    std::size_t trial = 0;
    std::size_t clean_rank = 0;
    double separation_ratio = 0.0;  ///< s_k / s_{k+1} at k = expected rank
    std::vector<double> clean_singular_values;
    std::vector<NoisyRank> noisy;
};

inline Fig2Trial run_fig2_trial(const ExperimentConfig& cfg, std::size_t trial) {
    const std::uint64_t instance_seed = derive_seed(cfg.seed, {trial});
    const KrausChannel channel = random_unitary_channel(cfg.d, instance_seed);
    const DensityMatrix rho = random_state(cfg.d, instance_seed);
    const Observable a = random_observable(cfg.d, instance_seed);
    const RealSequence seq = evolve_expectations(channel, rho, a, cfg.steps);
    const std::size_t keep = std::min(cfg.reported_singular_values, cfg.hankel_n);

    Fig2Trial out;
    out.trial = trial;
    const RankReport clean = effective_rank(build_hankel(seq, cfg.hankel_n), 0.0);
    out.clean_rank = clean.dim_v_exact_if_clean;
    out.clean_singular_values.assign(clean.singular_values.begin(), clean.singular_values.begin() + keep);
    const std::size_t k = cfg.expected_rank();
    if (k < clean.singular_values.size()) {
        const double below = clean.singular_values[k];
        out.separation_ratio = below > 0.0 ? clean.singular_values[k - 1] / below : INFINITY;
    }

    const double amplitude = seq.max_abs();
    for (std::size_t f = 0; f < cfg.noise_fractions.size(); ++f) {
        Engine engine(derive_seed(cfg.seed, {trial, f + 1}));
        std::normal_distribution<double> normal(0.0, 1.0);
        NoisyRank nr;
        nr.fraction = cfg.noise_fractions[f];
        nr.sigma = nr.fraction * amplitude;
        std::vector<double> noisy = seq.vector();
        for (double& v : noisy) v += nr.sigma * normal(engine);
        nr.epsilon = noise_epsilon(nr.sigma, cfg.hankel_n);
        const RankReport rep = effective_rank(build_hankel(RealSequence(std::move(noisy)), cfg.hankel_n), nr.epsilon);
        nr.effective_rank = rep.dim_v_lower;
        nr.singular_values.assign(rep.singular_values.begin(), rep.singular_values.begin() + keep);
        out.noisy.push_back(std::move(nr));
    }
    return out;
}

/// Runs all trials; `threads` > 1 distributes trials over worker threads.
/// Results are ordered by trial index and do not depend on `threads`.
inline std::vector<Fig2Trial> run_fig2(const ExperimentConfig& cfg, unsigned threads = 1) {
    cfg.validate();
    std::vector<Fig2Trial> results(cfg.trials);
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(cfg.trials)));
    if (threads == 1) {
        for (std::size_t t = 0; t < cfg.trials; ++t) results[t] = run_fig2_trial(cfg, t);
        return results;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned w = 0; w < threads; ++w)
        pool.emplace_back([&, w] {
            try {
                for (std::size_t t = w; t < cfg.trials; t += threads) results[t] = run_fig2_trial(cfg, t);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

inline std::string fig2_csv(const ExperimentConfig& cfg, const std::vector<Fig2Trial>& trials) {
    const std::size_t keep = std::min(cfg.reported_singular_values, cfg.hankel_n);
    std::ostringstream out;
    out << "trial,noise_fraction,sigma,epsilon,effective_rank,clean_rank,separation_ratio";
    for (std::size_t i = 1; i <= keep; ++i) out << ",s" << i;
    out << '\n';
    auto values = [&](const std::vector<double>& s) {
        for (double v : s) out << ',' << format_double(v);
    };
    for (const auto& tr : trials) {
        out << tr.trial << ",0,0,0," << tr.clean_rank << ',' << tr.clean_rank << ','
            << format_double(tr.separation_ratio);
        values(tr.clean_singular_values);
        out << '\n';
        for (const auto& nr : tr.noisy) {
            out << tr.trial << ',' << format_double(nr.fraction) << ',' << format_double(nr.sigma) << ','
                << format_double(nr.epsilon) << ',' << nr.effective_rank << ',' << tr.clean_rank << ',';
            values(nr.singular_values);
            out << '\n';
        }
    }
    return out.str();
}

/// Hull polygons for orders 1..order_max, plus the unit circle as order 0
/// (`circle_points` vertices), in the CSV layout `order,vertex_index,re,im`.
inline std::string emit_region_data(int order_max, int circle_points = 256) {
    if (order_max < 1) throw Error(ErrorCode::InvalidParameter, "order_max must be at least 1");
    std::ostringstream out;
    out << "order,vertex_index,re,im\n";
    for (int i = 0; i < circle_points; ++i) {
        const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * i / circle_points);
        out << "0," << i << ',' << format_double(z.real()) << ',' << format_double(z.imag()) << '\n';
    }
    for (int n = 1; n <= order_max; ++n) {
        const UnityHull hull = unity_hull(n);
        for (std::size_t i = 0; i < hull.vertices.size(); ++i)
            out << n << ',' << i << ',' << format_double(hull.vertices[i].real()) << ','
                << format_double(hull.vertices[i].imag()) << '\n';
    }
    return out.str();
}

struct SeparationReport {
    double gamma = 0.0;
    double omega = 0.0;
    std::size_t samples = 0;
    std::vector<Complex> poles;
    std::optional<int> min_classical_dimension;
    std::size_t realization_size = 0;
    Eigen::Index dilation_dim = 0;       ///< r + 2 from the explicit construction
    Eigen::Index direct_quantum_dim = 2; ///< the qubit dephasing-rotation channel
    double direct_model_residual = 0.0;  ///< max |a(t) - tr[sigma_x T^t(|+><+|)]|
    double dilation_residual = 0.0;      ///< max |a(t) - tr[A T^t(rho)]| for the dilation
};

/// Damped oscillation a(t) = exp(-gamma t) cos(omega t): poles, classical
/// lower bound, size of the dilation, and a direct qubit model.
inline SeparationReport run_separation_demo(double gamma = 0.1, double omega = 0.7, std::size_t samples = 16,
                                            std::size_t check_steps = 200, int order_max = kDefaultOrderMax) {
    std::vector<double> a(samples);
    for (std::size_t t = 0; t < samples; ++t)
        a[t] = std::exp(-gamma * static_cast<double>(t)) * std::cos(omega * static_cast<double>(t));
    const RealSequence seq(a);

    SeparationReport rep;
    rep.gamma = gamma;
    rep.omega = omega;
    rep.samples = samples;
    const LinearRealization raw = linear_realization(seq, default_hankel_size(samples));
    const LinearRealization real = enforce_contraction(raw);
    rep.realization_size = real.r;
    rep.poles = poles(real);
    rep.min_classical_dimension = min_classical_dimension(rep.poles, order_max, 1e-9);

    auto truth = [&](std::size_t t) {
        return std::exp(-gamma * static_cast<double>(t)) * std::cos(omega * static_cast<double>(t));
    };
    const QuantumRealization q = quantum_realization(real);
    rep.dilation_dim = q.dim;
    const RealSequence dil = evolve_expectations(q.channel, q.rho, q.a, check_steps + 1);
    for (std::size_t t = 0; t <= check_steps; ++t)
        rep.dilation_residual = std::max(rep.dilation_residual, std::abs(dil[t] - truth(t)));

    CMatrix plus = CMatrix::Constant(2, 2, 0.5);
    CMatrix sx = CMatrix::Zero(2, 2);
    sx(0, 1) = sx(1, 0) = 1.0;
    const RealSequence direct = evolve_expectations(dephasing_rotation_channel(gamma, omega), DensityMatrix(plus),
                                                    Observable(sx), check_steps + 1);
    for (std::size_t t = 0; t <= check_steps; ++t)
        rep.direct_model_residual = std::max(rep.direct_model_residual, std::abs(direct[t] - truth(t)));
    return rep;
}

}  // namespace delaydim
