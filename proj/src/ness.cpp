#include "ssbh/ness.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ssbh/error.hpp"
#include "ssbh/rates.hpp"

namespace ssbh {

namespace {

constexpr double kTailSafety = 1e-4;
constexpr double kAdmissibleRatio = 1e-6;

// C_p / D_{p+1} = sum_l G_l n_l(omega_p) / sum_l G_l (n_l(omega_p) + 1)
double step_ratio(Level p, const Setup& setup) {
    const double w = level_freq(p, setup.system);
    const double g1 = setup.bath1.gamma;
    const double g2 = setup.bath2.gamma;
    const double up = g1 * bose(w, setup.bath1) + g2 * bose(w, setup.bath2);
    return up / (up + g1 + g2);
}

double up_down_ratio(Level n, const Setup& setup) {
    const LevelRates r = level_rates(n, setup);
    return r.d > 0.0 ? r.c / r.d : 0.0;
}

bool close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace

void TruncationOptions::validate() const {
    if (!(tol > 0.0 && tol <= 1e-6))
        throw Error(ErrorCode::InvalidParameter, "truncation tol must lie in (0, 1e-6]");
    if (cap < 2) throw Error(ErrorCode::InvalidParameter, "truncation cap must be >= 2");
}

NessDistribution steady_populations_at(const Setup& setup, Level n_max) {
    setup.validate();
    NessDistribution dist;
    dist.n_max = n_max;
    dist.rho.resize(n_max + 1);
    dist.rho[0] = 1.0;
    double z = 1.0;
    double ratio = 0.0;
    for (Level n = 1; n <= n_max; ++n) {
        ratio = step_ratio(n - 1, setup);
        dist.rho[n] = dist.rho[n - 1] * ratio;
        z += dist.rho[n];
    }
    for (double& r : dist.rho) r /= z;
    dist.z_tilde = z;

    // Ratios are nonincreasing in n, so the missing tail is dominated by a geometric series.
    const double next = step_ratio(n_max, setup);
    dist.tail_bound = dist.rho[n_max] * next / (1.0 - next);

    double worst = 0.0;
    LevelRates prev = level_rates(0, setup);
    for (Level n = 1; n <= n_max; ++n) {
        const LevelRates cur = level_rates(n, setup);
        const double inflow = dist.rho[n - 1] * prev.c;
        if (inflow > 0.0) worst = std::max(worst, std::abs(dist.rho[n] * cur.d - inflow) / inflow);
        prev = cur;
    }
    dist.ratio_check = worst;
    return dist;
}

Level truncation_level(const Setup& setup, const TruncationOptions& opts) {
    setup.validate();
    opts.validate();

    const double target = opts.tol * kTailSafety;
    const bool harmonic = setup.system.chi == 0.0;
    double product = 1.0;
    Level n = 0;
    while (true) {
        ++n;
        if (n > opts.cap)
            throw Error(ErrorCode::TruncationOverflow,
                        "n_max would exceed the cap of " + std::to_string(opts.cap));
        product *= step_ratio(n - 1, setup);
        if (product < target && (harmonic || up_down_ratio(n, setup) < kAdmissibleRatio)) break;
    }

    NessDistribution base = steady_populations_at(setup, n);
    SteadyCurrents base_cur = steady_currents(setup, base);
    while (true) {
        const Level doubled = std::min<Level>(2 * n, opts.cap);
        if (doubled == n)
            throw Error(ErrorCode::TruncationOverflow, "doubling check reached the cap unconverged");
        const NessDistribution wide = steady_populations_at(setup, doubled);
        const SteadyCurrents wide_cur = steady_currents(setup, wide);
        if (close(mean_occupation(base), mean_occupation(wide), opts.tol) &&
            close(base_cur.total.particle, wide_cur.total.particle, opts.tol) &&
            close(base_cur.total.energy, wide_cur.total.energy, opts.tol))
            return n;
        n = doubled;
        base = wide;
        base_cur = wide_cur;
    }
}

NessDistribution steady_populations(const Setup& setup, const TruncationOptions& opts) {
    return steady_populations_at(setup, truncation_level(setup, opts));
}

double mean_occupation(const NessDistribution& dist) noexcept {
    double sum = 0.0;
    for (Level n = 1; n < dist.rho.size(); ++n) sum += static_cast<double>(n) * dist.rho[n];
    return sum;
}

double mean_energy(const NessDistribution& dist, const SystemParams& system) noexcept {
    double sum = 0.0;
    for (Level n = 1; n < dist.rho.size(); ++n) sum += level_energy(n, system) * dist.rho[n];
    return sum;
}

SteadyCurrents steady_currents(const Setup& setup, const NessDistribution& dist) {
    setup.validate();
    const double eps2 = setup.system.eps * setup.system.eps;
    const Level n_max = dist.n_max;

    SteadyCurrents out;
    for (Level n = 1; n <= n_max; ++n) {
        const double w = level_freq(n - 1, setup.system);
        const KernelValue k = current_kernel(w, setup);
        out.degenerate_kernel = out.degenerate_kernel || k.degenerate;
        const double flow = dist.rho[n] * static_cast<double>(n) * k.value;
        out.total.particle += flow;
        out.total.energy += w * flow;
    }

    // Per-bath continuity form; C_{n_max} is dropped to match the truncated window.
    double gross = 0.0;
    for (Level n = 0; n <= n_max; ++n) {
        const LevelRates r = level_rates(n, setup);
        const double w_up = level_freq(n, setup.system);
        const double w_down = n > 0 ? level_freq(n - 1, setup.system) : 0.0;
        for (std::size_t l = 0; l < 2; ++l) {
            const double c = n < n_max ? r.c_bath[l] : 0.0;
            out.from_bath[l].particle += eps2 * dist.rho[n] * (c - r.d_bath[l]);
            out.from_bath[l].energy += eps2 * dist.rho[n] * (w_up * c - w_down * r.d_bath[l]);
        }
        gross += eps2 * dist.rho[n] * (1.0 + w_up) * (r.c + r.d);
    }

    // Differences at the rounding level of the gross exchange are not resolvable.
    const double floor = 1e-14 * gross;
    auto mismatch = [floor](double a, double b) {
        const double scale = std::max(std::abs(a), std::abs(b));
        return scale > floor ? std::abs(a - b) / scale : 0.0;
    };
    out.form_mismatch = std::max({mismatch(out.total.particle, out.from_bath[0].particle),
                                  mismatch(out.total.energy, out.from_bath[0].energy),
                                  mismatch(out.total.particle, -out.from_bath[1].particle),
                                  mismatch(out.total.energy, -out.from_bath[1].energy)});
    return out;
}

SteadyCurrents steady_currents(const Setup& setup, const TruncationOptions& opts) {
    return steady_currents(setup, steady_populations(setup, opts));
}

}  // namespace ssbh
