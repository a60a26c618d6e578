#include "ssbh/rectification.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "ssbh/error.hpp"
#include "ssbh/parallel.hpp"

namespace ssbh {

void AsymmetryParams::validate() const {
    if (!(lambda > 0.0)) throw Error(ErrorCode::InvalidParameter, "asymmetry lambda must be > 0");
    if (!(gamma >= 0.0 && gamma <= 1.0))
        throw Error(ErrorCode::InvalidParameter, "asymmetry gamma must lie in [0, 1]");
}

std::pair<double, double> gammas_from_asymmetry(const AsymmetryParams& p) {
    p.validate();
    return {p.lambda * (1.0 - p.gamma), p.lambda * (1.0 + p.gamma)};
}

Setup biased_setup(const Setup& base, const Bias& bias, const AsymmetryParams& p) {
    Setup s = base;
    std::tie(s.bath1.gamma, s.bath2.gamma) = gammas_from_asymmetry(p);
    s.bath1.temperature = bias.t_mean + 0.5 * bias.delta_t;
    s.bath2.temperature = bias.t_mean - 0.5 * bias.delta_t;
    return s;
}

namespace {

CurrentPair currents_of(const Setup& s, const TruncationOptions& opts) {
    // A bath with zero coupling carries nothing through the system.
    if (s.bath1.gamma == 0.0 || s.bath2.gamma == 0.0) return {};
    return steady_currents(s, opts).total;
}

}  // namespace

RectificationResult rectification(const Setup& base, const Bias& bias, const AsymmetryParams& p,
                                  const TruncationOptions& opts) {
    const Setup fwd = biased_setup(base, bias, p);
    const Setup fwd_sym = biased_setup(base, bias, {p.lambda, 0.0});

    RectificationResult r;
    r.forward = currents_of(fwd, opts);
    r.backward = currents_of(fwd.with_swapped_temperatures(), opts);
    r.forward_symmetric = currents_of(fwd_sym, opts);
    r.backward_symmetric = currents_of(fwd_sym.with_swapped_temperatures(), opts);
    if (r.forward_symmetric.particle == 0.0 || r.forward_symmetric.energy == 0.0)
        throw Error(ErrorCode::ZeroDenominator, "symmetric-coupling reference current vanishes");
    r.r_i = (r.forward.particle + r.backward.particle) / r.forward_symmetric.particle;
    r.r_j = (r.forward.energy + r.backward.energy) / r.forward_symmetric.energy;
    return r;
}

std::vector<GammaSweepRow> sweep_gamma(const Setup& base, const Bias& bias, double lambda,
                                       const std::vector<double>& chis,
                                       const std::vector<double>& gammas,
                                       const TruncationOptions& opts, std::size_t threads) {
    for (double g : gammas)
        if (!(g >= 0.0 && g <= 1.0))
            throw Error(ErrorCode::InvalidParameter, "gamma grid must lie in [0, 1]");
    const std::size_t ng = gammas.size();
    auto flat = parallel_map(chis.size() * ng, threads, [&](std::size_t idx) {
        Setup s = base;
        s.system.chi = chis[idx / ng];
        return rectification(s, bias, {lambda, gammas[idx % ng]}, opts);
    });

    std::vector<GammaSweepRow> rows(chis.size());
    for (std::size_t c = 0; c < chis.size(); ++c) {
        GammaSweepRow& row = rows[c];
        row.chi = chis[c];
        row.gammas = gammas;
        row.results.assign(flat.begin() + static_cast<std::ptrdiff_t>(c * ng),
                           flat.begin() + static_cast<std::ptrdiff_t>((c + 1) * ng));
        std::size_t best = 0, best_abs_i = 0, best_abs_j = 0;
        for (std::size_t k = 1; k < ng; ++k) {
            const RectificationResult& r = row.results[k];
            if (r.r_i > row.results[best].r_i) best = k;
            if (std::abs(r.r_i) > std::abs(row.results[best_abs_i].r_i)) best_abs_i = k;
            if (std::abs(r.r_j) > std::abs(row.results[best_abs_j].r_j)) best_abs_j = k;
        }
        if (ng > 0) {
            row.argmax_r_i = gammas[best];
            row.argmax_abs_r_i = gammas[best_abs_i];
            row.argmax_abs_r_j = gammas[best_abs_j];
        }
    }
    return rows;
}

RjZero find_rj_zero(const Setup& base, const Bias& bias, const AsymmetryParams& p, double chi_lo,
                    double chi_hi, const TruncationOptions& opts) {
    if (!(chi_lo > 0.0 && chi_hi > chi_lo))
        throw Error(ErrorCode::InvalidParameter, "chi bracket must satisfy 0 < lo < hi");
    auto at = [&](double chi) {
        Setup s = base;
        s.system.chi = chi;
        return rectification(s, bias, p, opts);
    };
    RectificationResult lo = at(chi_lo);
    RectificationResult hi = at(chi_hi);
    if (std::signbit(lo.r_j) == std::signbit(hi.r_j) || lo.r_j == 0.0 || hi.r_j == 0.0)
        throw Error(ErrorCode::NoSignChange, "R_J has the same sign at both bracket ends");

    const double target = 1e-8 * std::max(std::abs(lo.r_j), std::abs(hi.r_j));
    RjZero out;
    double a = chi_lo, b = chi_hi;
    double mid = 0.5 * (a + b);
    RectificationResult rm = at(mid);
    int it = 1;
    while (std::abs(rm.r_j) >= target && it < 60) {
        if (std::signbit(rm.r_j) == std::signbit(lo.r_j)) {
            a = mid;
            lo = rm;
        } else {
            b = mid;
        }
        mid = 0.5 * (a + b);
        rm = at(mid);
        ++it;
    }
    out.chi_star = mid;
    out.bracket_lo = a;
    out.bracket_hi = b;
    out.r_j = rm.r_j;
    out.r_i = rm.r_i;
    out.iterations = it;
    return out;
}

}  // namespace ssbh
