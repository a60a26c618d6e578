#include "ssbh/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "ssbh/error.hpp"
#include "ssbh/numerics.hpp"
#include "ssbh/rates.hpp"

namespace ssbh {

namespace {

constexpr double kAdmissibleRatio = 1e-6;
constexpr std::size_t kDenseCheckLimit = 800;

}  // namespace

double RateMatrix::column_sum(std::size_t k) const {
    double sum = diag[k];
    if (k + 1 < size()) sum += lower[k];
    if (k > 0) sum += upper[k - 1];
    return sum;
}

std::vector<double> RateMatrix::apply(const std::vector<double>& v) const {
    const std::size_t n = size();
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = diag[i] * v[i];
        if (i > 0) out[i] += lower[i - 1] * v[i - 1];
        if (i + 1 < n) out[i] += upper[i] * v[i + 1];
    }
    return out;
}

RateMatrix build_rate_matrix(const Setup& setup, Level n_max) {
    setup.validate();
    if (n_max < 1) throw Error(ErrorCode::InvalidParameter, "rate matrix needs n_max >= 1");
    const std::size_t size = n_max + 1;

    RateMatrix m;
    m.setup = setup;
    m.diag.resize(size);
    m.lower.resize(size - 1);
    m.upper.resize(size - 1);
    for (auto& v : m.c_bath) v.assign(size, 0.0);
    for (auto& v : m.d_bath) v.assign(size, 0.0);

    for (Level n = 0; n <= n_max; ++n) {
        const LevelRates r = level_rates(n, setup);
        for (std::size_t l = 0; l < 2; ++l) {
            m.c_bath[l][n] = n < n_max ? r.c_bath[l] : 0.0;
            m.d_bath[l][n] = r.d_bath[l];
        }
        if (n < n_max) {
            m.diag[n] = r.c + r.d;
            m.lower[n] = -r.c;
        } else {
            m.diag[n] = r.d;
            m.truncation_ratio = r.d > 0.0 ? r.c / r.d : std::numeric_limits<double>::infinity();
        }
        if (n > 0) m.upper[n - 1] = -r.d;
    }
    if (!(m.truncation_ratio < kAdmissibleRatio))
        throw Error(ErrorCode::InadmissibleTruncation,
                    "C/D at n_max = " + std::to_string(n_max) + " is " +
                        std::to_string(m.truncation_ratio) + ", needs < 1e-6");
    return m;
}

RateMatrix build_rate_matrix(const Setup& setup, const TruncationOptions& opts) {
    return build_rate_matrix(setup, truncation_level(setup, opts));
}

std::vector<double> log_time_grid(double t_min, double t_max, std::size_t points) {
    if (!(t_min > 0.0 && t_max > t_min) || points < 2)
        throw Error(ErrorCode::InvalidParameter, "log grid needs 0 < t_min < t_max and >= 2 points");
    std::vector<double> out(points);
    const double a = std::log(t_min), b = std::log(t_max);
    for (std::size_t i = 0; i < points; ++i)
        out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1));
    out.front() = t_min;
    out.back() = t_max;
    return out;
}

std::vector<double> vacuum_state(std::size_t size) {
    std::vector<double> v(size, 0.0);
    if (size > 0) v[0] = 1.0;
    return v;
}

namespace {

struct Symmetrized {
    std::vector<double> log_scale;  // log d_n
    numerics::TridiagEigen eig;
};

Symmetrized symmetrize(const RateMatrix& m, bool with_vectors) {
    const std::size_t n = m.size();
    Symmetrized out;
    out.log_scale.assign(n, 0.0);
    std::vector<double> off(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double c = -m.lower[k];
        const double d = -m.upper[k];
        if (!(c > 0.0 && d > 0.0))
            throw Error(ErrorCode::EigenFailure, "rate matrix has a vanishing transition rate");
        off[k] = -std::sqrt(c * d);
        out.log_scale[k + 1] = out.log_scale[k] + 0.5 * (std::log(c) - std::log(d));
    }
    out.eig = numerics::eig_sym_tridiag(m.diag, off, with_vectors);

    // The stationary mode is exact by construction; pin it to zero.
    const double radius = std::max(std::abs(out.eig.values.front()), std::abs(out.eig.values.back()));
    if (std::abs(out.eig.values.front()) > 1e-10 * radius)
        throw Error(ErrorCode::EigenFailure, "rate matrix lost its stationary mode");
    out.eig.values.front() = 0.0;
    return out;
}

}  // namespace

TimeSeries evolve(const RateMatrix& m, const std::vector<double>& rho0,
                  const std::vector<double>& times, double eps) {
    const std::size_t n = m.size();
    if (rho0.size() > n) throw Error(ErrorCode::InvalidParameter, "initial state longer than the window");
    double mass = 0.0;
    for (double r : rho0) {
        if (!(r >= 0.0)) throw Error(ErrorCode::InvalidParameter, "initial populations must be >= 0");
        mass += r;
    }
    if (std::abs(mass - 1.0) > 1e-10) throw Error(ErrorCode::InvalidParameter, "initial state is not normalised");
    for (std::size_t i = 0; i < times.size(); ++i)
        if (!(times[i] >= 0.0) || (i > 0 && times[i] < times[i - 1]))
            throw Error(ErrorCode::InvalidParameter, "times must be sorted and >= 0");
    if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::InvalidParameter, "eps must lie in (0, 1)");

    std::vector<double> start(n, 0.0);
    std::copy(rho0.begin(), rho0.end(), start.begin());

    const Symmetrized sym = symmetrize(m, true);
    const auto& values = sym.eig.values;
    const auto& vectors = sym.eig.vectors;

    // Coefficients of D^{-1} rho0 in the eigenbasis, scaled by e^{-shift} to stay finite.
    double shift = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j)
        if (start[j] > 0.0) shift = std::max(shift, std::log(start[j]) - sym.log_scale[j]);
    std::vector<double> coeff(n, 0.0);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j)
            if (start[j] > 0.0)
                coeff[k] += vectors[k][j] * std::exp(std::log(start[j]) - sym.log_scale[j] - shift);

    const double eps2 = eps * eps;
    const SystemParams& sys = m.setup.system;
    TimeSeries ts;
    ts.times = times;
    ts.populations.reserve(times.size());
    std::vector<double> decay(n);
    for (double t : times) {
        std::vector<double> rho(n, 0.0);
        if (t == 0.0) {
            rho = start;
        } else {
            for (std::size_t k = 0; k < n; ++k) decay[k] = std::exp(-eps2 * values[k] * t) * coeff[k];
            for (std::size_t j = 0; j < n; ++j) {
                double acc = 0.0;
                for (std::size_t k = 0; k < n; ++k) acc += vectors[k][j] * decay[k];
                const double scale = sym.log_scale[j] + shift;
                rho[j] = acc == 0.0 ? 0.0 : acc * std::exp(scale);
            }
        }
        double occ = 0.0, en = 0.0;
        std::array<double, 2> ip{}, ie{};
        for (std::size_t j = 0; j < n; ++j) {
            if (rho[j] < -1e-8)
                throw Error(ErrorCode::NonPhysicalState,
                            "population " + std::to_string(j) + " went negative at t = " + std::to_string(t));
            occ += static_cast<double>(j) * rho[j];
            en += level_energy(j, sys) * rho[j];
            const double w_up = level_freq(j, sys);
            const double w_down = j > 0 ? level_freq(j - 1, sys) : 0.0;
            for (std::size_t l = 0; l < 2; ++l) {
                ip[l] += eps2 * rho[j] * (m.c_bath[l][j] - m.d_bath[l][j]);
                ie[l] += eps2 * rho[j] * (w_up * m.c_bath[l][j] - w_down * m.d_bath[l][j]);
            }
        }
        ts.populations.push_back(std::move(rho));
        ts.occupation.push_back(occ);
        ts.energy.push_back(en);
        for (std::size_t l = 0; l < 2; ++l) {
            ts.particle_current[l].push_back(ip[l]);
            ts.energy_current[l].push_back(ie[l]);
        }
        ts.below_bath_time.push_back(t < 1.0 / m.setup.spectral.omega_c);
    }
    return ts;
}

TssResult relaxation_time(const RateMatrix& m, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::InvalidParameter, "eps must lie in (0, 1)");
    const Symmetrized sym = symmetrize(m, false);
    TssResult out;
    out.spectral_radius = std::abs(sym.eig.values.back());
    out.lambda1 = sym.eig.values[1];
    if (!(out.lambda1 >= 1e-12 * out.spectral_radius))
        throw Error(ErrorCode::SpectralGapUnresolved, "smallest nonzero eigenvalue is not resolved");
    out.t_ss = 1.0 / (eps * eps * out.lambda1);

    const std::size_t n = m.size();
    if (n <= kDenseCheckLimit) {
        Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i) {
            const auto ii = static_cast<Eigen::Index>(i);
            dense(ii, ii) = m.diag[i];
            if (i + 1 < n) {
                dense(ii + 1, ii) = m.lower[i];
                dense(ii, ii + 1) = m.upper[i];
            }
        }
        Eigen::EigenSolver<Eigen::MatrixXd> solver(dense, false);
        if (solver.info() != Eigen::Success)
            throw Error(ErrorCode::EigenFailure, "general eigensolve of M failed");
        for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k)
            out.max_imag = std::max(out.max_imag, std::abs(solver.eigenvalues()[k].imag()));
        out.imag_checked = true;
    }
    return out;
}

double HarmonicRelaxation::occupation(double t, double n_initial) const noexcept {
    return (n_initial - n_ss) * std::exp(-rate * t) + n_ss;
}

CurrentPair HarmonicRelaxation::from_bath(std::size_t l, double t, double n_initial) const noexcept {
    const double particle = bath_rate[l] * (bath_occupation[l] - occupation(t, n_initial));
    return {particle, omega0 * particle};
}

HarmonicRelaxation tss_harmonic(const Setup& setup) {
    setup.validate();
    if (setup.system.chi != 0.0)
        throw Error(ErrorCode::RequiresHarmonic, "closed-form relaxation needs chi = 0");
    const double w = setup.system.omega0;
    const double eps2 = setup.system.eps * setup.system.eps;
    const double j = spectral_density(w, setup.spectral);
    HarmonicRelaxation h;
    h.omega0 = w;
    h.bath_rate = {eps2 * setup.bath1.gamma * j, eps2 * setup.bath2.gamma * j};
    h.bath_occupation = {bose(w, setup.bath1), bose(w, setup.bath2)};
    h.rate = h.bath_rate[0] + h.bath_rate[1];
    h.t_ss = 1.0 / h.rate;
    h.n_ss = (h.bath_rate[0] * h.bath_occupation[0] + h.bath_rate[1] * h.bath_occupation[1]) / h.rate;
    return h;
}

NesbRelaxation tss_nesb(const Setup& setup) {
    setup.validate();
    const double eps2 = setup.system.eps * setup.system.eps;
    const double gap = level_freq(0, setup.system);
    const LevelRates r0 = level_rates(0, setup);
    const LevelRates r1 = level_rates(1, setup);
    NesbRelaxation out;
    out.gap_rate = eps2 * (r0.c + r1.d);
    out.t_ss = 1.0 / out.gap_rate;
    out.t_ss_asymptote =
        1.0 / (eps2 * std::pow(gap, setup.spectral.s) * (setup.bath1.gamma + setup.bath2.gamma));
    return out;
}

}  // namespace ssbh
