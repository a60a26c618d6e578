#include "ssbh/numerics.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ssbh/error.hpp"

namespace ssbh::numerics {

double gamma_fn(double x) {
    if (!(x > 0.0) || x > 50.0) throw Error(ErrorCode::DomainError, "gamma_fn needs x in (0, 50]");
    return std::tgamma(x);
}

void QuadratureSpec::validate() const {
    if (!(rel_tol >= 1e-12 && rel_tol <= 1e-6))
        throw Error(ErrorCode::InvalidParameter, "quadrature rel_tol must lie in [1e-12, 1e-6]");
    if (node_count < 2 || node_count > 128)
        throw Error(ErrorCode::InvalidParameter, "quadrature node_count must lie in [2, 128]");
}

namespace {

constexpr std::size_t kMaxNodes = 128;

// Recurrence coefficients of polynomials orthonormal under e^{-u^2} on [0, inf),
// from the Stieltjes procedure on a composite Gauss-Legendre discretisation.
void half_range_recurrence(std::size_t n, std::vector<double>& alpha, std::vector<double>& beta) {
    using Legendre = boost::math::quadrature::gauss<double, 40>;
    const double upper = 2.0 * std::sqrt(static_cast<double>(n)) + 10.0;
    const double width = 0.05;
    const auto panels = static_cast<std::size_t>(std::ceil(upper / width));

    std::vector<double> u, w;
    u.reserve(panels * 40);
    w.reserve(panels * 40);
    const auto& x = Legendre::abscissa();
    const auto& wx = Legendre::weights();
    for (std::size_t p = 0; p < panels; ++p) {
        const double mid = (static_cast<double>(p) + 0.5) * width;
        const double half = 0.5 * width;
        for (std::size_t i = 0; i < x.size(); ++i) {
            for (int sign : {-1, 1}) {
                if (i == 0 && sign == 1 && x[0] == 0.0) continue;
                const double ui = mid + sign * half * x[i];
                u.push_back(ui);
                w.push_back(half * wx[i] * std::exp(-ui * ui));
            }
        }
    }

    const std::size_t m = u.size();
    std::vector<double> q_prev(m, 0.0), q(m), r(m);
    double mass = 0.0;
    for (double wi : w) mass += wi;
    for (std::size_t i = 0; i < m; ++i) q[i] = 1.0 / std::sqrt(mass);

    alpha.assign(n, 0.0);
    beta.assign(n, 0.0);
    beta[0] = mass;
    double b_prev = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        double a = 0.0;
        for (std::size_t i = 0; i < m; ++i) a += w[i] * u[i] * q[i] * q[i];
        alpha[k] = a;
        if (k + 1 == n) break;
        double norm2 = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            r[i] = (u[i] - a) * q[i] - b_prev * q_prev[i];
            norm2 += w[i] * r[i] * r[i];
        }
        const double b = std::sqrt(norm2);
        beta[k + 1] = norm2;
        for (std::size_t i = 0; i < m; ++i) {
            q_prev[i] = q[i];
            q[i] = r[i] / b;
        }
        b_prev = b;
    }
}

GaussRule build_rule(std::size_t n) {
    std::vector<double> alpha, beta;
    half_range_recurrence(n, alpha, beta);
    std::vector<double> off(n - 1);
    for (std::size_t k = 1; k < n; ++k) off[k - 1] = std::sqrt(beta[k]);
    const TridiagEigen eig = eig_sym_tridiag(alpha, off, true);

    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double u = eig.values[k];
        const double v0 = eig.vectors[k][0];
        rule.nodes[k] = u * u;
        // factor 2 from dy = 2u du with y^{-1/2} = 1/u
        rule.weights[k] = 2.0 * beta[0] * v0 * v0;
    }
    return rule;
}

double apply_rule(const GaussRule& rule, const std::function<double(double)>& f) {
    double sum = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) sum += rule.weights[k] * f(rule.nodes[k]);
    return sum;
}

QuadratureResult adaptive(const std::function<double(double)>& f, double rel_tol) {
    auto g = [&](double u) {
        const double e = std::exp(-u * u);
        return e == 0.0 ? 0.0 : 2.0 * e * f(u * u);
    };
    double err = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        g, 0.0, std::numeric_limits<double>::infinity(), 20, rel_tol * 1e-2, &err);
    return {value, err * std::abs(value), 0, QuadratureScheme::AdaptiveKronrod};
}

}  // namespace

const GaussRule& half_range_hermite_rule(std::size_t node_count) {
    if (node_count < 2 || node_count > kMaxNodes)
        throw Error(ErrorCode::InvalidParameter, "rule size must lie in [2, 128]");
    static std::mutex mutex;
    static std::map<std::size_t, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(node_count);
    if (it == cache.end()) it = cache.emplace(node_count, build_rule(node_count)).first;
    return it->second;
}

QuadratureResult integrate_halfline(const std::function<double(double)>& f,
                                    const QuadratureSpec& spec) {
    spec.validate();
    if (spec.scheme == QuadratureScheme::HalfRangeHermite) {
        std::size_t n = spec.node_count;
        double previous = apply_rule(half_range_hermite_rule(n), f);
        while (2 * n <= kMaxNodes) {
            n *= 2;
            const double current = apply_rule(half_range_hermite_rule(n), f);
            const double diff = std::abs(current - previous);
            if (diff <= spec.rel_tol * std::abs(current))
                return {current, diff, n, QuadratureScheme::HalfRangeHermite};
            previous = current;
        }
        if (!spec.allow_fallback)
            throw Error(ErrorCode::QuadratureFailure, "Gauss rule did not converge by node doubling");
    }
    QuadratureResult out = adaptive(f, spec.rel_tol);
    if (!std::isfinite(out.value) || out.error_estimate > spec.rel_tol * std::abs(out.value))
        throw Error(ErrorCode::QuadratureFailure, "adaptive quadrature did not converge");
    return out;
}

TridiagEigen eig_sym_tridiag(const std::vector<double>& diag, const std::vector<double>& offdiag,
                             bool with_vectors) {
    const std::size_t n = diag.size();
    if (n == 0) return {};
    if (offdiag.size() + 1 != n)
        throw Error(ErrorCode::InvalidParameter, "off-diagonal must have size n - 1");
    for (double d : diag)
        if (!std::isfinite(d)) throw Error(ErrorCode::InvalidParameter, "non-finite diagonal entry");
    for (double d : offdiag)
        if (!std::isfinite(d)) throw Error(ErrorCode::InvalidParameter, "non-finite off-diagonal entry");

    TridiagEigen out;
    if (n == 1) {
        out.values = {diag[0]};
        if (with_vectors) out.vectors = {{1.0}};
        return out;
    }
    const Eigen::Map<const Eigen::VectorXd> d(diag.data(), static_cast<Eigen::Index>(n));
    const Eigen::Map<const Eigen::VectorXd> e(offdiag.data(), static_cast<Eigen::Index>(n - 1));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(d, e, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw Error(ErrorCode::EigenFailure, "tridiagonal QL iteration did not converge");

    out.values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    if (with_vectors) {
        out.vectors.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            const auto col = solver.eigenvectors().col(static_cast<Eigen::Index>(k));
            out.vectors[k].assign(col.data(), col.data() + n);
        }
    }
    return out;
}

}  // namespace ssbh::numerics
