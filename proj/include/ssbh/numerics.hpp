// numerics.hpp: special functions, half-line quadrature and the symmetric
// tridiagonal eigensolver shared by the physics modules

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace ssbh::numerics {

// Gamma function for x in (0, 50]; DomainError outside.
double gamma_fn(double x);

enum class QuadratureScheme {
    // Gauss rule for the weight y^{-1/2} e^{-y}, built in u = sqrt(y) so that
    // integrands with half-integer powers of y stay smooth.
    HalfRangeHermite,
    // Adaptive Gauss-Kronrod on u = sqrt(y) over the half line.
    AdaptiveKronrod,
};

struct QuadratureSpec {
    QuadratureScheme scheme{QuadratureScheme::HalfRangeHermite};
    std::size_t node_count{16};  // starting rule size for HalfRangeHermite
    double rel_tol{1e-10};
    bool allow_fallback{true};   // try AdaptiveKronrod if the Gauss rule does not converge

    void validate() const;
};

struct QuadratureResult {
    double value{0.0};
    double error_estimate{0.0};
    std::size_t node_count{0};  // nodes of the accepted rule, 0 for the adaptive scheme
    QuadratureScheme scheme_used{QuadratureScheme::HalfRangeHermite};
};

// Integral of y^{-1/2} e^{-y} f(y) over y in (0, inf). Node doubling (or the
// adaptive error estimate) must meet spec.rel_tol, else QuadratureFailure.
QuadratureResult integrate_halfline(const std::function<double(double)>& f,
                                    const QuadratureSpec& spec = {});

// Nodes y_k and weights w_k with sum_k w_k f(y_k) ~ integral of y^{-1/2} e^{-y} f(y).
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussRule& half_range_hermite_rule(std::size_t node_count);

struct TridiagEigen {
    std::vector<double> values;                // ascending
    std::vector<std::vector<double>> vectors;  // vectors[k] pairs with values[k]; empty unless requested
};

// Symmetric tridiagonal matrix with the given diagonal and off-diagonal
// (offdiag.size() == diag.size() - 1). EigenFailure on non-convergence.
TridiagEigen eig_sym_tridiag(const std::vector<double>& diag,
                             const std::vector<double>& offdiag,
                             bool with_vectors = false);

}  // namespace ssbh::numerics
