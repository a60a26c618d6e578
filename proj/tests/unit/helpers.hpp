#pragma once

#include <cmath>

#include "ssbh/model.hpp"

namespace testutil {

inline ssbh::Setup setup(double chi, double t1, double t2, double g1 = 0.4, double g2 = 1.6, double s = 1.0,
                         double omega_c = 1000.0, double eps = 0.1) {
    ssbh::Setup st;
    st.system = {1.0, chi, eps};
    st.bath1 = {g1, t1, 0.0};
    st.bath2 = {g2, t2, 0.0};
    st.spectral = {s, omega_c};
    return st;
}

inline double bose(double w, double t) { return 1.0 / std::expm1(w / t); }

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace testutil
