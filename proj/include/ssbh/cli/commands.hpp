// commands.hpp: the four CLI computations, returning tables ready to write

#pragma once

#include <cstddef>

#include "ssbh/cli/config.hpp"
#include "ssbh/cli/output.hpp"

namespace ssbh::cli {

struct RunOptions {
    std::size_t threads{1};
};

// Populations per level for one or more chi values (chi may be a comma list);
// optional reference_T adds the Gibbs column rho_eq.
Table cmd_ness(const KeyValues& kv, const RunOptions& run = {});

// axis in {chi, T1_over_omega0, gamma, deltaT} over `grid`; gamma axis also reads `chis`.
Table cmd_scan(const KeyValues& kv, const RunOptions& run = {});

// Relaxation from `initial` (vacuum or gibbs:<T>) over `times` or t_min/t_max/t_points.
Table cmd_dynamics(const KeyValues& kv, const RunOptions& run = {});

// Relaxation time over a chi grid (`grid`, defaulting to the config chi).
Table cmd_tss(const KeyValues& kv, const RunOptions& run = {});

}  // namespace ssbh::cli
