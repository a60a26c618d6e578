#include "ssbh/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <sstream>

#include "ssbh/dynamics.hpp"
#include "ssbh/error.hpp"
#include "ssbh/limits.hpp"
#include "ssbh/ness.hpp"
#include "ssbh/parallel.hpp"
#include "ssbh/rectification.hpp"

namespace ssbh::cli {

namespace {

using Cell = std::optional<double>;

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::ConfigError, what); }

void check_keys(const KeyValues& kv, std::initializer_list<const char*> extra) {
    static const std::set<std::string> common{"omega0", "chi", "eps",    "s",  "omega_c", "mu1",    "mu2",
                                              "gamma1", "gamma2", "lambda", "asymmetry", "T1", "T2",
                                              "Tm",     "deltaT", "r",      "tol",       "cap"};
    for (const auto& [key, value] : kv) {
        if (common.count(key)) continue;
        if (std::none_of(extra.begin(), extra.end(), [&](const char* e) { return key == e; }))
            fail("unknown key '" + key + "'");
    }
}

std::vector<double> chi_list(const KeyValues& kv) {
    const auto it = kv.find("chi");
    return it == kv.end() ? std::vector<double>{0.0} : parse_grid(it->second);
}

KeyValues with(KeyValues kv, const std::string& key, double value) {
    kv[key] = format_number(value);
    return kv;
}

void collect_warnings(Table& t, const Setup& s) {
    for (auto& w : s.warnings())
        if (std::find(t.warnings.begin(), t.warnings.end(), w) == t.warnings.end()) t.warnings.push_back(w);
}

Table start_table(const std::string& command, const KeyValues& kv, std::vector<std::string> columns) {
    Table t;
    t.command = command;
    t.config = kv;
    t.columns = std::move(columns);
    const TruncationOptions o = truncation_options(kv);
    t.config["tol"] = format_number(o.tol);
    return t;
}

std::string summary_text(std::initializer_list<std::pair<const char*, double>> items) {
    std::ostringstream out;
    bool first = true;
    for (const auto& [k, v] : items) {
        out << (first ? "" : " ") << k << "=" << format_number(v);
        first = false;
    }
    return out.str();
}

Cell ratio_or_null(double num, double den) {
    if (den == 0.0) return std::nullopt;
    return num / den;
}

}  // namespace

Table cmd_ness(const KeyValues& kv, const RunOptions& run) {
    check_keys(kv, {"reference_T"});
    const std::vector<double> chis = chi_list(kv);
    const bool with_ref = has(kv, "reference_T");
    const double ref_t = with_ref ? get_double(kv, "reference_T") : 0.0;
    if (with_ref && !(ref_t > 0.0)) fail("reference_T must be > 0");

    std::vector<std::string> cols{"chi", "n", "rho"};
    if (with_ref) cols.push_back("rho_eq");
    Table table = start_table("ness", kv, cols);
    const TruncationOptions opts = truncation_options(kv);

    std::vector<Setup> setups;
    for (double chi : chis) setups.push_back(resolve_setup(with(kv, "chi", chi)));

    struct Point {
        NessDistribution dist;
        SteadyCurrents cur;
    };
    auto points = parallel_map(setups.size(), run.threads, [&](std::size_t i) {
        Point p;
        p.dist = steady_populations(setups[i], opts);
        p.cur = steady_currents(setups[i], p.dist);
        return p;
    });

    for (std::size_t i = 0; i < setups.size(); ++i) {
        const Setup& s = setups[i];
        const Point& p = points[i];
        collect_warnings(table, s);

        std::vector<double> gibbs;
        if (with_ref) {
            // e^{-(E_n - mu n)/T}, summed until the terms stop contributing.
            const double mu = s.bath1.mu;
            double z = 0.0;
            for (Level n = 0;; ++n) {
                const double term = std::exp(-(level_energy(n, s.system) - mu * static_cast<double>(n)) / ref_t);
                if (n <= p.dist.n_max) gibbs.push_back(term);
                z += term;
                if (n > p.dist.n_max && term < 1e-18 * z) break;
                if (n > 10 * opts.cap) break;
            }
            for (double& g : gibbs) g /= z;
        }
        for (Level n = 0; n <= p.dist.n_max; ++n) {
            std::vector<Cell> row{s.system.chi, static_cast<double>(n), p.dist.rho[n]};
            if (with_ref) row.push_back(gibbs[n]);
            table.add_row(std::move(row));
        }
        table.meta.emplace_back(
            "summary." + std::to_string(i),
            summary_text({{"chi", s.system.chi},
                          {"mean_N", mean_occupation(p.dist)},
                          {"mean_H", mean_energy(p.dist, s.system)},
                          {"I", p.cur.total.particle},
                          {"J", p.cur.total.energy},
                          {"z_tilde", p.dist.z_tilde},
                          {"n_max", static_cast<double>(p.dist.n_max)},
                          {"tail_bound", p.dist.tail_bound},
                          {"ratio_check", p.dist.ratio_check}}));
    }
    return table;
}

Table cmd_scan(const KeyValues& kv, const RunOptions& run) {
    check_keys(kv, {"axis", "grid", "chis"});
    if (!has(kv, "axis")) fail("scan needs axis = chi | T1_over_omega0 | gamma | deltaT");
    if (!has(kv, "grid")) fail("scan needs a grid");
    const std::string axis = kv.at("axis");
    const std::vector<double> grid = parse_grid(kv.at("grid"));
    std::vector<double> chis = axis == "gamma" && has(kv, "chis") ? parse_grid(kv.at("chis")) : chi_list(kv);
    if (axis != "gamma" && chis.size() != 1) fail("a comma list for chi is only allowed on the gamma axis (use chis)");

    Table table = start_table("scan", kv,
                              {"chi", "x", "T1", "T2", "gamma1", "gamma2", "n_max", "mean_N", "mean_H", "I",
                               "J", "I_rev", "J_rev", "I_over_dT", "J_over_dT_omega0", "J_over_I_omega0", "R_I",
                               "R_J", "I_nesb", "J_nesb", "A", "T1_over_omega0", "Ttilde_over_chi"});
    table.meta.emplace_back("axis", axis);
    const TruncationOptions opts = truncation_options(kv);

    struct Point {
        double chi, x;
        Setup setup;
    };
    std::vector<Point> points;
    for (double chi : chis) {
        for (double x : grid) {
            KeyValues p = with(kv, "chi", chi);
            p.erase("axis");
            p.erase("grid");
            p.erase("chis");
            if (axis == "chi") p = with(p, "chi", x);
            else if (axis == "T1_over_omega0") p = with(p, "T1", x * (get_double(p, "omega0", 1.0) + get_double(p, "chi")));
            else if (axis == "gamma") p = with(p, "asymmetry", x);
            else if (axis == "deltaT") p = with(p, "deltaT", x);
            else fail("unknown scan axis '" + axis + "'");
            const Setup s = resolve_setup(p);
            collect_warnings(table, s);
            points.push_back({s.system.chi, x, s});
        }
    }

    struct Outcome {
        std::vector<Cell> row;
        std::string note;
    };
    auto outcomes = parallel_map(points.size(), run.threads, [&](std::size_t i) {
        const Point& pt = points[i];
        const Setup& s = pt.setup;
        const double t1 = s.bath1.temperature, t2 = s.bath2.temperature;
        const double g1 = s.bath1.gamma, g2 = s.bath2.gamma;
        const double dt = t1 - t2;
        const double gap = level_freq(0, s.system);
        Outcome o;
        try {
            const NessDistribution dist = steady_populations(s, opts);
            const CurrentPair fwd = steady_currents(s, dist).total;
            const CurrentPair rev = steady_currents(s.with_swapped_temperatures(), opts).total;
            Cell r_i, r_j;
            std::string note;
            if (dt != 0.0 && g2 >= g1) {
                const RectificationResult r = rectification(
                    s, {0.5 * (t1 + t2), dt}, {0.5 * (g1 + g2), (g2 - g1) / (g1 + g2)}, opts);
                r_i = r.r_i;
                r_j = r.r_j;
            } else {
                note = dt == 0.0 ? "no bias: rectification undefined" : "gamma1 > gamma2: rectification not reported";
            }
            const NesbResult nesb = nesb_currents(s);
            o.row = {pt.chi, pt.x, t1, t2, g1, g2, static_cast<double>(dist.n_max), mean_occupation(dist),
                     mean_energy(dist, s.system), fwd.particle, fwd.energy, rev.particle, rev.energy,
                     ratio_or_null(fwd.particle, dt), ratio_or_null(fwd.energy, dt * gap),
                     ratio_or_null(fwd.energy, fwd.particle * gap), r_i, r_j, nesb.current_particle,
                     nesb.current_energy, conductance_plateau(s), t1 / gap,
                     s.system.chi > 0.0 ? Cell(effective_temperature_highT(s) / s.system.chi) : std::nullopt};
            o.note = note;
        } catch (const Error& e) {
            o.row.assign(table.columns.size(), std::nullopt);
            o.row[0] = pt.chi;
            o.row[1] = pt.x;
            o.note = e.what();
        }
        return o;
    });
    for (auto& o : outcomes) table.add_row(std::move(o.row), std::move(o.note));
    return table;
}

Table cmd_dynamics(const KeyValues& kv, const RunOptions& run) {
    check_keys(kv, {"times", "t_min", "t_max", "t_points", "initial"});
    const std::vector<double> chis = chi_list(kv);
    std::vector<double> times;
    if (has(kv, "times")) {
        times = parse_grid(kv.at("times"));
    } else {
        const double points = get_double(kv, "t_points", 200.0);
        if (!(points >= 2.0) || points != std::floor(points)) fail("t_points must be an integer >= 2");
        try {
            times = log_time_grid(get_double(kv, "t_min", 1e-2), get_double(kv, "t_max", 1e3),
                                  static_cast<std::size_t>(points));
        } catch (const Error& e) {
            fail(e.what());
        }
    }
    for (std::size_t i = 0; i < times.size(); ++i)
        if (!(times[i] >= 0.0) || (i > 0 && times[i] < times[i - 1])) fail("times must be sorted and >= 0");

    const std::string initial = has(kv, "initial") ? kv.at("initial") : "vacuum";
    std::optional<double> gibbs_t;
    if (initial.rfind("gibbs:", 0) == 0) {
        KeyValues tmp{{"initial_T", initial.substr(6)}};
        gibbs_t = get_double(tmp, "initial_T");
        if (!(*gibbs_t > 0.0)) fail("gibbs initial temperature must be > 0");
    } else if (initial != "vacuum") {
        fail("initial must be vacuum or gibbs:<T>");
    }

    Table table = start_table("dynamics", kv, {"chi", "t", "N", "H", "I1", "I2", "J1", "J2", "short_time"});
    table.config["initial"] = initial;
    const TruncationOptions opts = truncation_options(kv);

    std::vector<Setup> setups;
    for (double chi : chis) {
        setups.push_back(resolve_setup(with(kv, "chi", chi)));
        collect_warnings(table, setups.back());
    }

    struct Block {
        std::vector<std::vector<Cell>> rows;
        std::string note;
        std::string summary;
    };
    auto blocks = parallel_map(setups.size(), run.threads, [&](std::size_t i) {
        const Setup& s = setups[i];
        Block b;
        const double cutoff_time = 1.0 / s.spectral.omega_c;
        if (s.system.chi == 0.0) {
            const HarmonicRelaxation h = tss_harmonic(s);
            const double n0 = gibbs_t ? bose(s.system.omega0, BathParams{1.0, *gibbs_t, s.bath1.mu}) : 0.0;
            for (double t : times) {
                const double n = h.occupation(t, n0);
                const CurrentPair c1 = h.from_bath(0, t, n0), c2 = h.from_bath(1, t, n0);
                b.rows.push_back({0.0, t, n, s.system.omega0 * n, c1.particle, c2.particle, c1.energy,
                                  c2.energy, t < cutoff_time ? 1.0 : 0.0});
            }
            b.note = "closed form (chi = 0)";
            b.summary = summary_text({{"chi", 0.0}, {"t_ss", h.t_ss}, {"N_ss", h.n_ss}});
            return b;
        }
        const RateMatrix m = build_rate_matrix(s, opts);
        std::vector<double> rho0 = vacuum_state(m.size());
        if (gibbs_t) {
            double z = 0.0;
            for (Level n = 0; n < m.size(); ++n) {
                rho0[n] = std::exp(-(level_energy(n, s.system) - s.bath1.mu * static_cast<double>(n)) / *gibbs_t);
                z += rho0[n];
            }
            for (double& r : rho0) r /= z;
        }
        const TimeSeries ts = evolve(m, rho0, times, s.system.eps);
        const TssResult tss = relaxation_time(m, s.system.eps);
        for (std::size_t k = 0; k < times.size(); ++k)
            b.rows.push_back({s.system.chi, ts.times[k], ts.occupation[k], ts.energy[k],
                              ts.particle_current[0][k], ts.particle_current[1][k], ts.energy_current[0][k],
                              ts.energy_current[1][k], ts.below_bath_time[k] ? 1.0 : 0.0});
        b.summary = summary_text(
            {{"chi", s.system.chi}, {"n_max", static_cast<double>(m.n_max())}, {"t_ss", tss.t_ss}});
        return b;
    });
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        for (auto& r : blocks[i].rows) table.add_row(std::move(r), blocks[i].note);
        table.meta.emplace_back("summary." + std::to_string(i), blocks[i].summary);
    }
    return table;
}

Table cmd_tss(const KeyValues& kv, const RunOptions& run) {
    check_keys(kv, {"grid"});
    const std::vector<double> chis = has(kv, "grid") ? parse_grid(kv.at("grid")) : chi_list(kv);
    Table table = start_table("tss", kv,
                              {"chi", "n_max", "lambda1", "t_ss", "eps2_t_ss", "t_ss_two_level",
                               "t_ss_nesb_asymptote", "t_ss_harmonic", "max_imag"});
    const TruncationOptions opts = truncation_options(kv);

    std::vector<Setup> setups;
    for (double chi : chis) {
        KeyValues p = with(kv, "chi", chi);
        p.erase("grid");
        setups.push_back(resolve_setup(p));
        collect_warnings(table, setups.back());
    }
    Setup linear = setups.empty() ? Setup{} : setups.front();
    linear.system.chi = 0.0;
    const double t_harm = setups.empty() ? 0.0 : tss_harmonic(linear).t_ss;

    struct Outcome {
        std::vector<Cell> row;
        std::string note;
    };
    auto outcomes = parallel_map(setups.size(), run.threads, [&](std::size_t i) {
        const Setup& s = setups[i];
        const double eps2 = s.system.eps * s.system.eps;
        Outcome o;
        try {
            if (s.system.chi == 0.0) {
                const HarmonicRelaxation h = tss_harmonic(s);
                o.row = {0.0, std::nullopt, h.rate / eps2, h.t_ss, eps2 * h.t_ss, std::nullopt, std::nullopt,
                         t_harm, std::nullopt};
                o.note = "closed form (chi = 0)";
                return o;
            }
            const RateMatrix m = build_rate_matrix(s, opts);
            const TssResult r = relaxation_time(m, s.system.eps);
            const NesbRelaxation nesb = tss_nesb(s);
            o.row = {s.system.chi, static_cast<double>(m.n_max()), r.lambda1, r.t_ss, eps2 * r.t_ss, nesb.t_ss,
                     nesb.t_ss_asymptote, t_harm, r.imag_checked ? Cell(r.max_imag) : std::nullopt};
        } catch (const Error& e) {
            o.row.assign(table.columns.size(), std::nullopt);
            o.row[0] = s.system.chi;
            o.note = e.what();
        }
        return o;
    });
    for (auto& o : outcomes) table.add_row(std::move(o.row), std::move(o.note));
    return table;
}

}  // namespace ssbh::cli
