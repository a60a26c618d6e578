#include "ssbh/cli/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "ssbh/error.hpp"

namespace ssbh::cli {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::ConfigError, what); }

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

double to_double(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        fail("value of '" + key + "' is not a number: '" + text + "'");
    }
    if (used != text.size()) fail("value of '" + key + "' is not a number: '" + text + "'");
    return v;
}

KeyValues from_json(const nlohmann::json& j) {
    const nlohmann::json& obj = (j.contains("meta") && j["meta"].contains("config")) ? j["meta"]["config"] : j;
    if (!obj.is_object()) fail("JSON config must be an object");
    KeyValues kv;
    for (const auto& [key, value] : obj.items()) {
        if (value.is_string()) kv[key] = value.get<std::string>();
        else if (value.is_number() || value.is_boolean()) kv[key] = value.dump();
        else fail("JSON config value for '" + key + "' must be a scalar");
    }
    return kv;
}

}  // namespace

KeyValues parse_config_text(std::string_view text) {
    const std::string body = trim(text);
    if (!body.empty() && body.front() == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(body);
        } catch (const nlohmann::json::exception& e) {
            fail(std::string("malformed JSON config: ") + e.what());
        }
        return from_json(j);
    }
    KeyValues kv;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) fail("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        if (key.empty()) fail("line " + std::to_string(lineno) + ": empty key");
        kv[key] = trim(t.substr(eq + 1));
    }
    return kv;
}

KeyValues load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

void apply_override(KeyValues& kv, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) fail("--set expects key=value, got '" + std::string(assignment) + "'");
    const std::string key = trim(assignment.substr(0, eq));
    if (key.empty()) fail("--set has an empty key");
    kv[key] = trim(assignment.substr(eq + 1));
}

bool has(const KeyValues& kv, const std::string& key) { return kv.find(key) != kv.end(); }

double get_double(const KeyValues& kv, const std::string& key) {
    const auto it = kv.find(key);
    if (it == kv.end()) fail("missing required key '" + key + "'");
    return to_double(key, it->second);
}

double get_double(const KeyValues& kv, const std::string& key, double fallback) {
    return has(kv, key) ? get_double(kv, key) : fallback;
}

std::vector<double> parse_grid(std::string_view text) {
    const std::string t = trim(text);
    if (t.empty()) fail("empty grid");
    std::vector<std::string> parts;
    const char sep = t.find(':') != std::string::npos ? ':' : ',';
    std::size_t start = 0;
    while (true) {
        const auto pos = t.find(sep, start);
        parts.push_back(trim(t.substr(start, pos == std::string::npos ? std::string::npos : pos - start)));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    if (sep == ',') {
        std::vector<double> out;
        for (const auto& p : parts) out.push_back(to_double("grid", p));
        return out;
    }
    const bool log = parts.front() == "log";
    if (log) parts.erase(parts.begin());
    if (parts.size() != 3) fail("range grid must be a:b:n or log:a:b:n");
    const double a = to_double("grid", parts[0]);
    const double b = to_double("grid", parts[1]);
    const double count = to_double("grid", parts[2]);
    if (!(count >= 1.0) || count != std::floor(count)) fail("grid point count must be a positive integer");
    const auto n = static_cast<std::size_t>(count);
    if (log && !(a > 0.0 && b > 0.0)) fail("log grid needs positive endpoints");
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double f = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
        out[i] = log ? std::exp(std::log(a) + f * (std::log(b) - std::log(a))) : a + f * (b - a);
    }
    out.back() = n == 1 ? a : b;
    return out;
}

Setup resolve_setup(const KeyValues& kv) {
    Setup s;
    s.system.omega0 = get_double(kv, "omega0", 1.0);
    s.system.chi = get_double(kv, "chi", 0.0);
    s.system.eps = get_double(kv, "eps", 0.1);
    s.spectral.s = get_double(kv, "s", 1.0);
    s.spectral.omega_c = get_double(kv, "omega_c", 1000.0);
    s.bath1.mu = get_double(kv, "mu1", 0.0);
    s.bath2.mu = get_double(kv, "mu2", 0.0);

    const bool direct_g = has(kv, "gamma1") || has(kv, "gamma2");
    const bool asym_g = has(kv, "lambda") || has(kv, "asymmetry");
    if (direct_g == asym_g) fail("give exactly one of {gamma1, gamma2} or {lambda, asymmetry}");
    if (direct_g) {
        s.bath1.gamma = get_double(kv, "gamma1");
        s.bath2.gamma = get_double(kv, "gamma2");
    } else {
        const double lambda = get_double(kv, "lambda");
        const double g = get_double(kv, "asymmetry");
        if (!(lambda > 0.0) || !(g >= 0.0 && g <= 1.0)) fail("need lambda > 0 and 0 <= asymmetry <= 1");
        s.bath1.gamma = lambda * (1.0 - g);
        s.bath2.gamma = lambda * (1.0 + g);
    }

    const bool pair = has(kv, "T2");
    const bool mean = has(kv, "Tm") || has(kv, "deltaT");
    const bool ratio = has(kv, "r");
    if (int(pair) + int(mean) + int(ratio) != 1 || ((pair || ratio) && !has(kv, "T1")) || (mean && has(kv, "T1")))
        fail("give exactly one of {T1, T2}, {Tm, deltaT} or {T1, r}");
    if (pair) {
        s.bath1.temperature = get_double(kv, "T1");
        s.bath2.temperature = get_double(kv, "T2");
    } else if (mean) {
        const double tm = get_double(kv, "Tm");
        const double dt = get_double(kv, "deltaT");
        s.bath1.temperature = tm + 0.5 * dt;
        s.bath2.temperature = tm - 0.5 * dt;
    } else {
        const double r = get_double(kv, "r");
        if (!(r > 0.0 && r <= 1.0)) fail("r = T2/T1 must lie in (0, 1]");
        s.bath1.temperature = get_double(kv, "T1");
        s.bath2.temperature = r * s.bath1.temperature;
    }

    try {
        s.validate();
    } catch (const Error& e) {
        fail(e.what());
    }
    return s;
}

TruncationOptions truncation_options(const KeyValues& kv) {
    TruncationOptions o;
    o.tol = get_double(kv, "tol", 1e-10);
    const double cap = get_double(kv, "cap", 200000.0);
    if (!(cap >= 2.0) || cap != std::floor(cap)) fail("cap must be an integer >= 2");
    o.cap = static_cast<std::size_t>(cap);
    try {
        o.validate();
    } catch (const Error& e) {
        fail(e.what());
    }
    return o;
}

}  // namespace ssbh::cli
