#include "adaptfv/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "adaptfv/error.hpp"

namespace adaptfv {

namespace {

constexpr std::array kKeys = {
    ConfigKey{"problem", "burgers | advection (required)"},
    ConfigKey{"advection_speed", "advection speed a (default 1)"},
    ConfigKey{"initial", "sine | riemann | hat (default sine)"},
    ConfigKey{"sine_amplitude", "sine amplitude (default 1)"},
    ConfigKey{"sine_offset", "sine offset (default 0)"},
    ConfigKey{"riemann_left", "left state ul (default 1)"},
    ConfigKey{"riemann_right", "right state ur (default 0)"},
    ConfigKey{"riemann_position", "jump location (default domain midpoint)"},
    ConfigKey{"hat_height", "hat height (default 1)"},
    ConfigKey{"hat_center", "hat center (default domain midpoint)"},
    ConfigKey{"hat_halfwidth", "hat half-width (default quarter domain)"},
    ConfigKey{"domain_left", "a (default 0)"},
    ConfigKey{"domain_right", "b (default 1)"},
    ConfigKey{"n_cells", "number of cells, >= 3 (required)"},
    ConfigKey{"t_end", "final time, > 0 (required; 0 writes the initial state only)"},
    ConfigKey{"max_steps", "stop after this many steps, 0 = no limit (default 0)"},
    ConfigKey{"cfl_target", "fraction of the admissible dt, in (0, 1] (default 0.4)"},
    ConfigKey{"scheme", "econs | rusanov | fixed-d (default rusanov)"},
    ConfigKey{"fixed_d", "D for scheme fixed-d (default 0)"},
    ConfigKey{"adapt", "on | off (default on)"},
    ConfigKey{"enforce_maincond", "on | off (default off)"},
    ConfigKey{"max_bisect", "halvings of the mesh displacement (default 30)"},
    ConfigKey{"dt_policy", "auto | appendix | sufficient (default auto)"},
    ConfigKey{"alpha", "monitor strength (default 1)"},
    ConfigKey{"smoothing_passes", "monitor smoothing passes (default 2)"},
    ConfigKey{"equidist_iters", "equidistribution sweeps (default 3)"},
    ConfigKey{"beta", "displacement cap fraction in (0, 0.5] (default 0.45)"},
    ConfigKey{"max_weight", "clamp on the monitor weight, >= 1 or inf (default 20)"},
    ConfigKey{"k", "entropy Hessian constant K (default 1)"},
    ConfigKey{"q_min", "floor on Q* in the time-step bound (default 1e-12)"},
    ConfigKey{"snapshot_every", "write a snapshot every this many steps, 0 = first and last only (default 10)"},
    ConfigKey{"output_dir", "output directory"},
    ConfigKey{"seed", "seed for randomized drivers (default 0)"},
};

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view expected)
{
    throw ConfigError("key '" + std::string(key) + "': cannot parse '" + std::string(value) + "' as " +
                      std::string(expected));
}

double to_double(std::string_view key, std::string_view value)
{
    double out = 0.0;
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end || !std::isfinite(out)) bad_value(key, value, "a finite number");
    return out;
}

template <class Int>
Int to_integer(std::string_view key, std::string_view value)
{
    Int out = 0;
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end) bad_value(key, value, "an integer");
    return out;
}

bool to_bool(std::string_view key, std::string_view value)
{
    if (value == "on" || value == "true" || value == "yes" || value == "1") return true;
    if (value == "off" || value == "false" || value == "no" || value == "0") return false;
    bad_value(key, value, "on/off");
}

std::string format_double(double x)
{
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), ptr);
}

std::string normalize_key(std::string_view key)
{
    std::string out(key);
    std::replace(out.begin(), out.end(), '-', '_');
    return out;
}

// Splits "key=value"/"key = value"; returns false when there is no '='.
bool split_setting(std::string_view line, std::string_view& key, std::string_view& value)
{
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) return false;
    key = trim(line.substr(0, eq));
    value = trim(line.substr(eq + 1));
    return true;
}

} // namespace

std::span<const ConfigKey> config_keys() { return kKeys; }

void apply_setting(RunConfig& c, std::string_view raw_key, std::string_view value)
{
    const std::string key = normalize_key(raw_key);
    auto d = [&] { return to_double(key, value); };
    if (key == "problem") c.problem = std::string(value);
    else if (key == "advection_speed") c.advection_speed = d();
    else if (key == "initial") c.initial = std::string(value);
    else if (key == "sine_amplitude") c.sine_amplitude = d();
    else if (key == "sine_offset") c.sine_offset = d();
    else if (key == "riemann_left") c.riemann_left = d();
    else if (key == "riemann_right") c.riemann_right = d();
    else if (key == "riemann_position") c.riemann_position = d();
    else if (key == "hat_height") c.hat_height = d();
    else if (key == "hat_center") c.hat_center = d();
    else if (key == "hat_halfwidth") c.hat_halfwidth = d();
    else if (key == "domain_left") c.domain_left = d();
    else if (key == "domain_right") c.domain_right = d();
    else if (key == "n_cells") c.n_cells = to_integer<std::size_t>(key, value);
    else if (key == "t_end") c.t_end = d();
    else if (key == "max_steps") c.max_steps = to_integer<std::size_t>(key, value);
    else if (key == "cfl_target") c.cfl_target = d();
    else if (key == "scheme") c.scheme = std::string(value);
    else if (key == "fixed_d") c.fixed_d = d();
    else if (key == "adapt") c.adapt = to_bool(key, value);
    else if (key == "enforce_maincond") c.enforce_maincond = to_bool(key, value);
    else if (key == "max_bisect") c.max_bisect = to_integer<int>(key, value);
    else if (key == "dt_policy") c.dt_policy = std::string(value);
    else if (key == "alpha") c.adapt_params.alpha = d();
    else if (key == "smoothing_passes") c.adapt_params.smoothing_passes = to_integer<int>(key, value);
    else if (key == "equidist_iters") c.adapt_params.equidist_iters = to_integer<int>(key, value);
    else if (key == "beta") c.adapt_params.beta = d();
    else if (key == "max_weight") {
        if (value == "inf") c.adapt_params.max_weight = std::numeric_limits<double>::infinity();
        else c.adapt_params.max_weight = d();
    }
    else if (key == "k") c.k = d();
    else if (key == "q_min") c.q_min = d();
    else if (key == "snapshot_every") c.snapshot_every = to_integer<std::size_t>(key, value);
    else if (key == "output_dir") c.output_dir = std::string(value);
    else if (key == "seed") c.seed = to_integer<std::uint64_t>(key, value);
    else throw ConfigError("unknown key '" + key + "'");
}

RunConfig parse_config(std::string_view text, std::string_view source, std::span<const std::string> overrides)
{
    RunConfig c;
    std::set<std::string> seen;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const std::string where = std::string(source) + ":" + std::to_string(line_no) + ": ";
        std::string_view key;
        std::string_view value;
        if (!split_setting(line, key, value)) throw ConfigError(where + "expected 'key = value'");
        if (!seen.insert(normalize_key(key)).second) {
            throw ConfigError(where + "duplicate key '" + std::string(key) + "'");
        }
        try {
            apply_setting(c, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(where + e.what());
        }
    }
    for (const auto& o : overrides) {
        std::string_view key;
        std::string_view value;
        if (!split_setting(o, key, value)) throw ConfigError("override '" + o + "': expected key=value");
        try {
            apply_setting(c, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError("override '" + o + "': " + e.what());
        }
        seen.insert(normalize_key(key));
    }
    for (const char* required : {"problem", "n_cells", "t_end"}) {
        if (!seen.count(required)) {
            throw ConfigError(std::string(source) + ": missing required key '" + required + "'");
        }
    }
    validate(c);
    return c;
}

RunConfig load_config(const std::filesystem::path& path, std::span<const std::string> overrides)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    RunConfig c = parse_config(buffer.str(), path.string(), overrides);
    c.name = path.stem().string();
    return c;
}

void validate(RunConfig& c)
{
    if (c.problem != "burgers" && c.problem != "advection") {
        throw ConfigError("problem must be burgers or advection, got '" + c.problem + "'");
    }
    if (c.initial != "sine" && c.initial != "riemann" && c.initial != "hat") {
        throw ConfigError("initial must be sine, riemann or hat, got '" + c.initial + "'");
    }
    if (!(c.domain_right > c.domain_left)) throw ConfigError("domain_right must exceed domain_left");
    if (c.n_cells < 3) throw ConfigError("n_cells must be >= 3, got " + std::to_string(c.n_cells));
    if (!(c.t_end >= 0.0)) throw ConfigError("t_end must be >= 0");
    if (!(c.cfl_target > 0.0 && c.cfl_target <= 1.0)) throw ConfigError("cfl_target must lie in (0, 1]");
    (void)Scheme::parse(c.scheme, c.fixed_d);
    if (c.dt_policy != "auto" && c.dt_policy != "appendix" && c.dt_policy != "sufficient") {
        throw ConfigError("dt_policy must be auto, appendix or sufficient, got '" + c.dt_policy + "'");
    }
    if (c.max_bisect < 0) throw ConfigError("max_bisect must be >= 0");
    if (!(c.k > 0.0)) throw ConfigError("k must be > 0");
    if (!(c.q_min > 0.0)) throw ConfigError("q_min must be > 0");
    c.adapt_params.validate();

    const double mid = 0.5 * (c.domain_left + c.domain_right);
    if (!c.riemann_position) c.riemann_position = mid;
    if (!c.hat_center) c.hat_center = mid;
    if (!c.hat_halfwidth) c.hat_halfwidth = 0.25 * (c.domain_right - c.domain_left);
    if (!(*c.hat_halfwidth > 0.0)) throw ConfigError("hat_halfwidth must be > 0");
}

std::string format_config(const RunConfig& c)
{
    std::ostringstream out;
    auto line = [&](std::string_view key, const std::string& value) { out << key << " = " << value << '\n'; };
    auto onoff = [](bool b) { return std::string(b ? "on" : "off"); };
    line("problem", c.problem);
    line("advection_speed", format_double(c.advection_speed));
    line("initial", c.initial);
    line("sine_amplitude", format_double(c.sine_amplitude));
    line("sine_offset", format_double(c.sine_offset));
    line("riemann_left", format_double(c.riemann_left));
    line("riemann_right", format_double(c.riemann_right));
    line("riemann_position", format_double(c.riemann_position.value_or(0.5 * (c.domain_left + c.domain_right))));
    line("hat_height", format_double(c.hat_height));
    line("hat_center", format_double(c.hat_center.value_or(0.5 * (c.domain_left + c.domain_right))));
    line("hat_halfwidth", format_double(c.hat_halfwidth.value_or(0.25 * (c.domain_right - c.domain_left))));
    line("domain_left", format_double(c.domain_left));
    line("domain_right", format_double(c.domain_right));
    line("n_cells", std::to_string(c.n_cells));
    line("t_end", format_double(c.t_end));
    line("max_steps", std::to_string(c.max_steps));
    line("cfl_target", format_double(c.cfl_target));
    line("scheme", c.scheme);
    line("fixed_d", format_double(c.fixed_d));
    line("adapt", onoff(c.adapt));
    line("enforce_maincond", onoff(c.enforce_maincond));
    line("max_bisect", std::to_string(c.max_bisect));
    line("dt_policy", c.dt_policy);
    line("alpha", format_double(c.adapt_params.alpha));
    line("smoothing_passes", std::to_string(c.adapt_params.smoothing_passes));
    line("equidist_iters", std::to_string(c.adapt_params.equidist_iters));
    line("beta", format_double(c.adapt_params.beta));
    line("max_weight", format_double(c.adapt_params.max_weight));
    line("k", format_double(c.k));
    line("q_min", format_double(c.q_min));
    line("snapshot_every", std::to_string(c.snapshot_every));
    if (!c.output_dir.empty()) line("output_dir", c.output_dir);
    line("seed", std::to_string(c.seed));
    return out.str();
}

Problem make_problem(const RunConfig& c)
{
    if (c.problem == "burgers") return Problem::burgers(c.k);
    if (c.problem == "advection") return Problem::advection(c.advection_speed, c.k);
    throw ConfigError("unknown problem '" + c.problem + "'");
}

StepOptions make_step_options(const RunConfig& c)
{
    StepOptions o;
    o.scheme = Scheme::parse(c.scheme, c.fixed_d);
    o.adapt = c.adapt;
    o.adapt_params = c.adapt_params;
    o.enforce = c.enforce_maincond;
    o.max_bisect = c.max_bisect;
    o.cfl_target = c.cfl_target;
    o.q_min = c.q_min;
    if (c.dt_policy == "appendix") o.dt_policy = DtPolicy::appendix;
    else if (c.dt_policy == "sufficient") o.dt_policy = DtPolicy::sufficient;
    else o.dt_policy = c.enforce_maincond ? DtPolicy::sufficient : DtPolicy::appendix;
    return o;
}

Mesh1D initial_mesh(const RunConfig& c) { return Mesh1D::uniform(c.domain_left, c.domain_right, c.n_cells); }

namespace {

// Integral of the initial profile over [lo, hi].
double profile_integral(const RunConfig& c, double lo, double hi)
{
    if (c.initial == "sine") {
        const double length = c.domain_right - c.domain_left;
        const double w = 2.0 * std::numbers::pi / length;
        const double anti_hi = -std::cos(w * (hi - c.domain_left)) / w;
        const double anti_lo = -std::cos(w * (lo - c.domain_left)) / w;
        return c.sine_offset * (hi - lo) + c.sine_amplitude * (anti_hi - anti_lo);
    }
    if (c.initial == "riemann") {
        const double x0 = *c.riemann_position;
        const double left = std::max(0.0, std::min(hi, x0) - lo);
        const double right = std::max(0.0, hi - std::max(lo, x0));
        return c.riemann_left * left + c.riemann_right * right;
    }
    // Hat: piecewise linear with breaks at center and center +- halfwidth.
    const double xc = *c.hat_center;
    const double hw = *c.hat_halfwidth;
    auto value = [&](double x) { return c.hat_height * std::max(0.0, 1.0 - std::abs(x - xc) / hw); };
    std::vector<double> pts{lo, hi};
    for (double b : {xc - hw, xc, xc + hw}) {
        if (b > lo && b < hi) pts.push_back(b);
    }
    std::sort(pts.begin(), pts.end());
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        sum += 0.5 * (value(pts[k]) + value(pts[k + 1])) * (pts[k + 1] - pts[k]);
    }
    return sum;
}

} // namespace

CellField initial_condition(const RunConfig& c, const Mesh1D& mesh)
{
    std::vector<double> u(mesh.cells());
    for (std::size_t i = 0; i < u.size(); ++i) {
        u[i] = profile_integral(c, mesh.interface(i), mesh.interface(i + 1)) / mesh.width(i);
    }
    return CellField(std::move(u), Frame::physical);
}

} // namespace adaptfv
