#include "gmhd/config.hpp"

#include <cmath>
#include <optional>
#include <fstream>
#include <map>
#include <sstream>

namespace gmhd {
namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        throw BadSpecError("config: key '" + key + "' has non-numeric value '" + value + "'");
    }
    if (used != value.size() || !std::isfinite(v))
        throw BadSpecError("config: key '" + key + "' has non-numeric value '" + value + "'");
    return v;
}

long long parse_int(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(value, &used);
    } catch (const std::exception&) {
        throw BadSpecError("config: key '" + key + "' has non-integer value '" + value + "'");
    }
    if (used != value.size())
        throw BadSpecError("config: key '" + key + "' has non-integer value '" + value + "'");
    return v;
}

}  // namespace

void RunConfig::validate() const {
    params.validate();
    policy.validate();
    if (!(sample_interval > 0.0) || !std::isfinite(sample_interval))
        throw BadSpecError("config: sample_interval must be positive");
    if (sample_interval > policy.t_end)
        throw BadSpecError("config: sample_interval must not exceed t_end");
    if (!(checkpoint_interval >= 0.0) || !std::isfinite(checkpoint_interval))
        throw BadSpecError("config: checkpoint_interval must be >= 0");
    if (output_dir.empty()) throw BadSpecError("config: output_dir must not be empty");
}

void SweepSpec::validate() const {
    if (alpha_values.empty() || beta_values.empty())
        throw BadSpecError("sweep: alpha and beta value lists must be non-empty");
    if (max_parallel < 1) throw BadSpecError("sweep: max_parallel must be >= 1");
    base.validate();
}

RunConfig parse_config_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw BadSpecError("config: line " + std::to_string(lineno) + " is not 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw BadSpecError("config: line " + std::to_string(lineno) + " is not 'key = value'");
        kv[key] = value;
    }

    RunConfig cfg;
    if (auto it = kv.find("ic"); it != kv.end()) {
        const std::string& kind = it->second;
        if (kind == "orszag_tang")
            cfg.ic = OrszagTangIC{};
        else if (kind == "single_mode")
            cfg.ic = SingleModeIC{};
        else if (kind == "random_smooth")
            cfg.ic = RandomSmoothIC{};
        else
            throw BadSpecError("config: unknown ic '" + kind + "'");
        kv.erase(it);
    }

    auto take = [&kv](const char* key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        std::string v = std::move(it->second);
        kv.erase(it);
        return v;
    };

    if (const auto v = take("nu")) cfg.params.nu = parse_double("nu", *v);
    if (const auto v = take("eta")) cfg.params.eta = parse_double("eta", *v);
    if (const auto v = take("alpha")) cfg.params.alpha = parse_double("alpha", *v);
    if (const auto v = take("beta")) cfg.params.beta = parse_double("beta", *v);
    if (const auto v = take("n")) cfg.params.n = static_cast<int>(parse_int("n", *v));
    if (const auto v = take("dt_mode")) {
        if (*v == "fixed")
            cfg.policy.dt_mode = DtMode::Fixed;
        else if (*v == "cfl")
            cfg.policy.dt_mode = DtMode::CflAdaptive;
        else
            throw BadSpecError("config: dt_mode must be 'fixed' or 'cfl'");
    }
    if (const auto v = take("dt")) cfg.policy.dt_fixed = parse_double("dt", *v);
    if (const auto v = take("cfl_number")) cfg.policy.cfl_number = parse_double("cfl_number", *v);
    if (const auto v = take("t_end")) cfg.policy.t_end = parse_double("t_end", *v);
    if (const auto v = take("max_steps"))
        cfg.policy.max_steps = parse_int("max_steps", *v);
    if (const auto v = take("sample_interval"))
        cfg.sample_interval = parse_double("sample_interval", *v);
    if (const auto v = take("output_dir")) cfg.output_dir = *v;
    if (const auto v = take("checkpoint_interval"))
        cfg.checkpoint_interval = parse_double("checkpoint_interval", *v);
    if (const auto v = take("resume")) cfg.resume = *v;

    if (auto* sm = std::get_if<SingleModeIC>(&cfg.ic)) {
        if (const auto v = take("ic.axis")) sm->axis = static_cast<int>(parse_int("ic.axis", *v));
        if (const auto v = take("ic.wavenumber"))
            sm->wavenumber = static_cast<int>(parse_int("ic.wavenumber", *v));
        if (const auto v = take("ic.amplitude"))
            sm->amplitude = parse_double("ic.amplitude", *v);
        if (const auto v = take("ic.target")) {
            if (v->size() != 1 || (v->front() != 'u' && v->front() != 'b'))
                throw BadSpecError("config: ic.target must be 'u' or 'b'");
            sm->target = v->front();
        }
    } else if (auto* rs = std::get_if<RandomSmoothIC>(&cfg.ic)) {
        if (const auto v = take("ic.seed"))
            rs->seed = static_cast<std::uint64_t>(parse_int("ic.seed", *v));
        if (const auto v = take("ic.spectral_slope"))
            rs->spectral_slope = parse_double("ic.spectral_slope", *v);
        if (const auto v = take("ic.cutoff"))
            rs->cutoff = static_cast<int>(parse_int("ic.cutoff", *v));
    }

    if (!kv.empty())
        throw BadSpecError("config: unknown key '" + kv.begin()->first + "'");

    cfg.validate();
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("config: read failure on '" + path + "'");
    return parse_config_text(buf.str());
}

}  // namespace gmhd
