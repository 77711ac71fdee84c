#include "wavequbo/config.hpp"

#include "wavequbo/errors.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace wavequbo {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
    T value{};
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end)
        throw PreconditionError("config: key '" + key + "' has invalid value '" + text + "'");
    return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    throw PreconditionError("config: key '" + key + "' expects true or false, got '" + text + "'");
}

const std::set<std::string> kKeys = {"scenario", "tau",     "alpha",   "beta",       "driving",  "ansatz",
                                     "n",        "nspin",   "aa_params", "sampler",  "runs",     "seed",
                                     "sweeps",   "beta_start", "beta_end", "gap",     "gap_grid", "gap_refine",
                                     "mse_points", "threads"};

}  // namespace

TrigPolynomial parse_driving(const std::string& text) {
    std::vector<TrigPolynomial::Term> terms;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        item = trim(item);
        if (item.empty()) continue;
        const auto c1 = item.find(':');
        const auto c2 = c1 == std::string::npos ? c1 : item.find(':', c1 + 1);
        if (c2 == std::string::npos)
            throw PreconditionError("driving: term '" + item + "' is not of the form k:cos:sin");
        TrigPolynomial::Term t{};
        t.k = parse_number<int>("driving", trim(item.substr(0, c1)));
        t.cos_amp = parse_number<double>("driving", trim(item.substr(c1 + 1, c2 - c1 - 1)));
        t.sin_amp = parse_number<double>("driving", trim(item.substr(c2 + 1)));
        terms.push_back(t);
    }
    return TrigPolynomial(std::move(terms));
}

ScenarioConfig parse_config(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw PreconditionError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        if (!kKeys.count(key))
            throw PreconditionError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        if (!kv.emplace(key, trim(t.substr(eq + 1))).second)
            throw PreconditionError("config line " + std::to_string(lineno) + ": repeated key '" + key + "'");
    }

    ScenarioConfig cfg;
    auto get = [&](const char* key) -> const std::string* {
        const auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };
    if (auto v = get("scenario")) cfg.scenario = *v;
    const bool has_custom = get("tau") || get("alpha") || get("beta") || get("driving");
    if (cfg.scenario == "custom") {
        require(get("tau") != nullptr, "config: scenario 'custom' needs tau");
        const double tau = parse_number<double>("tau", *get("tau"));
        const double alpha = get("alpha") ? parse_number<double>("alpha", *get("alpha")) : 0.0;
        const double beta = get("beta") ? parse_number<double>("beta", *get("beta")) : 0.0;
        const TrigPolynomial f = get("driving") ? parse_driving(*get("driving")) : TrigPolynomial();
        cfg.custom = HelmholtzProblem(tau, alpha, beta, f);
    } else if (has_custom) {
        throw PreconditionError("config: tau/alpha/beta/driving are only valid with scenario = custom");
    }
    if (auto v = get("ansatz")) cfg.ansatz = parse_ansatz_kind(*v);
    if (auto v = get("n")) cfg.N = parse_number<int>("n", *v);
    if (auto v = get("nspin")) cfg.n_spin = parse_number<int>("nspin", *v);
    if (auto v = get("aa_params")) cfg.aa_params = read_aa_params(*v);
    if (auto v = get("sampler")) cfg.sampler = parse_sampler_kind(*v);
    if (auto v = get("runs")) cfg.n_runs = parse_number<int>("runs", *v);
    if (auto v = get("seed")) cfg.seed = parse_number<std::uint64_t>("seed", *v);
    if (auto v = get("sweeps")) cfg.sweeps = parse_number<int>("sweeps", *v);
    if (auto v = get("beta_start")) cfg.beta_start = parse_number<double>("beta_start", *v);
    if (auto v = get("beta_end")) cfg.beta_end = parse_number<double>("beta_end", *v);
    if (auto v = get("gap")) cfg.compute_gap = parse_bool("gap", *v);
    if (auto v = get("gap_grid")) cfg.gap.grid_points = parse_number<int>("gap_grid", *v);
    if (auto v = get("gap_refine")) cfg.gap.refine = parse_bool("gap_refine", *v);
    if (auto v = get("mse_points")) cfg.mse_points = parse_number<int>("mse_points", *v);
    if (auto v = get("threads")) cfg.threads = parse_number<unsigned>("threads", *v);
    cfg.validate();
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open config file '" + path + "'");
    return parse_config(in);
}

Vector read_aa_params(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open aa parameter file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw PreconditionError("aa parameter file '" + path + "': " + e.what());
    }
    if (!j.contains("N") || !j.contains("params") || !j["params"].is_array())
        throw PreconditionError("aa parameter file '" + path + "' needs fields N and params");
    const int N = j["N"].get<int>();
    const auto& p = j["params"];
    if (static_cast<int>(p.size()) != aa_param_count(N))
        throw PreconditionError("aa parameter file '" + path + "': N = " + std::to_string(N) + " needs " +
                                std::to_string(aa_param_count(N)) + " params, found " + std::to_string(p.size()));
    Vector v(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) v(static_cast<Eigen::Index>(i)) = p[i].get<double>();
    return v;
}

}  // namespace wavequbo
