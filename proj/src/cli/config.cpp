#include "curvipat/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "curvipat/error.hpp"

namespace curvipat::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void usage(const std::string& msg) { throw Error(ErrorKind::Usage, msg); }

std::uint64_t to_u64(const std::string& key, std::string_view v) {
    std::uint64_t out = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size())
        usage("'" + key + "' expects a non-negative integer, got '" + std::string(v) + "'");
    return out;
}

double to_real(const std::string& key, std::string_view v) {
    double out = 0.0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size() || !std::isfinite(out))
        usage("'" + key + "' expects a real number, got '" + std::string(v) + "'");
    return out;
}

bool to_bool(const std::string& key, std::string_view v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    usage("'" + key + "' expects true or false, got '" + std::string(v) + "'");
}

std::vector<std::string_view> split_list(std::string_view v) {
    std::vector<std::string_view> out;
    while (!v.empty()) {
        const auto comma = v.find(',');
        const auto item = trim(v.substr(0, comma));
        if (!item.empty()) out.push_back(item);
        if (comma == std::string_view::npos) break;
        v.remove_prefix(comma + 1);
    }
    return out;
}

}  // namespace

Settings parse_settings(std::string_view text) {
    Settings out;
    std::size_t lineno = 0;
    while (!text.empty()) {
        ++lineno;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            usage("config line " + std::to_string(lineno) + ": expected key = value");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty()) usage("config line " + std::to_string(lineno) + ": empty key");
        out[std::string(key)] = std::string(value);
    }
    return out;
}

Settings load_settings(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) usage("cannot read config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_settings(ss.str());
}

void apply_assignment(Settings& s, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) usage("--set expects key=value, got '" + std::string(assignment) + "'");
    const auto key = trim(assignment.substr(0, eq));
    if (key.empty()) usage("--set with an empty key");
    s[std::string(key)] = std::string(trim(assignment.substr(eq + 1)));
}

std::optional<OperatorKind> parse_operator_kind(std::string_view s) noexcept {
    for (OperatorKind k : {OperatorKind::Rho2, OperatorKind::Rho3, OperatorKind::Phi,
                           OperatorKind::Z, OperatorKind::Lambda})
        if (s == to_string(k)) return k;
    return std::nullopt;
}

std::optional<Method> parse_method(std::string_view s) noexcept {
    for (Method m : {Method::SplitExponential, Method::ForwardEuler, Method::DenseExponential})
        if (s == to_string(m)) return m;
    return std::nullopt;
}

SimConfig make_config(const Settings& s) {
    SimConfig cfg;
    const auto model_it = s.find("model");
    const std::string model_name = model_it == s.end() ? "bvam-disk" : model_it->second;
    const auto model = parse_model_name(model_name);
    if (!model) usage("unknown model '" + model_name + "'");
    cfg.spec = default_spec(*model);
    cfg.dims = cfg.spec.dims;
    cfg.m = cfg.spec.m;
    cfg.t_star = cfg.spec.t_star;

    for (const auto& [key, value] : s) {
        if (key == "model") continue;
        if (key == "m") {
            cfg.m = to_u64(key, value);
        } else if (key == "t_star") {
            cfg.t_star = to_real(key, value);
        } else if (key == "seed") {
            cfg.seed = to_u64(key, value);
        } else if (key == "output_dir") {
            if (value.empty()) usage("output_dir must not be empty");
            cfg.output_dir = value;
        } else if (key == "snapshot_every") {
            cfg.snapshot_every = to_u64(key, value);
        } else if (key == "heatmap") {
            cfg.emit_heatmap = to_bool(key, value);
        } else if (key == "method") {
            const auto m = parse_method(value);
            if (!m) usage("unknown method '" + value + "' (split, forward-euler, dense-ee)");
            cfg.method = *m;
        } else if (key == "perturbation") {
            cfg.perturbation = to_real(key, value);
        } else if (key.starts_with("params.")) {
            cfg.spec.set_param(key.substr(7), to_real(key, value));
        } else if (key == "converge.m_list") {
            cfg.m_list.clear();
            for (auto item : split_list(value)) cfg.m_list.push_back(to_u64(key, item));
        } else if (key == "converge.m_ref") {
            cfg.m_ref = to_u64(key, value);
        } else if (key == "converge.forward_euler") {
            cfg.compare_forward_euler = to_bool(key, value);
        } else if (key == "converge.dense") {
            cfg.compare_dense = to_bool(key, value);
        } else if (key == "props.kinds") {
            cfg.prop_kinds.clear();
            for (auto item : split_list(value)) {
                const auto k = parse_operator_kind(item);
                if (!k) usage("unknown operator kind '" + std::string(item) + "'");
                cfg.prop_kinds.push_back(*k);
            }
        } else if (key == "props.n") {
            cfg.prop_n.clear();
            for (auto item : split_list(value)) cfg.prop_n.push_back(to_u64(key, item));
        } else if (key == "props.lambda") {
            cfg.prop_lambda = to_real(key, value);
        } else {
            const auto& names = cfg.spec.dim_names;
            const auto it = std::find(names.begin(), names.end(), key);
            if (it == names.end()) usage("unknown config key '" + key + "' for model " + model_name);
            cfg.dims[static_cast<std::size_t>(it - names.begin())] = to_u64(key, value);
        }
    }

    for (std::size_t a = 0; a < cfg.dims.size(); ++a)
        if (cfg.dims[a] < 2) usage(cfg.spec.dim_names[a] + " must be >= 2");
    if (cfg.m < 1) usage("m must be >= 1");
    if (!(cfg.t_star > 0.0)) usage("t_star must be > 0");
    if (!std::is_sorted(cfg.m_list.begin(), cfg.m_list.end()) ||
        std::adjacent_find(cfg.m_list.begin(), cfg.m_list.end()) != cfg.m_list.end())
        usage("converge.m_list must be strictly ascending");
    if (std::find(cfg.m_list.begin(), cfg.m_list.end(), 0u) != cfg.m_list.end())
        usage("converge.m_list entries must be >= 1");
    if (!cfg.m_list.empty()) {
        if (cfg.m_ref == 0) cfg.m_ref = 4 * cfg.m_list.back();
        if (cfg.m_ref < 4 * cfg.m_list.back()) usage("converge.m_ref must be >= 4 * max(m_list)");
    }
    for (std::size_t n : cfg.prop_n)
        if (n < 3 || n > 2048) usage("props.n entries must lie in [3, 2048]");
    if (!(cfg.prop_lambda > -2.0 && cfg.prop_lambda <= 0.0)) usage("props.lambda must lie in (-2, 0]");
    return cfg;
}

}  // namespace curvipat::cli
