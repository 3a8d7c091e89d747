#ifndef BRENKE_CONFIG_HPP
#define BRENKE_CONFIG_HPP

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <brenke/families.hpp>
#include <brenke/operator.hpp>
#include <brenke/test_functions.hpp>

// Experiment configuration: flat `key = value` lines grouped under [section] headers.
// Lists are bracketed and comma separated; Stancu pairs are written (nu1, nu2).
//
//   [family]      family = szasz | gould_hopper | miller_lee | appell | custom
//                 b, d (gould_hopper), m (miller_lee), k_max
//                 a1, a2, h = [c0, c1, ...] | exp | geometric | identity
//   [experiment]  stancu = [(0, 0), (1, 2)]
//                 n_list = [1, 2, 4]          strictly ascending, n >= 1
//                 x_grid = [min, max, count]  count >= 2
//                 functions = [one, id, t2]
//                 c_thm25 = 4
//   [window]      t_max, step, pad
//   [truncation]  eps_tail, k_hard_cap
//   [output]      path
//
// '#' starts a comment.

namespace brenke
{

// Malformed configuration text; distinct from domain errors.
class config_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct family_config {
    std::string kind = "szasz";
    double b = 1;
    int d = 1;
    double m = 0;
    std::optional<coefficient_source> a1, a2, h;
    std::size_t k_max = default_k_max;
};

struct x_grid_spec {
    double min = 0;
    double max = 2;
    std::size_t count = 9;

    [[nodiscard]] std::vector<double> values() const
    {
        std::vector<double> v(count);
        for (std::size_t i = 0; i < count; ++i) {
            v[i] = i + 1 == count ? max : min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
        }
        return v;
    }
};

struct experiment_config {
    family_config family;
    std::vector<stancu_params> stancu{stancu_params{}};
    std::vector<std::int64_t> n_list{1, 2, 4, 8, 16, 32, 64, 128, 256};
    x_grid_spec x_grid;
    std::vector<std::string> functions{"one", "id", "t2", "expneg", "sint", "kink", "sqrtt"};
    double window_t_max = 4;
    double window_step = 1.0 / 1024;
    double window_pad = 1;
    // Tighter than the library default so 12-decimal output of L_n(1; x) prints exactly 1.
    double eps_tail = 1e-15;
    std::int64_t k_hard_cap = 10000;
    double second_modulus_constant = 4;
    std::string output_path;

    [[nodiscard]] truncation_policy policy() const
    {
        return truncation_policy(eps_tail, k_hard_cap);
    }

    void validate() const
    {
        if (n_list.empty()) {
            throw config_error("n_list must be nonempty");
        }
        for (std::size_t i = 0; i < n_list.size(); ++i) {
            if (n_list[i] < 1) {
                throw config_error("n_list entries must be >= 1");
            }
            if (i > 0 && n_list[i] <= n_list[i - 1]) {
                throw config_error("n_list must be strictly ascending");
            }
        }
        if (x_grid.count < 2) {
            throw config_error("x_grid count must be >= 2");
        }
        if (!(x_grid.min >= 0) || !(x_grid.max >= x_grid.min)) {
            throw config_error("x_grid needs 0 <= min <= max");
        }
        if (stancu.empty()) {
            throw config_error("stancu list must be nonempty");
        }
        if (functions.empty()) {
            throw config_error("functions list must be nonempty");
        }
        for (const auto &f : functions) {
            try {
                (void)find_function(f);
            } catch (const precondition_error &e) {
                throw config_error(e.what());
            }
        }
        if (!(eps_tail > 0 && eps_tail < 1e-3) || k_hard_cap < 1) {
            throw config_error("truncation needs 0 < eps_tail < 1e-3 and k_hard_cap >= 1");
        }
        if (!(window_step > 0) || !(window_t_max > 0) || !(window_pad >= 0)) {
            throw config_error("window needs t_max > 0, step > 0, pad >= 0");
        }
        if (!(second_modulus_constant > 0)) {
            throw config_error("c_thm25 must be positive");
        }
    }
};

namespace detail
{

inline std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline double parse_double(const std::string &s, const std::string &key)
{
    const std::string t = trim(s);
    errno = 0;
    char *end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v)) {
        throw config_error("key '" + key + "': expected a finite number, got '" + t + "'");
    }
    return v;
}

inline std::int64_t parse_int(const std::string &s, const std::string &key)
{
    const double v = parse_double(s, key);
    if (v != std::floor(v) || std::fabs(v) > 9e15) {
        throw config_error("key '" + key + "': expected an integer, got '" + trim(s) + "'");
    }
    return static_cast<std::int64_t>(v);
}

// Splits "[a, (b, c), d]" into top-level items.
inline std::vector<std::string> parse_list(const std::string &raw, const std::string &key)
{
    const std::string s = trim(raw);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
        throw config_error("key '" + key + "': expected a bracketed list, got '" + s + "'");
    }
    std::vector<std::string> items;
    int depth = 0;
    std::string cur;
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        const char c = s[i];
        if (c == '(') {
            ++depth;
        } else if (c == ')') {
            if (--depth < 0) {
                throw config_error("key '" + key + "': unbalanced parentheses");
            }
        }
        if (c == ',' && depth == 0) {
            items.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (depth != 0) {
        throw config_error("key '" + key + "': unbalanced parentheses");
    }
    if (!trim(cur).empty() || !items.empty()) {
        items.push_back(trim(cur));
    }
    for (const auto &it : items) {
        if (it.empty()) {
            throw config_error("key '" + key + "': empty list item");
        }
    }
    return items;
}

inline coefficient_source parse_source(const std::string &raw, const std::string &key)
{
    const std::string s = trim(raw);
    using kind = coefficient_source::kind;
    if (s == "exp") {
        return coefficient_source::named(kind::exp);
    }
    if (s == "geometric") {
        return coefficient_source::named(kind::geometric);
    }
    if (s == "identity") {
        return coefficient_source::named(kind::identity);
    }
    std::vector<double> v;
    for (const auto &item : parse_list(s, key)) {
        v.push_back(parse_double(item, key));
    }
    if (v.empty()) {
        throw config_error("key '" + key + "': coefficient list is empty");
    }
    return coefficient_source::list(std::move(v));
}

inline stancu_params parse_pair(const std::string &raw, const std::string &key)
{
    const std::string s = trim(raw);
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') {
        throw config_error("key '" + key + "': expected (nu1, nu2), got '" + s + "'");
    }
    const auto inner = s.substr(1, s.size() - 2);
    const auto comma = inner.find(',');
    if (comma == std::string::npos) {
        throw config_error("key '" + key + "': expected (nu1, nu2), got '" + s + "'");
    }
    const double a = parse_double(inner.substr(0, comma), key);
    const double b = parse_double(inner.substr(comma + 1), key);
    if (!(a >= 0) || !(b >= 0)) {
        throw config_error("key '" + key + "': Stancu parameters must be >= 0");
    }
    return stancu_params(a, b);
}

inline std::string fmt_exact(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

inline experiment_config parse_config(std::istream &in)
{
    experiment_config cfg;
    std::string section;
    std::string line;
    std::size_t line_no = 0;
    std::map<std::string, std::size_t> seen;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        const std::string t = detail::trim(line);
        if (t.empty()) {
            continue;
        }
        if (t.front() == '[' && t.back() == ']' && t.find('=') == std::string::npos) {
            section = detail::trim(t.substr(1, t.size() - 2));
            static const char *known[] = {"family", "experiment", "window", "truncation", "output"};
            if (std::find(std::begin(known), std::end(known), section) == std::end(known)) {
                throw config_error("line " + std::to_string(line_no) + ": unknown section [" + section + "]");
            }
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw config_error("line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = detail::trim(t.substr(0, eq));
        const std::string val = detail::trim(t.substr(eq + 1));
        if (section.empty()) {
            throw config_error("line " + std::to_string(line_no) + ": key '" + key + "' outside any section");
        }
        const std::string full = section + "." + key;
        if (seen.count(full)) {
            throw config_error("line " + std::to_string(line_no) + ": duplicate key '" + full + "'");
        }
        seen[full] = line_no;

        auto &fam = cfg.family;
        if (full == "family.family") {
            static const char *kinds[] = {"szasz", "gould_hopper", "miller_lee", "appell", "custom"};
            if (std::find(std::begin(kinds), std::end(kinds), val) == std::end(kinds)) {
                throw config_error("unknown family '" + val + "'");
            }
            fam.kind = val;
        } else if (full == "family.b") {
            fam.b = detail::parse_double(val, key);
        } else if (full == "family.d") {
            fam.d = static_cast<int>(detail::parse_int(val, key));
        } else if (full == "family.m") {
            fam.m = detail::parse_double(val, key);
        } else if (full == "family.k_max") {
            const auto k = detail::parse_int(val, key);
            if (k < 1) {
                throw config_error("k_max must be >= 1");
            }
            fam.k_max = static_cast<std::size_t>(k);
        } else if (full == "family.a1") {
            fam.a1 = detail::parse_source(val, key);
        } else if (full == "family.a2") {
            fam.a2 = detail::parse_source(val, key);
        } else if (full == "family.h") {
            fam.h = detail::parse_source(val, key);
        } else if (full == "experiment.stancu") {
            cfg.stancu.clear();
            for (const auto &item : detail::parse_list(val, key)) {
                cfg.stancu.push_back(detail::parse_pair(item, key));
            }
        } else if (full == "experiment.n_list") {
            cfg.n_list.clear();
            for (const auto &item : detail::parse_list(val, key)) {
                cfg.n_list.push_back(detail::parse_int(item, key));
            }
        } else if (full == "experiment.x_grid") {
            const auto items = detail::parse_list(val, key);
            if (items.size() != 3) {
                throw config_error("x_grid expects [min, max, count]");
            }
            cfg.x_grid.min = detail::parse_double(items[0], key);
            cfg.x_grid.max = detail::parse_double(items[1], key);
            const auto c = detail::parse_int(items[2], key);
            if (c < 2) {
                throw config_error("x_grid count must be >= 2");
            }
            cfg.x_grid.count = static_cast<std::size_t>(c);
        } else if (full == "experiment.functions") {
            cfg.functions = detail::parse_list(val, key);
        } else if (full == "experiment.c_thm25") {
            cfg.second_modulus_constant = detail::parse_double(val, key);
        } else if (full == "window.t_max") {
            cfg.window_t_max = detail::parse_double(val, key);
        } else if (full == "window.step") {
            cfg.window_step = detail::parse_double(val, key);
        } else if (full == "window.pad") {
            cfg.window_pad = detail::parse_double(val, key);
        } else if (full == "truncation.eps_tail") {
            cfg.eps_tail = detail::parse_double(val, key);
        } else if (full == "truncation.k_hard_cap") {
            cfg.k_hard_cap = detail::parse_int(val, key);
        } else if (full == "output.path") {
            cfg.output_path = val;
        } else {
            throw config_error("line " + std::to_string(line_no) + ": unknown key '" + full + "'");
        }
    }
    cfg.validate();
    return cfg;
}

inline experiment_config parse_config_text(const std::string &text)
{
    std::istringstream in(text);
    return parse_config(in);
}

inline experiment_config load_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw config_error("cannot open config file '" + path + "'");
    }
    return parse_config(in);
}

// Effective configuration with every key spelled out; parses back to an equal config.
inline std::string to_config_text(const experiment_config &cfg)
{
    using detail::fmt_exact;
    std::ostringstream os;
    const auto &f = cfg.family;
    os << "[family]\n";
    os << "family = " << f.kind << '\n';
    os << "b = " << fmt_exact(f.b) << '\n';
    os << "d = " << f.d << '\n';
    os << "m = " << fmt_exact(f.m) << '\n';
    os << "k_max = " << f.k_max << '\n';
    if (f.a1) {
        os << "a1 = " << to_string(*f.a1) << '\n';
    }
    if (f.a2) {
        os << "a2 = " << to_string(*f.a2) << '\n';
    }
    if (f.h) {
        os << "h = " << to_string(*f.h) << '\n';
    }
    os << "\n[experiment]\nstancu = [";
    for (std::size_t i = 0; i < cfg.stancu.size(); ++i) {
        os << (i ? ", " : "") << '(' << fmt_exact(cfg.stancu[i].nu1) << ", " << fmt_exact(cfg.stancu[i].nu2) << ')';
    }
    os << "]\nn_list = [";
    for (std::size_t i = 0; i < cfg.n_list.size(); ++i) {
        os << (i ? ", " : "") << cfg.n_list[i];
    }
    os << "]\nx_grid = [" << fmt_exact(cfg.x_grid.min) << ", " << fmt_exact(cfg.x_grid.max) << ", "
       << cfg.x_grid.count << "]\nfunctions = [";
    for (std::size_t i = 0; i < cfg.functions.size(); ++i) {
        os << (i ? ", " : "") << cfg.functions[i];
    }
    os << "]\nc_thm25 = " << fmt_exact(cfg.second_modulus_constant) << '\n';
    os << "\n[window]\nt_max = " << fmt_exact(cfg.window_t_max) << "\nstep = " << fmt_exact(cfg.window_step)
       << "\npad = " << fmt_exact(cfg.window_pad) << '\n';
    os << "\n[truncation]\neps_tail = " << fmt_exact(cfg.eps_tail) << "\nk_hard_cap = " << cfg.k_hard_cap << '\n';
    if (!cfg.output_path.empty()) {
        os << "\n[output]\npath = " << cfg.output_path << '\n';
    }
    return os.str();
}

// Builds the family; domain violations surface as precondition_error.
inline family_spec make_family(const family_config &fc)
{
    using kind = coefficient_source::kind;
    if (fc.kind == "szasz") {
        return make_szasz(fc.k_max);
    }
    if (fc.kind == "gould_hopper") {
        return make_gould_hopper(fc.b, fc.d, fc.k_max);
    }
    if (fc.kind == "miller_lee") {
        return make_miller_lee(fc.m, fc.k_max);
    }
    if (fc.kind == "appell") {
        const auto src = fc.a1.value_or(coefficient_source::named(kind::exp));
        if (src.type != kind::list && src.type != kind::exp) {
            throw precondition_error("appell: a1 must be a coefficient list or exp");
        }
        auto f = make_appell(detail::to_series(src, fc.k_max), detail::to_function(src), fc.k_max);
        return f;
    }
    if (fc.kind == "custom") {
        return make_custom(fc.a1.value_or(coefficient_source::list({1.0})),
                           fc.a2.value_or(coefficient_source::named(kind::exp)),
                           fc.h.value_or(coefficient_source::named(kind::identity)), fc.k_max);
    }
    throw config_error("unknown family '" + fc.kind + "'");
}

} // namespace brenke

#endif
