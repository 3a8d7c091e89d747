#ifndef BRENKE_CLI_HPP
#define BRENKE_CLI_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <brenke/bounds.hpp>
#include <brenke/config.hpp>
#include <brenke/errors.hpp>
#include <brenke/families.hpp>
#include <brenke/moments.hpp>
#include <brenke/operator.hpp>
#include <brenke/test_functions.hpp>

namespace brenke
{

enum exit_code : int { exit_ok = 0, exit_domain = 1, exit_usage = 2 };

struct command_result {
    int code = exit_ok;
    std::string output;      // report text or CSV
    std::string diagnostics; // messages for stderr
};

// 12 significant digits; negative zero prints as 0.
inline std::string csv_number(double v)
{
    if (v == 0) {
        return "0";
    }
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string csv_bool(bool b)
{
    return b ? "true" : "false";
}

// Quotes a field only when it contains a separator, quote or newline.
inline std::string csv_text(const std::string &s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string q = "\"";
    for (const char c : s) {
        q += c;
        if (c == '"') {
            q += '"';
        }
    }
    return q + '"';
}

class csv_writer
{
public:
    explicit csv_writer(std::vector<std::string> header)
    {
        row(header);
    }

    void row(const std::vector<std::string> &fields)
    {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            m_out += (i ? "," : "") + fields[i];
        }
        m_out += '\n';
    }

    [[nodiscard]] const std::string &str() const noexcept
    {
        return m_out;
    }

private:
    std::string m_out;
};

namespace detail
{

inline std::string first_line(const std::string &s)
{
    return s.substr(0, s.find('\n'));
}

template <class Fn>
command_result with_family(const experiment_config &cfg, Fn &&fn)
{
    family_spec family;
    try {
        family = make_family(cfg.family);
    } catch (const config_error &e) {
        return {exit_usage, {}, std::string("config error: ") + e.what() + '\n'};
    } catch (const error &e) {
        return {exit_domain, {}, std::string("family error: ") + e.what() + '\n'};
    }
    return fn(family);
}

} // namespace detail

inline command_result cmd_validate(const experiment_config &cfg)
{
    return detail::with_family(cfg, [&](const family_spec &f) {
        const auto report = validate(f, f.k_max(), cfg.x_grid.max, static_cast<double>(cfg.n_list.back()));
        command_result r;
        r.output = report.to_text();
        r.code = report.passed() ? exit_ok : exit_domain;
        return r;
    });
}

inline command_result cmd_eval(const experiment_config &cfg, const std::string &f_name, std::int64_t n, double x)
{
    const test_function *fn = nullptr;
    try {
        fn = &find_function(f_name);
    } catch (const error &e) {
        return {exit_usage, {}, std::string(e.what()) + '\n'};
    }
    return detail::with_family(cfg, [&](const family_spec &f) {
        command_result r;
        try {
            const auto wv = weights(f, n, x, cfg.policy());
            const double v = apply(wv, fn->eval, cfg.stancu.front());
            char buf[128];
            std::snprintf(buf, sizeof buf, "%.12f\nk_used %lld\nmass %.15g\n", v, static_cast<long long>(wv.k_used),
                          wv.mass);
            r.output = buf;
        } catch (const error &e) {
            r.code = exit_domain;
            r.diagnostics = std::string("evaluation error: ") + e.what() + '\n';
        }
        return r;
    });
}

inline const std::vector<std::string> &moments_header()
{
    static const std::vector<std::string> h{"family", "n",        "x",        "nu1",    "nu2",    "m0",
                                            "m1",     "m2",       "d1",       "d2",     "delta_n", "lambda_n",
                                            "mu_n",   "m0_sum",   "m1_sum",   "m2_sum", "max_rel_gap", "status"};
    return h;
}

inline command_result cmd_moments(const experiment_config &cfg)
{
    return detail::with_family(cfg, [&](const family_spec &f) {
        csv_writer csv(moments_header());
        command_result r;
        for (const auto n : cfg.n_list) {
            for (const double x : cfg.x_grid.values()) {
                std::vector<std::string> lead{csv_text(f.name), std::to_string(n), csv_number(x)};
                std::string weight_error;
                weight_vector wv;
                try {
                    wv = weights(f, n, x, cfg.policy());
                } catch (const error &e) {
                    weight_error = e.what();
                }
                for (const auto &s : cfg.stancu) {
                    auto row = lead;
                    row.push_back(csv_number(s.nu1));
                    row.push_back(csv_number(s.nu2));
                    std::string status = "ok";
                    try {
                        if (!weight_error.empty()) {
                            throw error(weight_error);
                        }
                        const auto m = compute_moments(f, wv, s);
                        for (const double v : {m.m0, m.m1, m.m2, m.d1, m.d2, m.delta_n, m.lambda_n, m.mu_n, m.m0_sum,
                                               m.m1_sum, m.m2_sum, m.max_rel_gap}) {
                            row.push_back(csv_number(v));
                        }
                    } catch (const error &e) {
                        row.resize(5);
                        row.insert(row.end(), 12, "nan");
                        status = "error: " + detail::first_line(e.what());
                    }
                    row.push_back(csv_text(status));
                    csv.row(row);
                }
            }
        }
        r.output = csv.str();
        return r;
    });
}

inline command_result cmd_converge(const experiment_config &cfg)
{
    return detail::with_family(cfg, [&](const family_spec &f) {
        struct cell {
            std::string f_name;
            stancu_params s;
            std::int64_t n;
            double sup_err = 0;
            std::string status = "ok";
        };
        std::vector<cell> cells;
        const auto xs = cfg.x_grid.values();
        for (const auto &name : cfg.functions) {
            for (const auto &s : cfg.stancu) {
                for (const auto n : cfg.n_list) {
                    cells.push_back({name, s, n});
                }
            }
        }
        // Weights depend only on (n, x); compute them once and reuse across functions and Stancu pairs.
        for (const auto n : cfg.n_list) {
            for (const double x : xs) {
                weight_vector wv;
                std::string weight_error;
                try {
                    wv = weights(f, n, x, cfg.policy());
                } catch (const error &e) {
                    weight_error = e.what();
                }
                for (auto &c : cells) {
                    if (c.n != n || c.status != "ok") {
                        continue;
                    }
                    try {
                        if (!weight_error.empty()) {
                            throw error(weight_error);
                        }
                        const auto &fn = find_function(c.f_name);
                        c.sup_err = std::max(c.sup_err, std::fabs(apply(wv, fn.eval, c.s) - fn(x)));
                    } catch (const error &e) {
                        c.status = "error: " + detail::first_line(e.what());
                    }
                }
            }
        }
        std::stable_sort(cells.begin(), cells.end(), [](const cell &a, const cell &b) {
            return std::tie(a.f_name, a.s.nu1, a.s.nu2, a.n) < std::tie(b.f_name, b.s.nu1, b.s.nu2, b.n);
        });
        csv_writer csv({"family", "f", "nu1", "nu2", "n", "sup_err", "status"});
        for (const auto &c : cells) {
            const bool ok = c.status == "ok";
            csv.row({csv_text(f.name), c.f_name, csv_number(c.s.nu1), csv_number(c.s.nu2), std::to_string(c.n),
                     ok ? csv_number(c.sup_err) : "nan", csv_text(c.status)});
        }
        return command_result{exit_ok, csv.str(), {}};
    });
}

inline const std::vector<std::string> &bounds_header()
{
    static const std::vector<std::string> h{"family", "f",     "nu1",   "nu2",   "n",     "x",
                                            "err_emp", "b22",  "b23",   "b24",   "b25",   "dom22",
                                            "dom23",  "dom24", "dom25", "c_thm25", "status"};
    return h;
}

inline std::string bounds_csv(const std::vector<bound_report> &rows)
{
    csv_writer csv(bounds_header());
    for (const auto &r : rows) {
        const bool ok = r.status.rfind("error", 0) != 0;
        auto num = [&](double v) { return ok ? csv_number(v) : std::string("nan"); };
        csv.row({csv_text(r.family), r.f_name, csv_number(r.s.nu1), csv_number(r.s.nu2), std::to_string(r.n),
                 csv_number(r.x), num(r.err_emp), num(r.b22), r.has_b23 ? num(r.b23) : std::string("nan"),
                 num(r.b24), num(r.b25), csv_bool(r.dom22), csv_bool(r.dom23), csv_bool(r.dom24),
                 csv_bool(r.dom25), csv_number(r.second_modulus_constant), csv_text(detail::first_line(r.status))});
    }
    return csv.str();
}

inline command_result cmd_bounds(const experiment_config &cfg)
{
    return detail::with_family(cfg, [&](const family_spec &f) {
        const window_config w{cfg.window_t_max, cfg.window_step, cfg.window_pad};
        std::vector<function_context> contexts;
        for (const auto &name : cfg.functions) {
            contexts.emplace_back(find_function(name), w);
        }
        const auto rows = verify({f}, contexts, cfg.n_list, cfg.x_grid.values(), cfg.stancu,
                                 cfg.second_modulus_constant, cfg.policy());
        return command_result{exit_ok, bounds_csv(rows), {}};
    });
}

} // namespace brenke

#endif
