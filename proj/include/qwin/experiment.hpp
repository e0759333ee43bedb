#pragma once

// Lifetime sweeps driven by a flat key = value config file, and their
// CSV / JSON-lines result records.
//
// Config schema (one entry per line, '#' starts a comment):
//   code           fixture name | hx.alist,hz.alist | generate:m,n,r,s,seed[,min_girth]
//   p              comma-separated physical error rates in (0, 1)
//   windows        comma-separated W:F pairs, e.g. 1:1, 3:1
//   trials         trials per grid point (>= 1)
//   seed           master seed (required)
//   max_cycles     censoring bound per trial (default 100000)
//   max_iterations BP iteration cap, 0 = one per variable (default 0)
//   bp_method      product_sum | min_sum (default product_sum)
//   min_sum_scale  (0, 1] (default 1)
//   osd            off | osd0 | cs (default cs)
//   lambda         combination-sweep depth (default 40)
//   clamp          message magnitude bound (default 50)
//   ideal_prior    prior of the ideal decoder (default 0.01)
//   side           x | z (default x)
//   workers        worker threads (default 1, does not affect results)
//   output         output path, '-' for stdout (default '-')
//   format         csv | jsonl (default csv)

#include <charconv>
#include <cmath>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "codes.hpp"
#include "lifetime.hpp"

namespace qwin {

class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& field, const std::string& message)
        : std::runtime_error("config field '" + field + "': " + message), field_(field)
    {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

enum class OutputFormat { csv, jsonl };

struct RunConfig {
    std::string code;
    std::vector<double> p;
    std::vector<WindowConfig> windows;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    std::size_t max_cycles = 100000;
    DecoderConfig decoder;
    double ideal_prior = 1e-2;
    ErrorSide side = ErrorSide::x;
    std::size_t workers = 1;
    std::string output = "-";
    OutputFormat format = OutputFormat::csv;

    SimulationParams point(double p_value, WindowConfig w) const
    {
        SimulationParams sp;
        sp.p = p_value;
        sp.window = w;
        sp.decoder = decoder;
        sp.ideal_prior = ideal_prior;
        sp.max_cycles = max_cycles;
        sp.side = side;
        return sp;
    }
};

namespace detail {

inline std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep))
        out.push_back(trim(item));
    if (!s.empty() && s.back() == sep)
        out.emplace_back();
    return out;
}

inline std::uint64_t parse_unsigned(const std::string& field, const std::string& text)
{
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
        throw ConfigError(field, "expected a non-negative integer, got '" + text + "'");
    return v;
}

inline double parse_real(const std::string& field, const std::string& text)
{
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
        throw ConfigError(field, "expected a real number, got '" + text + "'");
    return v;
}

/// Shortest representation that reads back to the same double.
inline std::string format_real(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

inline std::string hex64(std::uint64_t v)
{
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << v;
    return out.str();
}

inline std::uint64_t fnv1a(const std::string& s)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace detail

inline void validate_run_config(const RunConfig& c)
{
    if (c.code.empty())
        throw ConfigError("code", "missing");
    if (c.p.empty())
        throw ConfigError("p", "missing");
    for (double p : c.p)
        if (!(p > 0.0 && p < 1.0))
            throw ConfigError("p", "value " + detail::format_real(p) + " is outside (0, 1)");
    if (c.windows.empty())
        throw ConfigError("windows", "missing");
    for (auto w : c.windows)
        if (w.offset < 1 || w.offset > w.width)
            throw ConfigError("windows", "pair " + std::to_string(w.width) + ":" + std::to_string(w.offset) +
                                             " violates 1 <= F <= W");
    if (c.trials < 1)
        throw ConfigError("trials", "must be at least 1");
    if (c.max_cycles < 1)
        throw ConfigError("max_cycles", "must be at least 1");
    if (!(c.decoder.min_sum_scale > 0.0 && c.decoder.min_sum_scale <= 1.0))
        throw ConfigError("min_sum_scale", "must lie in (0, 1]");
    if (!(c.decoder.message_clamp > 0.0))
        throw ConfigError("clamp", "must be positive");
    if (!(c.ideal_prior > 0.0 && c.ideal_prior < 1.0))
        throw ConfigError("ideal_prior", "must lie in (0, 1)");
    if (c.workers < 1)
        throw ConfigError("workers", "must be at least 1");
}

/// Applies one key = value entry.
inline void apply_config_entry(RunConfig& c, const std::string& key, const std::string& value)
{
    using namespace detail;
    if (key == "code") {
        c.code = value;
    } else if (key == "p") {
        c.p.clear();
        for (const auto& item : split(value, ','))
            c.p.push_back(parse_real(key, item));
    } else if (key == "windows") {
        c.windows.clear();
        for (const auto& item : split(value, ',')) {
            auto parts = split(item, ':');
            if (parts.size() != 2)
                throw ConfigError(key, "expected W:F, got '" + item + "'");
            c.windows.push_back({parse_unsigned(key, parts[0]), parse_unsigned(key, parts[1])});
        }
    } else if (key == "trials") {
        c.trials = parse_unsigned(key, value);
    } else if (key == "seed") {
        c.seed = parse_unsigned(key, value);
    } else if (key == "max_cycles") {
        c.max_cycles = parse_unsigned(key, value);
    } else if (key == "max_iterations") {
        c.decoder.max_iterations = parse_unsigned(key, value);
    } else if (key == "bp_method") {
        if (value == "product_sum")
            c.decoder.bp_method = BpMethod::product_sum;
        else if (value == "min_sum")
            c.decoder.bp_method = BpMethod::min_sum;
        else
            throw ConfigError(key, "expected product_sum or min_sum, got '" + value + "'");
    } else if (key == "min_sum_scale") {
        c.decoder.min_sum_scale = parse_real(key, value);
    } else if (key == "osd") {
        if (value == "off")
            c.decoder.osd_mode = OsdMode::off;
        else if (value == "osd0")
            c.decoder.osd_mode = OsdMode::osd0;
        else if (value == "cs")
            c.decoder.osd_mode = OsdMode::combination_sweep;
        else
            throw ConfigError(key, "expected off, osd0 or cs, got '" + value + "'");
    } else if (key == "lambda") {
        c.decoder.lambda = parse_unsigned(key, value);
    } else if (key == "clamp") {
        c.decoder.message_clamp = parse_real(key, value);
    } else if (key == "ideal_prior") {
        c.ideal_prior = parse_real(key, value);
    } else if (key == "side") {
        if (value == "x")
            c.side = ErrorSide::x;
        else if (value == "z")
            c.side = ErrorSide::z;
        else
            throw ConfigError(key, "expected x or z, got '" + value + "'");
    } else if (key == "workers") {
        c.workers = parse_unsigned(key, value);
    } else if (key == "output") {
        c.output = value;
    } else if (key == "format") {
        if (value == "csv")
            c.format = OutputFormat::csv;
        else if (value == "jsonl")
            c.format = OutputFormat::jsonl;
        else
            throw ConfigError(key, "expected csv or jsonl, got '" + value + "'");
    } else {
        throw ConfigError(key, "unknown key");
    }
}

/// Parses config text; `overrides` (key=value) are applied after the file.
inline RunConfig parse_run_config(std::istream& in, const std::vector<std::string>& overrides = {})
{
    RunConfig c;
    bool has_seed = false;
    std::map<std::string, std::size_t> seen;
    auto apply = [&](const std::string& raw, std::size_t line_no) {
        auto line = detail::trim(raw.substr(0, raw.find('#')));
        if (line.empty())
            return;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(line, "expected key = value on line " + std::to_string(line_no));
        auto key = detail::trim(line.substr(0, eq));
        auto value = detail::trim(line.substr(eq + 1));
        if (line_no > 0 && seen.count(key))
            throw ConfigError(key, "duplicate on line " + std::to_string(line_no));
        seen[key] = line_no;
        apply_config_entry(c, key, value);
        has_seed = has_seed || key == "seed";
    };
    std::string raw;
    for (std::size_t line_no = 1; std::getline(in, raw); ++line_no)
        apply(raw, line_no);
    for (const auto& o : overrides)
        apply(o, 0);
    if (!has_seed)
        throw ConfigError("seed", "missing; a master seed is required");
    validate_run_config(c);
    return c;
}

inline RunConfig parse_run_config(const std::string& text, const std::vector<std::string>& overrides = {})
{
    std::istringstream in(text);
    return parse_run_config(in, overrides);
}

inline RunConfig load_run_config(const std::string& path, const std::vector<std::string>& overrides = {})
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config", "cannot open " + path);
    return parse_run_config(in, overrides);
}

/// Resolves a code source: fixture name, "hx,hz" alist pair, or
/// "generate:m,n,r,s,seed[,min_girth]" for a hypergraph product of a
/// random regular base matrix.
inline CssCode resolve_code(const std::string& source)
{
    const std::string prefix = "generate:";
    if (source.rfind(prefix, 0) == 0) {
        auto parts = detail::split(source.substr(prefix.size()), ',');
        if (parts.size() != 5 && parts.size() != 6)
            throw ConfigError("code", "generate expects m,n,r,s,seed[,min_girth]");
        std::vector<std::uint64_t> v;
        for (const auto& s : parts)
            v.push_back(detail::parse_unsigned("code", s));
        RegularLdpcOptions opts;
        if (v.size() == 6)
            opts.min_girth = v[5];
        auto base = generate_regular_ldpc(v[0], v[1], v[2], v[3], v[4], opts);
        return hgp(base.a, source);
    }
    try {
        return load_code(source);
    } catch (const std::exception& e) {
        throw ConfigError("code", e.what());
    }
}

/// Canonical text of everything that determines one grid point's data.
inline std::string canonical_point(const RunConfig& c, double p, WindowConfig w)
{
    std::ostringstream out;
    const auto& d = c.decoder;
    out << "code=" << c.code << ";p=" << detail::format_real(p) << ";W=" << w.width << ";F=" << w.offset
        << ";trials=" << c.trials << ";seed=" << c.seed << ";max_cycles=" << c.max_cycles
        << ";max_iterations=" << d.max_iterations
        << ";bp_method=" << (d.bp_method == BpMethod::product_sum ? "product_sum" : "min_sum")
        << ";min_sum_scale=" << detail::format_real(d.min_sum_scale)
        << ";osd=" << (d.osd_mode == OsdMode::off ? "off" : d.osd_mode == OsdMode::osd0 ? "osd0" : "cs")
        << ";lambda=" << d.lambda << ";clamp=" << detail::format_real(d.message_clamp)
        << ";ideal_prior=" << detail::format_real(c.ideal_prior) << ";side=" << (c.side == ErrorSide::x ? "x" : "z");
    return out.str();
}

inline std::string config_hash(const RunConfig& c, double p, WindowConfig w)
{
    return detail::hex64(detail::fnv1a(canonical_point(c, p, w)));
}

struct ResultRecord {
    std::string code;
    std::size_t n = 0;
    std::size_t k = 0;
    double p = 0.0;
    std::size_t W = 0;
    std::size_t F = 0;
    std::size_t trials = 0;
    std::size_t censored = 0;
    double mean_T = 0.0;
    double std_err = 0.0;
    std::size_t volume = 0;
    std::uint64_t seed = 0;
    std::string config_hash;
    double wall_time = 0.0;
};

inline const char* csv_header()
{
    return "code,n,k,p,W,F,trials,censored,mean_T,std_err,volume,seed,config_hash";
}

inline std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"')
            out += '"';
        out += ch;
    }
    return out + "\"";
}

inline std::string csv_row(const ResultRecord& r)
{
    using detail::format_real;
    std::ostringstream out;
    out << csv_field(r.code) << ',' << r.n << ',' << r.k << ',' << format_real(r.p) << ',' << r.W << ',' << r.F
        << ',' << r.trials << ',' << r.censored << ',' << format_real(r.mean_T) << ',' << format_real(r.std_err)
        << ',' << r.volume << ',' << r.seed << ',' << r.config_hash;
    return out.str();
}

inline std::string json_string(const std::string& s)
{
    std::string out = "\"";
    for (char ch : s) {
        switch (ch) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(ch) < 0x20) {
                std::ostringstream esc;
                esc << "\\u" << std::hex << std::setw(4) << std::setfill('0') << int(ch);
                out += esc.str();
            } else {
                out += ch;
            }
        }
    }
    return out + "\"";
}

inline std::string jsonl_row(const ResultRecord& r)
{
    using detail::format_real;
    std::ostringstream out;
    out << "{\"code\":" << json_string(r.code) << ",\"n\":" << r.n << ",\"k\":" << r.k
        << ",\"p\":" << format_real(r.p) << ",\"W\":" << r.W << ",\"F\":" << r.F << ",\"trials\":" << r.trials
        << ",\"censored\":" << r.censored << ",\"mean_T\":" << format_real(r.mean_T)
        << ",\"std_err\":" << format_real(r.std_err) << ",\"volume\":" << r.volume << ",\"seed\":" << r.seed
        << ",\"config_hash\":" << json_string(r.config_hash) << ",\"wall_time\":" << format_real(r.wall_time)
        << "}";
    return out.str();
}

/// Runs every (p, W, F) grid point in order, p outermost. `on_record` is
/// called once per finished point, from the calling thread.
inline std::vector<ResultRecord> run_sweep(const RunConfig& config, const CssCode& code,
                                           const std::function<void(const ResultRecord&)>& on_record = {})
{
    validate_run_config(config);
    std::vector<ResultRecord> records;
    for (double p : config.p)
        for (auto w : config.windows) {
            auto start = std::chrono::steady_clock::now();
            auto est = estimate_lifetime(code, config.point(p, w), config.trials, config.seed, config.workers);
            ResultRecord r;
            r.code = config.code;
            r.n = code.n;
            r.k = code.k;
            r.p = p;
            r.W = w.width;
            r.F = w.offset;
            r.trials = est.trials;
            r.censored = est.censored;
            r.mean_T = est.mean_T;
            r.std_err = est.std_error;
            r.volume = (code.n > code.k && (code.n - code.k) % 2 == 0) ? decoding_volume(w.width, code.n, code.k)
                                                                          : w.width * (code.n - code.k) / 2;
            r.seed = config.seed;
            r.config_hash = config_hash(config, p, w);
            r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            if (on_record)
                on_record(r);
            records.push_back(std::move(r));
        }
    return records;
}

} // namespace qwin
