#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <qwin/alist.hpp>
#include <qwin/codes.hpp>
#include <qwin/experiment.hpp>
#include <qwin/lifetime.hpp>
#include <qwin/noise.hpp>
#include <qwin/window.hpp>

using namespace qwin;
using nlohmann::json;

namespace {

std::string support_string(const BinaryVector& v)
{
    std::ostringstream out;
    out << '[';
    bool first = true;
    for (auto i : v.support()) {
        out << (first ? "" : ",") << i;
        first = false;
    }
    out << ']';
    return out.str();
}

json support_json(const BinaryVector& v)
{
    return json(v.support());
}

json code_summary(const CssCode& code, std::size_t distance_trials, std::uint64_t seed)
{
    json j;
    j["n"] = code.n;
    j["k"] = code.k;
    j["hx_rows"] = code.hx.rows();
    j["hz_rows"] = code.hz.rows();
    j["css_valid"] = validate_css(code.hx, code.hz);
    if (distance_trials > 0) {
        auto d = distance_upper_bound(code, distance_trials, seed);
        j["distance_upper_bound"] = d ? json(*d) : json(nullptr);
    }
    return j;
}

void print_summary(const json& j)
{
    for (auto it = j.begin(); it != j.end(); ++it)
        std::cout << it.key() << " = " << it.value().dump() << '\n';
}

int cmd_gen_hgp(const std::string& fixture, std::size_t m, std::size_t n, std::size_t r, std::size_t s,
                std::optional<std::uint64_t> seed, std::size_t min_girth, const std::string& out,
                std::size_t distance_trials)
{
    BinaryMatrix a;
    std::uint64_t dist_seed = 0;
    if (!fixture.empty()) {
        a = fixture_base_matrix(fixture);
    } else {
        if (!seed)
            throw std::invalid_argument("gen-hgp: --seed is required when generating");
        RegularLdpcOptions opts;
        opts.min_girth = min_girth;
        a = generate_regular_ldpc(m, n, r, s, *seed, opts).a;
        dist_seed = *seed;
    }
    auto code = hgp(a, fixture.empty() ? out : fixture);
    if (!validate_css(code.hx, code.hz))
        throw std::logic_error("gen-hgp: product violates the CSS condition");
    if (!out.empty()) {
        store_alist(out + "_a.alist", a);
        store_code(code, out + "_hx.alist", out + "_hz.alist");
    }
    auto j = code_summary(code, distance_trials, dist_seed);
    j["base_rows"] = a.rows();
    j["base_cols"] = a.cols();
    j["base_rank"] = rank(a);
    print_summary(j);
    return 0;
}

int cmd_code_info(const std::string& source, std::size_t distance_trials, std::uint64_t seed, bool as_json)
{
    auto code = resolve_code(source);
    auto j = code_summary(code, distance_trials, seed);
    j["code"] = source;
    auto cw = code.hz.column_weights();
    auto rw = code.hz.row_weights();
    j["hz_max_column_weight"] = cw.empty() ? 0 : *std::max_element(cw.begin(), cw.end());
    j["hz_max_row_weight"] = rw.empty() ? 0 : *std::max_element(rw.begin(), rw.end());
    if (as_json)
        std::cout << j.dump() << '\n';
    else
        print_summary(j);
    return 0;
}

struct DecodeOnceArgs {
    std::string code;
    std::size_t width = 1;
    std::size_t offset = 1;
    double p = 0.01;
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
    std::vector<std::size_t> inject;
    bool zero = false;
    std::size_t max_iterations = 0;
};

int cmd_decode_once(const DecodeOnceArgs& args)
{
    auto code = resolve_code(args.code);
    const auto& h = code.hz;
    DecoderConfig cfg;
    cfg.max_iterations = args.max_iterations;
    WindowDecoder dec(h, {args.width, args.offset}, args.p, cfg);
    auto state = dec.initial_state();

    std::vector<BinaryVector> measured;
    BinaryVector physical(code.n);
    const bool sampled = !args.zero && args.inject.empty();
    for (std::size_t t = 0; t < dec.syndromes_needed(state); ++t) {
        BinaryVector u(h.rows());
        if (sampled) {
            auto s = sample_round(code.n, h.rows(), NoiseParams(args.p), RngKey{args.seed, args.trial, t + 1});
            physical ^= s.e;
            u = s.u;
        } else if (t == 0) {
            for (auto q : args.inject) {
                if (q >= code.n)
                    throw std::invalid_argument("decode-once: injected qubit " + std::to_string(q) +
                                                " is outside 0.." + std::to_string(code.n - 1));
                physical ^= BinaryVector(code.n, {q});
            }
        }
        measured.push_back(synthesize_syndrome(h, physical, u));
    }
    auto r = dec.cycle(state, measured);

    std::cout << "window (W,F) = (" << args.width << "," << args.offset << ") on n = " << code.n << '\n';
    for (std::size_t t = 0; t < r.differenced.size(); ++t)
        std::cout << "round " << t + 1 << ": sigma weight " << r.window[t].weight() << ", differenced "
                  << support_string(r.differenced[t]) << '\n';
    std::cout << "bp: converged = " << (r.decode.bp_converged ? "yes" : "no")
              << ", iterations = " << r.decode.bp_iterations << '\n';
    json j;
    if (r.decode.osd) {
        const auto& o = *r.decode.osd;
        std::vector<std::size_t> head(o.ranking.begin(),
                                      o.ranking.begin() + std::min<std::size_t>(10, o.ranking.size()));
        std::cout << "osd: rank = " << o.rank << ", osd0 weight = " << o.osd0_weight << ", final weight = "
                  << o.weight << ", ranking head = " << json(head).dump() << '\n';
        j["osd"] = {{"rank", o.rank}, {"osd0_weight", o.osd0_weight}, {"weight", o.weight}, {"ranking_head", head}};
    } else {
        std::cout << "osd: not run\n";
        j["osd"] = nullptr;
    }
    std::cout << "commit xi = " << support_string(r.commit) << '\n';
    j["W"] = args.width;
    j["F"] = args.offset;
    j["bp_converged"] = r.decode.bp_converged;
    j["bp_iterations"] = r.decode.bp_iterations;
    j["syndrome_consistent"] = r.decode.syndrome_consistent;
    j["commit"] = support_json(r.commit);
    j["true_error"] = support_json(physical);
    if (args.width == 1) {
        SingleShotDecoder single(h, args.p, cfg);
        auto s = single.decode(measured.front());
        j["single_shot_match"] = s == r.commit;
        std::cout << "single-shot commit = " << support_string(s) << '\n';
    }
    std::cout << j.dump() << '\n';
    return 0;
}

int cmd_lifetime(const std::string& config_path, const std::vector<std::string>& sets,
                 std::optional<std::size_t> workers, const std::string& output, const std::string& format)
{
    auto overrides = sets;
    if (workers)
        overrides.push_back("workers = " + std::to_string(*workers));
    if (!output.empty())
        overrides.push_back("output = " + output);
    if (!format.empty())
        overrides.push_back("format = " + format);
    auto config = config_path.empty() ? parse_run_config(std::string(), overrides)
                                      : load_run_config(config_path, overrides);
    auto code = resolve_code(config.code);

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (config.output != "-") {
        file.open(config.output);
        if (!file)
            throw ConfigError("output", "cannot open " + config.output);
        out = &file;
    }
    if (config.format == OutputFormat::csv)
        *out << csv_header() << '\n' << std::flush;
    std::size_t total = config.p.size() * config.windows.size(), done = 0;
    run_sweep(config, code, [&](const ResultRecord& r) {
        *out << (config.format == OutputFormat::csv ? csv_row(r) : jsonl_row(r)) << '\n' << std::flush;
        std::cerr << "[" << ++done << "/" << total << "] p=" << r.p << " (W,F)=(" << r.W << "," << r.F
                  << ") mean_T=" << r.mean_T << " +- " << r.std_err << " censored=" << r.censored << " in "
                  << r.wall_time << "s\n";
    });
    return 0;
}

int cmd_volume(const std::vector<std::string>& codes, const std::vector<std::size_t>& widths)
{
    std::ostringstream table;
    table << "code,n,k,W,volume\n";
    for (const auto& source : codes) {
        auto code = resolve_code(source);
        for (auto w : widths)
            table << csv_field(source) << ',' << code.n << ',' << code.k << ',' << w << ','
                      << decoding_volume(w, code.n, code.k) << '\n';
    }
    std::cout << table.str();
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Sliding-window decoding of hypergraph product codes"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen-hgp", "Generate a hypergraph product code from a regular base matrix");
    std::string gen_fixture, gen_out;
    std::size_t gm = 15, gn = 20, gr = 3, gs = 4, girth = 0, gen_dist = 100;
    std::optional<std::uint64_t> gen_seed;
    gen->add_option("--fixture", gen_fixture, "Use a built-in base matrix instead of generating");
    gen->add_option("--m", gm, "Base rows")->capture_default_str();
    gen->add_option("--n", gn, "Base columns")->capture_default_str();
    gen->add_option("--r", gr, "Column weight")->capture_default_str();
    gen->add_option("--s", gs, "Row weight")->capture_default_str();
    gen->add_option("--seed", gen_seed, "Generation seed");
    gen->add_option("--min-girth", girth, "Reject base matrices with shorter Tanner cycles")->capture_default_str();
    gen->add_option("--out", gen_out, "Write PREFIX_hx.alist, PREFIX_hz.alist and PREFIX_a.alist");
    gen->add_option("--distance-trials", gen_dist, "Random logical searches, 0 to skip")->capture_default_str();

    auto* info = app.add_subcommand("code-info", "Print parameters of a code");
    std::string info_code;
    std::size_t info_dist = 100;
    std::uint64_t info_seed = 1;
    bool info_json = false;
    info->add_option("--code", info_code, "Fixture name, hx.alist,hz.alist or generate:m,n,r,s,seed")->required();
    info->add_option("--distance-trials", info_dist, "Random logical searches, 0 to skip")->capture_default_str();
    info->add_option("--seed", info_seed, "Seed of the distance search")->capture_default_str();
    info->add_flag("--json", info_json, "Print one JSON object");

    auto* once = app.add_subcommand("decode-once", "Run one window decode and print a trace");
    DecodeOnceArgs once_args;
    once->add_option("--code", once_args.code, "Code source")->required();
    once->add_option("--W", once_args.width, "Window width")->capture_default_str();
    once->add_option("--F", once_args.offset, "Commit offset")->capture_default_str();
    once->add_option("--p", once_args.p, "Error rate for priors and sampling")->capture_default_str();
    once->add_option("--seed", once_args.seed, "Master seed of the sampled instance")->capture_default_str();
    once->add_option("--trial", once_args.trial, "Trial index of the sampled instance")->capture_default_str();
    once->add_option("--inject", once_args.inject, "Data qubits flipped before round 1, noiseless syndromes")
        ->delimiter(',');
    once->add_flag("--zero", once_args.zero, "Decode all-zero syndromes");
    once->add_option("--max-iterations", once_args.max_iterations, "BP cap, 0 = one per variable")
        ->capture_default_str();

    auto* life = app.add_subcommand("lifetime", "Estimate memory lifetimes over a (p, W, F) grid");
    std::string life_config, life_output, life_format;
    std::vector<std::string> life_sets;
    std::optional<std::size_t> life_workers;
    life->add_option("config", life_config, "Config file of key = value lines");
    life->add_option("--set", life_sets, "Override or supply one key=value entry (repeatable)");
    life->add_option("--workers", life_workers, "Worker threads");
    life->add_option("--output", life_output, "Output path, - for stdout");
    life->add_option("--format", life_format, "csv or jsonl");

    auto* vol = app.add_subcommand("volume", "Tabulate decoding volumes W(n-k)/2");
    std::vector<std::string> vol_codes;
    std::vector<std::size_t> vol_widths;
    vol->add_option("--code", vol_codes, "Code sources (repeatable)")->required();
    vol->add_option("--W", vol_widths, "Window widths")->required()->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*gen)
            return cmd_gen_hgp(gen_fixture, gm, gn, gr, gs, gen_seed, girth, gen_out, gen_dist);
        if (*info)
            return cmd_code_info(info_code, info_dist, info_seed, info_json);
        if (*once)
            return cmd_decode_once(once_args);
        if (*life)
            return cmd_lifetime(life_config, life_sets, life_workers, life_output, life_format);
        if (*vol)
            return cmd_volume(vol_codes, vol_widths);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
