#include "su3/cli.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <string>
#include <tuple>
#include <vector>

using namespace su3;

namespace {

// stdout gets the summary always; tables go to files when asked, stdout otherwise.
int emit(const CommandResult& res, const std::string& csv_path, const std::string& json_path) {
    std::fputs(res.summary.c_str(), stdout);
    auto deliver = [](const std::string& body, const std::string& path, const char* banner) {
        if (body.empty()) return true;
        if (path.empty()) {
            std::printf("--- %s ---\n", banner);
            std::fputs(body.c_str(), stdout);
            return true;
        }
        std::ofstream f(path);
        if (!f) {
            std::fprintf(stderr, "cannot write %s\n", path.c_str());
            return false;
        }
        f << body;
        return true;
    };
    if (!deliver(res.csv, csv_path, "csv")) return 2;
    if (!deliver(res.json, json_path, "json")) return 2;
    return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symbol correspondences for su(3): exact algebra and convergence sweeps"};
    app.set_version_flag("--version", std::string(kVersionTag));
    app.require_subcommand(1);

    RunConfig cfg;
    std::string csv_path, json_path;
    std::string s_text, band_text, deg_text, kind_text = "berezin";
    std::vector<std::string> orbit_texts;
    bool example_7267 = false;

    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--csv", csv_path, "write the CSV table to this path");
        sub->add_option("--json", json_path, "write the JSON report to this path");
    };
    auto add_bank = [&](CLI::App* sub) {
        sub->add_option("--seed", cfg.seed, "sample-bank RNG seed");
        sub->add_option("--samples", cfg.samples, "group samples per orbit bank");
    };

    auto* verify = app.add_subcommand("verify", "run the exact identity suites");
    add_output(verify);
    add_bank(verify);
    verify->add_flag("--inject-fault", cfg.inject_fault,
                     "corrupt one structure constant first (the suite must then fail)");

    auto* sweep = app.add_subcommand("sweep", "defect decay rates on chosen rays");
    add_output(sweep);
    add_bank(sweep);
    sweep->add_option("--orbit", orbit_texts, "ray as 'p1,q1' (repeatable)");
    sweep->add_option("--band", band_text, "primitive-ray band 'lo,hi' on q1/sqrt(norm)");
    sweep->add_option("--max-norm", cfg.max_norm, "primitive-norm cutoff for --band");
    sweep->add_option("--s", s_text, "level range 'a..b'");
    sweep->add_option("--deg", deg_text, "test-word degrees 'du,dv', each in 1..4");
    sweep->add_option("--kind", kind_text, "berezin | scaled");

    auto* orbits = app.add_subcommand("orbits", "integral orbit enumeration");
    add_output(orbits);
    orbits->add_option("--rho2", cfg.rho2, "list solutions of X^2+XY+Y^2 = rho2");
    orbits->add_option("--chain", cfg.chain, "list the radial chain levels R_1..R_n");
    orbits->add_flag("--example-7267", example_7267, "shorthand for --rho2 7267");

    auto* charnum = app.add_subcommand("charnum", "characteristic numbers and trace identities");
    add_output(charnum);
    charnum->add_option("--p-max", cfg.p_max, "largest pure-ray label p");
    charnum->add_option("--n-max", cfg.n_max, "largest transition index n");
    charnum->add_option("--trace-cap", cfg.trace_p_cap, "largest p given matrix-trace columns");

    auto* magoo = app.add_subcommand("magoo", "glued-correspondence uniformity sweep");
    add_output(magoo);
    add_bank(magoo);
    magoo->add_option("--kind", kind_text, "berezin | scaled");
    magoo->add_option("--max-norm", cfg.max_norm, "primitive-norm cutoff");
    magoo->add_option("--band", band_text, "restrict to the band 'lo,hi' on q1/sqrt(norm)");
    magoo->add_option("--s", s_text, "level range 'a..b'");
    magoo->add_option("--deg", deg_text, "test-word degrees 'du,dv', each in 1..4");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (!s_text.empty()) std::tie(cfg.s_min, cfg.s_max) = parse_s_range(s_text);
        if (!deg_text.empty()) std::tie(cfg.deg_u, cfg.deg_v) = parse_int_pair(deg_text);
        if (!band_text.empty()) std::tie(cfg.band_lo, cfg.band_hi) = parse_band(band_text);
        for (const auto& t : orbit_texts) cfg.orbit_list.push_back(parse_int_pair(t));
        cfg.kind = kind_text;

        CommandResult res;
        if (*verify) {
            cfg.command = "verify";
            res = cmd_verify(cfg);
        } else if (*sweep) {
            cfg.command = "sweep";
            res = cmd_sweep(cfg);
        } else if (*orbits) {
            cfg.command = "orbits";
            if (example_7267) cfg.rho2 = 7267;
            res = cmd_orbits(cfg);
        } else if (*charnum) {
            cfg.command = "charnum";
            res = cmd_charnum(cfg);
        } else {
            cfg.command = "magoo";
            res = cmd_magoo(cfg);
        }
        return emit(res, csv_path, json_path);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }
}
