#include "su3/cli.hpp"

#include "su3/berezin.hpp"
#include "su3/irrep.hpp"
#include "su3/magoo.hpp"
#include "su3/poly.hpp"
#include "su3/sl3.hpp"
#include "su3/uea.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace su3 {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt3(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

json config_json(const RunConfig& c) {
    json j;
    j["command"] = c.command;
    j["seed"] = c.seed;
    j["samples"] = c.samples;
    j["s_min"] = c.s_min;
    j["s_max"] = c.s_max;
    auto arr = json::array();
    for (const auto& [p, q] : c.orbit_list) arr.push_back({p, q});
    j["orbit_list"] = arr;
    j["band_lo"] = c.band_lo;
    j["band_hi"] = c.band_hi;
    j["max_norm"] = c.max_norm;
    j["deg_u"] = c.deg_u;
    j["deg_v"] = c.deg_v;
    j["rho2"] = c.rho2;
    j["chain"] = c.chain;
    j["p_max"] = c.p_max;
    j["n_max"] = c.n_max;
    j["trace_p_cap"] = c.trace_p_cap;
    j["kind"] = c.kind;
    j["inject_fault"] = c.inject_fault;
    j["tolerances"] = {{"exact", c.tol_exact},       {"dual_route", c.tol_dual_route},
                       {"limit", c.tol_limit},       {"trace", c.tol_trace},
                       {"gluing", c.tol_gluing},     {"slope_band", {c.slope_lo, c.slope_hi}}};
    return j;
}

json envelope(const RunConfig& cfg) {
    json j;
    j["version"] = kVersionTag;
    j["config"] = config_json(cfg);
    return j;
}

SymbolKind parse_kind(const std::string& kind) {
    if (kind == "berezin") return SymbolKind::Berezin;
    if (kind == "scaled" || kind == "scaled_berezin") return SymbolKind::ScaledBerezin;
    throw ConfigError("unknown kind '" + kind + "' (use berezin or scaled)");
}

void validate_levels(const RunConfig& cfg) {
    if (cfg.s_min < 1 || cfg.s_max < cfg.s_min)
        throw ConfigError("level range must satisfy 1 <= s_min <= s_max");
}

void validate_samples(const RunConfig& cfg) {
    if (cfg.samples < 1 || cfg.samples > 100000)
        throw ConfigError("samples must be in [1, 100000]");
}

// Explicit rays win; otherwise primitive rays under the norm cutoff,
// optionally filtered to the band on q1/sqrt(norm).
std::vector<RationalOrbit> select_orbits(const RunConfig& cfg, bool allow_default_all) {
    std::vector<RationalOrbit> out;
    if (!cfg.orbit_list.empty()) {
        for (const auto& [p, q] : cfg.orbit_list) {
            try {
                out.push_back(rational_orbit(p, q));
            } catch (const std::domain_error& e) {
                throw ConfigError(e.what());
            }
        }
        return out;
    }
    const bool banded = cfg.band_lo >= 0.0 || cfg.band_hi >= 0.0;
    if (banded && (cfg.band_lo < 0.0 || cfg.band_hi < cfg.band_lo || cfg.band_hi > 1.0))
        throw ConfigError("band must satisfy 0 <= lo <= hi <= 1");
    if (!banded && !allow_default_all)
        throw ConfigError("select rays with --orbit or --band");
    if (cfg.max_norm < 1) throw ConfigError("max-norm must be >= 1");
    for (const auto& o : primitive_orbits(cfg.max_norm)) {
        const double y = o.q1 / std::sqrt(static_cast<double>(o.norm_m));
        if (!banded || (y >= cfg.band_lo && y <= cfg.band_hi)) out.push_back(o);
    }
    if (out.empty()) throw ConfigError("the band selects no primitive rays");
    return out;
}

// Canonical test words by degree: prefixes of e1 e2 e4 e5 for the first
// factor and e4 e5 e1 e2 for the second, so degree pairs never collide.
UeaElement canonical_word(int deg, bool second) {
    static const int first[4] = {1, 2, 4, 5};
    static const int alt[4] = {4, 5, 1, 2};
    if (deg < 1 || deg > 4) throw ConfigError("test word degree must be in [1, 4]");
    Word w;
    for (int i = 0; i < deg; ++i) w.push_back(static_cast<uint8_t>((second ? alt : first)[i]));
    return normal_order(w);
}

UeaElement random_element(std::mt19937_64& rng, int max_degree, int n_terms) {
    std::uniform_int_distribution<int> gen(1, 8);
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::uniform_int_distribution<int> coeff(-4, 4);
    UeaElement u;
    for (int t = 0; t < n_terms; ++t) {
        Mono8 m{};
        int d = deg(rng);
        for (int i = 0; i < d; ++i) m[gen(rng) - 1] += 1;
        u.add_term(m, GaussQuad(QuadScalar(coeff(rng), coeff(rng), 0, 0)));
    }
    return u;
}

// Exact Jacobi defect of a structure-constant table: the largest numeric
// coefficient of [[b_j,b_k],b_l] + [[b_k,b_l],b_j] + [[b_l,b_j],b_k].
double jacobi_residual(const StructureConstants& t) {
    double worst = 0;
    auto accumulate = [&t](std::array<GaussQuad, 8>& acc, int j, int k, int l) {
        for (const auto& [m, c] : t.bracket(j, k))
            for (const auto& [n, d] : t.bracket(m, l)) acc[n] = acc[n] + GaussQuad(c * d);
    };
    for (int j = 0; j < 8; ++j)
        for (int k = 0; k < 8; ++k)
            for (int l = 0; l < 8; ++l) {
                std::array<GaussQuad, 8> acc{};
                accumulate(acc, j, k, l);
                accumulate(acc, k, l, j);
                accumulate(acc, l, j, k);
                for (const auto& g : acc) worst = std::max(worst, std::abs(g.to_complex()));
            }
    return worst;
}

struct Suite {
    std::string name;
    bool pass = false;
    double residual = 0;
    double tolerance = 0;
    std::string note;
};

Suite exact_suite(std::string name, double residual, std::string note = {}) {
    return {std::move(name), residual == 0.0, residual, 0.0, std::move(note)};
}

std::string suite_line(const Suite& s) {
    std::string line = s.pass ? "[PASS] " : "[FAIL] ";
    line += s.name;
    if (line.size() < 30) line += std::string(30 - line.size(), ' ');
    line += " residual " + fmt3(s.residual);
    if (s.tolerance > 0) line += " (tol " + fmt3(s.tolerance) + ")";
    if (!s.note.empty()) line += "  " + s.note;
    line += "\n";
    return line;
}

int longest_increase_run(const std::vector<double>& curve, double floor_value) {
    int best = 0, current = 0;
    for (size_t n = 1; n < curve.size(); ++n) {
        if (curve[n] > curve[n - 1] && curve[n] > floor_value)
            ++current;
        else
            current = 0;
        best = std::max(best, current);
    }
    return best;
}

}  // namespace

std::pair<int, int> parse_int_pair(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos || comma == 0 || comma + 1 >= text.size())
        throw ConfigError("expected 'a,b', got '" + text + "'");
    try {
        size_t pa = 0, pb = 0;
        const std::string left = text.substr(0, comma), right = text.substr(comma + 1);
        int a = std::stoi(left, &pa);
        int b = std::stoi(right, &pb);
        if (pa != left.size() || pb != right.size()) throw std::invalid_argument(text);
        return {a, b};
    } catch (const std::exception&) {
        throw ConfigError("expected integers 'a,b', got '" + text + "'");
    }
}

std::pair<int, int> parse_s_range(const std::string& text) {
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            size_t pos = 0;
            int s = std::stoi(text, &pos);
            if (pos != text.size()) throw std::invalid_argument(text);
            if (s < 1) throw ConfigError("levels start at 1");
            return {s, s};
        }
        size_t pa = 0, pb = 0;
        const std::string left = text.substr(0, dots), right = text.substr(dots + 2);
        int a = std::stoi(left, &pa);
        int b = std::stoi(right, &pb);
        if (pa != left.size() || pb != right.size()) throw std::invalid_argument(text);
        if (a < 1 || b < a) throw ConfigError("level range '" + text + "' is empty");
        return {a, b};
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("expected a level range 'a..b', got '" + text + "'");
    }
}

std::pair<double, double> parse_band(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw ConfigError("expected a band 'lo,hi'");
    try {
        size_t pa = 0, pb = 0;
        const std::string left = text.substr(0, comma), right = text.substr(comma + 1);
        double lo = std::stod(left, &pa);
        double hi = std::stod(right, &pb);
        if (pa != left.size() || pb != right.size()) throw std::invalid_argument(text);
        return {lo, hi};
    } catch (const std::exception&) {
        throw ConfigError("expected a band 'lo,hi', got '" + text + "'");
    }
}

CommandResult cmd_verify(const RunConfig& cfg) {
    validate_samples(cfg);
    std::vector<Suite> suites;

    // Jacobi identity on both exact tables; the fault hook corrupts a copy.
    {
        StructureConstants gt = structure_constants(BasisTag::GT);
        if (cfg.inject_fault) {
            if (gt.c[0][3].empty())
                gt.c[0][3].push_back({6, QuadScalar(1)});
            else
                gt.c[0][3][0].second = gt.c[0][3][0].second + QuadScalar(1);
        }
        suites.push_back(exact_suite("jacobi_gt", jacobi_residual(gt),
                                     cfg.inject_fault ? "fault injected" : ""));
        suites.push_back(
            exact_suite("jacobi_gm", jacobi_residual(structure_constants(BasisTag::GellMann))));
    }

    std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ull);

    // PBW confluence: deterministic vs randomized rewriting order.
    {
        const int words = std::clamp(cfg.samples, 8, 5000);
        std::uniform_int_distribution<int> len(1, 6), letter(1, 8);
        int mismatches = 0;
        for (int t = 0; t < words; ++t) {
            Word w;
            int n = len(rng);
            for (int i = 0; i < n; ++i) w.push_back(static_cast<uint8_t>(letter(rng)));
            if (normal_order(w) != normal_order_randomized(w, rng())) ++mismatches;
        }
        suites.push_back(exact_suite("pbw_confluence", mismatches,
                                     "over " + std::to_string(words) + " words"));
    }

    // beta_d [ S(f) ] = f on monomials of degree <= 4.
    {
        std::uniform_int_distribution<int> letter(1, 8), num(1, 4), den(1, 3);
        int mismatches = 0, cases = 0;
        for (int d = 0; d <= 4; ++d)
            for (int t = 0; t < 10; ++t) {
                Mono8 m{};
                for (int i = 0; i < d; ++i) m[letter(rng) - 1] += 1;
                PolyElement f =
                    PolyElement::monomial(m, GaussQuad(QuadScalar(Rational(num(rng), den(rng)))));
                ++cases;
                if (beta_d(symmetrize(f), d) != f) ++mismatches;
            }
        suites.push_back(exact_suite("symmetrization_inverse", mismatches,
                                     "over " + std::to_string(cases) + " monomials"));
    }

    // Top-symbol product and bracket identities on random pairs.
    {
        int bad_prod = 0, bad_br = 0;
        for (int t = 0; t < 100; ++t) {
            UeaElement u = random_element(rng, 3, 2);
            UeaElement v = random_element(rng, 3, 2);
            if (u.is_zero() || v.is_zero()) continue;
            const int du = u.degree(), dv = v.degree();
            if (beta_d(multiply(u, v), du + dv) != pointwise_mul(beta_top(u), beta_top(v)))
                ++bad_prod;
            if (du + dv >= 1 &&
                beta_d(commutator(u, v), du + dv - 1) != kaks_bracket(beta_top(u), beta_top(v)))
                ++bad_br;
        }
        suites.push_back(exact_suite("product_symbol", bad_prod, "over 100 pairs"));
        suites.push_back(exact_suite("bracket_symbol", bad_br, "over 100 pairs"));
    }

    // tau is a Casimir function and S(tau) is central.
    {
        int bad = 0;
        for (int j = 1; j <= 8; ++j)
            if (!kaks_bracket(PolyElement::variable(j), tau_poly()).is_zero()) ++bad;
        suites.push_back(exact_suite("tau_invariance", bad));
        bad = 0;
        for (int j = 1; j <= 8; ++j)
            if (!commutator(cubic_casimir(), UeaElement::generator(j)).is_zero()) ++bad;
        suites.push_back(exact_suite("casimir_central", bad));
    }

    // Anchor values of the degree-1 symbols at the dominant weights.
    {
        const UeaElement two_t3 =
            UeaElement::from_matrix(GaussQuad(QuadScalar(2)) * defining_ops().T3);
        const UeaElement two_u3 =
            UeaElement::from_matrix(GaussQuad(QuadScalar(2)) * defining_ops().U3);
        const GaussQuad minus_i(QuadScalar(0), QuadScalar(-1));
        int bad = 0;
        for (int p = 0; p <= 3; ++p)
            for (int q = 0; q <= 3; ++q) {
                const Mat3q at = minus_i * dominant_weight(p, q).omega;
                if (evaluate_exact(beta_top(two_t3), at) != GaussQuad(QuadScalar(p))) ++bad;
                if (evaluate_exact(beta_top(two_u3), at) != GaussQuad(QuadScalar(q))) ++bad;
            }
        suites.push_back(exact_suite("anchor_values", bad, "weights up to (3,3)"));
    }

    // The two independent symbol routes agree numerically.
    {
        const int trials = std::clamp(cfg.samples / 5, 4, 100);
        std::uniform_int_distribution<int> level(1, 4);
        double worst = 0;
        for (const auto& [p, q] : {std::pair{1, 0}, std::pair{1, 1}, std::pair{2, 1}}) {
            for (int t = 0; t < trials; ++t) {
                UeaElement u = random_element(rng, 3, 2);
                const int s = level(rng);
                GroupSample g = sample_group(rng());
                RaySpec ray = make_ray(p, q, SymbolKind::Berezin, {s});
                const auto a = universal_berezin(u, ray, s, g, BerezinRoute::Operator);
                const auto b = universal_berezin(u, ray, s, g, BerezinRoute::Algebraic);
                worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
            }
        }
        suites.push_back({"dual_route_berezin", worst <= cfg.tol_dual_route, worst,
                          cfg.tol_dual_route,
                          std::to_string(trials) + " trials per ray, s <= 4"});
    }

    CommandResult res;
    int failed = 0;
    std::ostringstream out;
    out << "exact identity suites (seed " << cfg.seed << ")\n";
    json report = envelope(cfg);
    report["suites"] = json::array();
    for (const auto& s : suites) {
        out << suite_line(s);
        if (!s.pass) ++failed;
        report["suites"].push_back({{"name", s.name},
                                    {"pass", s.pass},
                                    {"residual", s.residual},
                                    {"tolerance", s.tolerance},
                                    {"note", s.note}});
    }
    out << (failed == 0 ? "all suites passed\n"
                        : std::to_string(failed) + " suite(s) failed\n");
    report["all_pass"] = failed == 0;
    res.exit_code = failed == 0 ? 0 : 1;
    res.summary = out.str();
    res.json = report.dump(2) + "\n";
    return res;
}

CommandResult cmd_sweep(const RunConfig& cfg) {
    validate_levels(cfg);
    validate_samples(cfg);
    const SymbolKind kind = parse_kind(cfg.kind);
    const auto orbits = select_orbits(cfg, false);
    const UeaElement u = canonical_word(cfg.deg_u, false);
    const UeaElement v = canonical_word(cfg.deg_v, true);
    const std::vector<int> levels = s_sequence(cfg.s_min, cfg.s_max);

    std::string csv = "orbit_p1,orbit_q1,s,s_times_r,prod_defect,bracket_defect\n";
    json report = envelope(cfg);
    report["orbits"] = json::array();
    std::ostringstream out;
    out << "defect sweep: deg (" << cfg.deg_u << "," << cfg.deg_v << "), kind " << cfg.kind
        << ", s " << cfg.s_min << ".." << cfg.s_max << ", " << cfg.samples << " samples\n";
    bool all_pass = true;

    for (const auto& orbit : orbits) {
        OrbitContext ctx = make_orbit_context(orbit, cfg.seed, cfg.samples);
        RaySpec ray = make_ray(orbit.p1, orbit.q1, kind, levels);
        const auto rows = poisson_diagnostics(u, v, ray, ctx);

        std::vector<std::pair<double, double>> prod_pts, br_pts;
        double max_bracket = 0;
        for (const auto& row : rows) {
            csv += std::to_string(orbit.p1) + "," + std::to_string(orbit.q1) + "," +
                   std::to_string(row.s) + "," + fmt17(row.s_times_r) + "," +
                   fmt17(row.prod_defect) + "," + fmt17(row.bracket_defect) + "\n";
            prod_pts.emplace_back(row.s, row.prod_defect);
            br_pts.emplace_back(row.s, row.bracket_defect);
            max_bracket = std::max(max_bracket, row.bracket_defect);
        }
        const SlopeFit pfit = fit_loglog(prod_pts);
        const SlopeFit bfit = fit_loglog(br_pts);

        json jorb;
        jorb["p1"] = orbit.p1;
        jorb["q1"] = orbit.q1;
        jorb["r"] = orbit.r;
        jorb["rows"] = json::array();
        for (const auto& row : rows)
            jorb["rows"].push_back({{"s", row.s},
                                    {"s_times_r", row.s_times_r},
                                    {"prod_defect", row.prod_defect},
                                    {"bracket_defect", row.bracket_defect}});
        jorb["prod_slope"] = pfit.slope;
        jorb["prod_stderr"] = pfit.stderr_slope;
        jorb["prod_ci"] = {pfit.slope - 2 * pfit.stderr_slope, pfit.slope + 2 * pfit.stderr_slope};
        jorb["bracket_slope"] = bfit.n_used >= 2 ? json(bfit.slope) : json();
        jorb["max_bracket_defect"] = max_bracket;

        out << "orbit (" << orbit.p1 << "," << orbit.q1 << ") r=" << fmt3(orbit.r);
        if (pfit.n_used >= 2) {
            const bool ok = pfit.slope >= cfg.slope_lo && pfit.slope <= cfg.slope_hi;
            all_pass = all_pass && ok;
            out << ": product slope " << fmt3(pfit.slope) << " +/- " << fmt3(pfit.stderr_slope)
                << " band [" << cfg.slope_lo << "," << cfg.slope_hi << "] "
                << (ok ? "PASS" : "FAIL");
            jorb["prod_in_band"] = ok;
        } else {
            out << ": too few levels for a rate fit";
            jorb["prod_in_band"] = json();
        }
        out << ", max bracket defect " << fmt3(max_bracket) << "\n";
        report["orbits"].push_back(jorb);
    }

    report["all_pass"] = all_pass;
    CommandResult res;
    res.exit_code = all_pass ? 0 : 1;
    out << (all_pass ? "sweep verdict PASS\n" : "sweep verdict FAIL\n");
    res.summary = out.str();
    res.csv = csv;
    res.json = report.dump(2) + "\n";
    return res;
}

CommandResult cmd_orbits(const RunConfig& cfg) {
    if ((cfg.rho2 > 0) == (cfg.chain > 0))
        throw ConfigError("pass exactly one of --rho2 N or --chain N");
    CommandResult res;
    json report = envelope(cfg);
    std::ostringstream out;

    if (cfg.rho2 > 0) {
        IntegralOrbitSet set;
        try {
            set = enumerate_integral_orbits(cfg.rho2);
        } catch (const std::domain_error& e) {
            throw ConfigError(e.what());
        }
        res.csv = orbit_set_csv(set);
        out << "rho^2 = " << cfg.rho2 << ": " << set.solutions.size() << " integral orbits\n";
        auto arr = json::array();
        for (const auto& [x, y] : set.solutions) arr.push_back({x, y});
        report["rho2"] = cfg.rho2;
        report["solutions"] = arr;
    } else {
        RadialChain chain;
        try {
            chain = radial_chain(cfg.chain);
        } catch (const std::domain_error& e) {
            throw ConfigError(e.what());
        }
        std::string csv = "level,p1,q1,norm,r\n";
        auto jlevels = json::array();
        out << "radial chain levels:";
        for (size_t n = 0; n < chain.levels.size(); ++n) {
            auto jl = json::array();
            for (const auto& o : chain.levels[n]) {
                csv += std::to_string(n + 1) + "," + std::to_string(o.p1) + "," +
                       std::to_string(o.q1) + "," + std::to_string(o.norm_m) + "," +
                       fmt17(o.r) + "\n";
                jl.push_back({o.p1, o.q1});
            }
            out << " |R_" << n + 1 << "| = " << chain.levels[n].size();
            jlevels.push_back(jl);
        }
        out << "\n";
        res.csv = csv;
        report["levels"] = jlevels;
    }

    res.summary = out.str();
    report["all_pass"] = true;
    res.json = report.dump(2) + "\n";
    res.exit_code = 0;
    return res;
}

CommandResult cmd_charnum(const RunConfig& cfg) {
    if (cfg.p_max < 1 || cfg.n_max < 0) throw ConfigError("need p_max >= 1 and n_max >= 0");
    if (cfg.trace_p_cap > 40) throw ConfigError("trace-cap beyond the irrep budget");

    const CharNumberReport limit = char_number_limit_check(cfg.p_max, cfg.n_max);
    std::string csv = "p,n,b,scaled_gap,limit_target,limit_pass,trace_lhs,trace_rhs,trace_rel\n";
    double worst_trace = 0;
    for (int p = 1; p <= cfg.p_max; ++p) {
        for (int n = 0; n <= std::min(cfg.n_max, p); ++n) {
            const double b = characteristic_number(p, n);
            const double target = n == 0 ? 0.0 : -0.5 * n * (n + 2);
            csv += std::to_string(p) + "," + std::to_string(n) + "," + fmt17(b) + "," +
                   fmt17(p * (b - 1.0)) + "," + fmt17(target) + ",";
            if (p == cfg.p_max)
                csv += limit.rows[static_cast<size_t>(n)].pass ? "1" : "0";
            csv += ",";
            if (n >= 1 && p <= cfg.trace_p_cap) {
                const LadderTrace lt = ladder_trace_identity(p, n);
                const double rel = std::abs(lt.lhs - lt.rhs) / std::abs(lt.rhs);
                worst_trace = std::max(worst_trace, rel);
                csv += fmt17(lt.lhs) + "," + fmt17(lt.rhs) + "," + fmt17(rel);
            } else {
                csv += ",,";
            }
            csv += "\n";
        }
    }

    const bool trace_pass = worst_trace <= cfg.tol_trace;
    std::ostringstream out;
    out << "characteristic numbers up to p = " << cfg.p_max << ", n = " << cfg.n_max << "\n";
    int limit_ok = 0;
    for (const auto& row : limit.rows) limit_ok += row.pass ? 1 : 0;
    out << "limit check at p = " << cfg.p_max << ": " << limit_ok << "/" << limit.rows.size()
        << " rows within " << fmt3(limit.tolerance) << " relative of -n(n+2)/2 "
        << (limit.all_pass ? "PASS" : "FAIL") << "\n";
    out << "ladder trace identities (p <= " << cfg.trace_p_cap << "): max relative residual "
        << fmt3(worst_trace) << " (tol " << fmt3(cfg.tol_trace) << ") "
        << (trace_pass ? "PASS" : "FAIL") << "\n";

    json report = envelope(cfg);
    report["limit_rows"] = json::array();
    for (const auto& row : limit.rows)
        report["limit_rows"].push_back({{"n", row.n},
                                        {"b_at_pmax", row.b_at_pmax},
                                        {"scaled_gap", row.scaled_gap},
                                        {"target", row.target},
                                        {"pass", row.pass}});
    report["limit_tolerance"] = limit.tolerance;
    report["limit_all_pass"] = limit.all_pass;
    report["trace_max_rel"] = worst_trace;
    report["trace_pass"] = trace_pass;
    report["all_pass"] = limit.all_pass && trace_pass;

    CommandResult res;
    res.exit_code = (limit.all_pass && trace_pass) ? 0 : 1;
    res.summary = out.str();
    res.csv = csv;
    res.json = report.dump(2) + "\n";
    return res;
}

CommandResult cmd_magoo(const RunConfig& cfg) {
    validate_levels(cfg);
    validate_samples(cfg);
    const SymbolKind kind = parse_kind(cfg.kind);
    RunConfig selector = cfg;
    selector.orbit_list.clear();  // magoo always glues primitive rays under the cutoff
    const auto orbits = select_orbits(selector, true);
    if (orbits.size() < 2) throw ConfigError("the cutoff selects fewer than two orbits");

    const UeaElement u = canonical_word(cfg.deg_u, false);
    const UeaElement v = canonical_word(cfg.deg_v, true);
    const std::vector<int> levels = s_sequence(cfg.s_min, cfg.s_max);
    const MagooRun run = uniformity_sweep(kind, orbits, levels, u, v, cfg.samples, cfg.seed);

    double slope_min = 1e9, slope_max = -1e9;
    for (double sl : run.per_orbit_slope) {
        slope_min = std::min(slope_min, sl);
        slope_max = std::max(slope_max, sl);
    }
    const bool per_orbit_ok = slope_min >= cfg.slope_lo && slope_max <= cfg.slope_hi;
    const double restr = restriction_compatibility_gap(run);
    const double lvl = level_vs_per_orbit_gap(run);
    const bool restr_ok = restr <= cfg.tol_gluing;
    const bool lvl_ok = lvl <= cfg.tol_gluing;

    // Cross-orbit max product defect over the full set, per level s.
    std::vector<std::pair<double, double>> max_pts;
    for (size_t si = 0; si < levels.size(); ++si) {
        double m = 0;
        for (int i : run.levels.back()) m = std::max(m, run.prod_defect.back()[si][i]);
        max_pts.emplace_back(levels[si], m);
    }
    const SlopeFit max_fit = fit_loglog(max_pts);

    const int witness_s =
        (cfg.s_min <= 8 && 8 <= cfg.s_max) ? 8 : cfg.s_max;
    const auto curve_prod = max_defect_cutoff_curve(run, witness_s, DefectChannel::Product);
    const auto curve_br = max_defect_cutoff_curve(run, witness_s, DefectChannel::Bracket);
    const int growth_run = longest_increase_run(curve_br, 1e-10);
    const bool monotone_growth = growth_run >= 2;

    bool uniform_ok;
    std::string uniform_note;
    if (kind == SymbolKind::Berezin) {
        uniform_ok = max_fit.n_used >= 2 && max_fit.slope >= cfg.slope_lo &&
                     max_fit.slope <= cfg.slope_hi;
        uniform_note = "max-defect slope " + fmt3(max_fit.slope);
    } else {
        uniform_ok = !monotone_growth;
        uniform_note = monotone_growth
                           ? "monotone growth over " + std::to_string(growth_run + 1) +
                                 " successive cutoffs"
                           : "no monotone growth detected";
    }

    std::ostringstream out;
    out << "magoo sweep: kind " << cfg.kind << ", " << orbits.size() << " orbits in "
        << run.levels.size() << " radius levels, s " << cfg.s_min << ".." << cfg.s_max << ", "
        << cfg.samples << " samples, seed " << cfg.seed << "\n";
    out << "per-orbit slopes [" << fmt3(slope_min) << ", " << fmt3(slope_max) << "] band ["
        << cfg.slope_lo << "," << cfg.slope_hi << "] " << (per_orbit_ok ? "PASS" : "FAIL")
        << "\n";
    out << "restriction compatibility gap " << fmt3(restr) << " (tol " << fmt3(cfg.tol_gluing)
        << ") " << (restr_ok ? "PASS" : "FAIL") << "\n";
    out << "level defect vs per-orbit max gap " << fmt3(lvl) << " (tol " << fmt3(cfg.tol_gluing)
        << ") " << (lvl_ok ? "PASS" : "FAIL") << "\n";
    auto print_curve = [&out](const char* label, const std::vector<double>& c) {
        out << label;
        for (double x : c) out << " " << fmt3(x);
        out << "\n";
    };
    print_curve(("cutoff curve s=" + std::to_string(witness_s) + " product: ").c_str(),
                curve_prod);
    print_curve(("cutoff curve s=" + std::to_string(witness_s) + " bracket: ").c_str(), curve_br);
    out << "uniform trend " << (uniform_ok ? "PASS" : "FAIL") << " (" << uniform_note << ")\n";
    if (run.levels.size() < 3 && kind == SymbolKind::ScaledBerezin)
        out << "note: fewer than 3 radius levels; growth assessment is weak\n";

    const bool all_pass = per_orbit_ok && restr_ok && lvl_ok && uniform_ok;

    json report = envelope(cfg);
    report["verdicts"] = {{"per_orbit_pass", per_orbit_ok}, {"restriction_pass", restr_ok},
                          {"level_pass", lvl_ok},           {"uniform_pass", uniform_ok},
                          {"uniform_note", uniform_note},   {"all_pass", all_pass}};
    report["gaps"] = {{"restriction", restr}, {"level_vs_per_orbit", lvl}};
    report["max_defect_slope"] = max_fit.n_used >= 2 ? json(max_fit.slope) : json();
    report["cutoff_curve"] = {
        {"s", witness_s}, {"product", curve_prod}, {"bracket", curve_br}};
    report["run"] = json::parse(magoo_run_json(run));
    report["all_pass"] = all_pass;

    CommandResult res;
    res.exit_code = all_pass ? 0 : 1;
    res.summary = out.str();
    res.csv = magoo_run_csv(run);
    res.json = report.dump(2) + "\n";
    return res;
}

}  // namespace su3
