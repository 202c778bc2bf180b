#include "su3/magoo.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace su3 {

namespace {

using cplx = std::complex<double>;

cplx minus_i_pow(int d) {
    static const cplx table[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    return table[((d % 4) + 4) % 4];
}

long long isqrt_floor(long long v) {
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(v)));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

// Running product with an fma-compensated error term; the delta normalizers
// multiply many near-cancelling chi gaps, where naive products lose digits.
double compensated_product(const std::vector<double>& factors) {
    double hi = 1.0, lo = 0.0;
    for (double f : factors) {
        double p = hi * f;
        double e = std::fma(hi, f, -p);
        lo = std::fma(lo, f, e);
        hi = p;
    }
    return hi + lo;
}

double tau_at(const OrbitContext& ctx, int i) {
    return evaluate_at(tau_poly(), ctx.xcoords[i]).real();
}

void check_banks(const Pencil& pencil, const std::vector<OrbitContext>& banks) {
    if (banks.size() != pencil.orbits.size())
        throw std::invalid_argument("need one sample bank per pencil orbit");
    for (size_t i = 0; i < banks.size(); ++i)
        if (banks[i].orbit.p1 != pencil.orbits[i].p1 || banks[i].orbit.q1 != pencil.orbits[i].q1)
            throw std::invalid_argument("sample banks are not aligned with the pencil orbits");
}

// Raw (plain-kind) per-ray symbol values of u over one bank, with the scaled
// transform applied against the ray's own bank mean when requested. The mean
// is part of the ray symbol's definition, so cross-orbit evaluations must not
// use the evaluation bank's mean.
std::vector<cplx> ray_values(const UeaElement& u, const RationalOrbit& ray_orbit, SymbolKind kind,
                             int s, const OrbitContext& eval_bank, const OrbitContext& home_bank) {
    RaySpec ray = make_ray(ray_orbit.p1, ray_orbit.q1, SymbolKind::Berezin, {s});
    std::vector<cplx> vals = eval_symbol(u, ray, s, eval_bank).values;
    if (kind == SymbolKind::ScaledBerezin) {
        std::vector<cplx> own = eval_symbol(u, ray, s, home_bank).values;
        cplx mean = std::accumulate(own.begin(), own.end(), cplx(0, 0)) /
                    static_cast<double>(own.size());
        const double f = ray_orbit.r / static_cast<double>(s);
        for (auto& v : vals) v += f * (v - mean);
    }
    return vals;
}

}  // namespace

IntegralOrbitSet enumerate_integral_orbits(long long rho_sq) {
    if (rho_sq < 1) throw std::domain_error("enumerate_integral_orbits: rho_sq must be >= 1");
    IntegralOrbitSet set;
    set.rho_sq = rho_sq;
    for (long long x = 0; x * x <= rho_sq; ++x) {
        long long disc = 4 * rho_sq - 3 * x * x;
        long long root = isqrt_floor(disc);
        if (root * root != disc) continue;
        if ((root - x) % 2 != 0 || root < x) continue;
        set.solutions.emplace_back(x, (root - x) / 2);
    }
    return set;
}

std::vector<RationalOrbit> primitive_orbits(long long max_norm) {
    std::vector<RationalOrbit> out;
    for (long long m = 1; m <= max_norm; ++m) {
        for (const auto& [x, y] : enumerate_integral_orbits(m).solutions)
            if (std::gcd(x, y) == 1)
                out.push_back(rational_orbit(static_cast<int>(x), static_cast<int>(y)));
    }
    return out;
}

RadialChain radial_chain(int n_max) {
    if (n_max < 1) throw std::domain_error("radial_chain: n_max must be >= 1");
    RadialChain chain;
    std::vector<RationalOrbit> acc;
    for (long long m = 1; static_cast<int>(chain.levels.size()) < n_max; ++m) {
        bool grew = false;
        for (const auto& [x, y] : enumerate_integral_orbits(m).solutions) {
            if (std::gcd(x, y) != 1) continue;
            acc.push_back(rational_orbit(static_cast<int>(x), static_cast<int>(y)));
            grew = true;
        }
        if (grew) chain.levels.push_back(acc);
    }
    return chain;
}

Pencil build_pencil(const std::vector<RationalOrbit>& orbits) {
    if (orbits.size() < 2) throw std::domain_error("build_pencil: need at least two orbits");
    Pencil pencil;
    pencil.orbits = orbits;
    pencil.chi.reserve(orbits.size());
    for (const auto& o : orbits) pencil.chi.push_back(tau_on_orbit(o));
    for (size_t i = 0; i < orbits.size(); ++i)
        for (size_t j = i + 1; j < orbits.size(); ++j)
            if (std::abs(pencil.chi[i] - pencil.chi[j]) < 1e-12)
                throw std::logic_error("build_pencil: two orbits share an invariant value");
    for (size_t i = 0; i < orbits.size(); ++i) {
        std::vector<double> gaps;
        gaps.reserve(orbits.size() - 1);
        for (size_t j = 0; j < orbits.size(); ++j)
            if (j != i) gaps.push_back(pencil.chi[i] - pencil.chi[j]);
        double m = compensated_product(gaps);
        pencil.normalizers.push_back(m);
        if (std::abs(m) < 1e-6) pencil.ill_conditioned = true;
    }
    return pencil;
}

double delta_eval(const Pencil& pencil, int which, double tau_value) {
    if (which < 0 || which >= static_cast<int>(pencil.orbits.size()))
        throw std::out_of_range("delta_eval: orbit index");
    std::vector<double> factors;
    factors.reserve(pencil.orbits.size() - 1);
    for (size_t j = 0; j < pencil.orbits.size(); ++j)
        if (static_cast<int>(j) != which) factors.push_back(tau_value - pencil.chi[j]);
    return compensated_product(factors) / pencil.normalizers[which];
}

std::vector<double> delta_coefficients(const Pencil& pencil, int which) {
    if (which < 0 || which >= static_cast<int>(pencil.orbits.size()))
        throw std::out_of_range("delta_coefficients: orbit index");
    std::vector<double> coeffs = {1.0};
    for (size_t j = 0; j < pencil.orbits.size(); ++j) {
        if (static_cast<int>(j) == which) continue;
        std::vector<double> next(coeffs.size() + 1, 0.0);
        for (size_t k = 0; k < coeffs.size(); ++k) {
            next[k] -= pencil.chi[j] * coeffs[k];
            next[k + 1] += coeffs[k];
        }
        coeffs = std::move(next);
    }
    for (auto& c : coeffs) c /= pencil.normalizers[which];
    return coeffs;
}

DeltaCheck delta_identity_check(const Pencil& pencil, const std::vector<OrbitContext>& banks) {
    check_banks(pencil, banks);
    DeltaCheck out;
    const int n = static_cast<int>(pencil.orbits.size());
    std::vector<double> d(n);
    for (int home = 0; home < n; ++home) {
        for (int i = 0; i < banks[home].size(); ++i) {
            double t = tau_at(banks[home], i);
            double sum = 0;
            for (int j = 0; j < n; ++j) {
                d[j] = delta_eval(pencil, j, t);
                sum += d[j];
                double want = (j == home) ? 1.0 : 0.0;
                out.delta_gap = std::max(out.delta_gap, std::abs(d[j] - want));
            }
            out.partition_gap = std::max(out.partition_gap, std::abs(sum - 1.0));
            for (int j = 0; j < n; ++j)
                for (int k = j + 1; k < n; ++k)
                    out.orthogonality_gap = std::max(out.orthogonality_gap, std::abs(d[j] * d[k]));
        }
    }
    return out;
}

std::complex<double> pencil_symbol(const UeaElement& u, const Pencil& pencil, SymbolKind kind,
                                   int s, const std::vector<OrbitContext>& banks, int orbit_index,
                                   int point_index) {
    check_banks(pencil, banks);
    if (orbit_index < 0 || orbit_index >= static_cast<int>(banks.size()))
        throw std::out_of_range("pencil_symbol: orbit index");
    if (point_index < 0 || point_index >= banks[orbit_index].size())
        throw std::out_of_range("pencil_symbol: point index");
    const double t = tau_at(banks[orbit_index], point_index);
    cplx out = 0;
    for (size_t j = 0; j < pencil.orbits.size(); ++j) {
        std::vector<cplx> w = ray_values(u, pencil.orbits[j], kind, s, banks[orbit_index],
                                         banks[j]);
        out += delta_eval(pencil, static_cast<int>(j), t) * w[point_index];
    }
    return out;
}

std::complex<double> r_weighted_bracket(const UeaElement& u, const UeaElement& v,
                                        const Pencil& pencil, SymbolKind kind, int s,
                                        const std::vector<OrbitContext>& banks, int orbit_index,
                                        int point_index) {
    check_banks(pencil, banks);
    if (orbit_index < 0 || orbit_index >= static_cast<int>(banks.size()))
        throw std::out_of_range("r_weighted_bracket: orbit index");
    if (point_index < 0 || point_index >= banks[orbit_index].size())
        throw std::out_of_range("r_weighted_bracket: point index");
    const UeaElement br = commutator(u, v);
    const double t = tau_at(banks[orbit_index], point_index);
    cplx out = 0;
    for (size_t j = 0; j < pencil.orbits.size(); ++j) {
        std::vector<cplx> w = ray_values(br, pencil.orbits[j], kind, s, banks[orbit_index],
                                         banks[j]);
        out += delta_eval(pencil, static_cast<int>(j), t) * pencil.orbits[j].r * w[point_index];
    }
    return out;
}

MagooRun uniformity_sweep(SymbolKind kind, const std::vector<RationalOrbit>& orbits,
                          const std::vector<int>& s_list, const UeaElement& u,
                          const UeaElement& v, int samples, uint64_t seed) {
    if (orbits.empty()) throw std::domain_error("uniformity_sweep: empty orbit list");
    if (s_list.empty()) throw std::domain_error("uniformity_sweep: empty s list");
    for (size_t i = 1; i < orbits.size(); ++i)
        if (orbits[i].r < orbits[i - 1].r - 1e-12)
            throw std::domain_error("uniformity_sweep: orbit list must be radius-ordered");

    MagooRun run;
    run.kind = kind;
    run.orbits = orbits;
    run.s_list = s_list;
    run.samples = samples;
    run.seed = seed;
    const int no = static_cast<int>(orbits.size());
    const int ns = static_cast<int>(s_list.size());

    // one level per distinct radius, cumulative
    run.level_of_orbit.resize(no);
    for (int i = 0; i < no; ++i) {
        if (i > 0 && orbits[i].r < orbits[i - 1].r + 1e-12) {
            run.levels.back().push_back(i);
        } else {
            std::vector<int> level = run.levels.empty() ? std::vector<int>{} : run.levels.back();
            level.push_back(i);
            run.levels.push_back(std::move(level));
        }
        run.level_of_orbit[i] = static_cast<int>(run.levels.size()) - 1;
    }
    const int nl = static_cast<int>(run.levels.size());

    // per-level pencils (a singleton level glues trivially)
    std::vector<Pencil> pencils(nl);
    run.pencil_ill.assign(nl, false);
    for (int n = 0; n < nl; ++n) {
        if (run.levels[n].size() < 2) continue;
        std::vector<RationalOrbit> subset;
        for (int idx : run.levels[n]) subset.push_back(orbits[idx]);
        pencils[n] = build_pencil(subset);
        run.pencil_ill[n] = pencils[n].ill_conditioned;
    }

    // sample banks with disjoint seed blocks, plus per-point tau values
    std::vector<OrbitContext> banks;
    banks.reserve(no);
    std::vector<std::vector<double>> tau_vals(no);
    for (int i = 0; i < no; ++i) {
        banks.push_back(make_orbit_context(
            orbits[i], seed + static_cast<uint64_t>(i) * static_cast<uint64_t>(samples), samples));
        tau_vals[i].resize(samples);
        for (int k = 0; k < samples; ++k) tau_vals[i][k] = tau_at(banks[i], k);
    }

    const int d1 = std::max(u.degree(), 0), d2 = std::max(v.degree(), 0);
    run.deg_u = d1;
    run.deg_v = d2;
    const int duv = d1 + d2, dbr = duv - 1;
    const UeaElement uv = multiply(u, v);
    const UeaElement br = commutator(u, v);
    const PolyElement f1_poly = beta_d(u, d1), f2_poly = beta_d(v, d2);
    const PolyElement fbr_poly = dbr >= 0 ? beta_d(br, dbr) : PolyElement();

    std::vector<std::vector<cplx>> f12(no), fbr(no);
    for (int i = 0; i < no; ++i) {
        f12[i].resize(samples);
        fbr[i].resize(samples);
        for (int k = 0; k < samples; ++k) {
            cplx f1 = minus_i_pow(d1) * evaluate_at(f1_poly, banks[i].xcoords[k]);
            cplx f2 = minus_i_pow(d2) * evaluate_at(f2_poly, banks[i].xcoords[k]);
            f12[i][k] = f1 * f2;
            fbr[i][k] = dbr >= 0 ? minus_i_pow(dbr) * evaluate_at(fbr_poly, banks[i].xcoords[k])
                                 : cplx(0, 0);
        }
    }

    const double NaN = std::numeric_limits<double>::quiet_NaN();
    run.prod_defect.assign(nl, std::vector<std::vector<double>>(ns, std::vector<double>(no, NaN)));
    run.bracket_defect = run.prod_defect;
    run.per_orbit_prod.assign(ns, std::vector<double>(no, 0.0));
    run.per_orbit_bracket = run.per_orbit_prod;

    for (int si = 0; si < ns; ++si) {
        const int s = s_list[si];
        // ray x bank value tables for the glue terms
        std::vector<std::vector<std::vector<cplx>>> wuv(no), wbr(no);
        for (int ray = 0; ray < no; ++ray) {
            wuv[ray].resize(no);
            wbr[ray].resize(no);
            for (int bank = 0; bank < no; ++bank) {
                wuv[ray][bank] = ray_values(uv, orbits[ray], kind, s, banks[bank], banks[ray]);
                wbr[ray][bank] = ray_values(br, orbits[ray], kind, s, banks[bank], banks[ray]);
            }
        }
        for (int i = 0; i < no; ++i) {
            const double sr = static_cast<double>(s) * orbits[i].r;
            const double pscale = std::pow(sr, -duv);
            const double bscale = dbr >= 0 ? std::pow(sr, -dbr) : 0.0;
            double dp = 0, db = 0;
            for (int k = 0; k < samples; ++k) {
                dp = std::max(dp, std::abs(pscale * wuv[i][i][k] - f12[i][k]));
                db = std::max(db, std::abs(bscale * wbr[i][i][k] - fbr[i][k]));
            }
            run.per_orbit_prod[si][i] = dp;
            run.per_orbit_bracket[si][i] = db;
        }
        for (int n = 0; n < nl; ++n) {
            const auto& members = run.levels[n];
            for (int i : members) {
                const double sr = static_cast<double>(s) * orbits[i].r;
                const double pscale = std::pow(sr, -duv);
                const double bscale =
                    dbr >= 0 ? std::pow(sr, -dbr) / orbits[i].r : 0.0;
                double dp = 0, db = 0;
                for (int k = 0; k < samples; ++k) {
                    cplx gp = 0, gb = 0;
                    if (members.size() < 2) {
                        gp = wuv[i][i][k];
                        gb = orbits[i].r * wbr[i][i][k];
                    } else {
                        const double t = tau_vals[i][k];
                        for (size_t mj = 0; mj < members.size(); ++mj) {
                            int ray = members[mj];
                            double d = delta_eval(pencils[n], static_cast<int>(mj), t);
                            gp += d * wuv[ray][i][k];
                            gb += d * orbits[ray].r * wbr[ray][i][k];
                        }
                    }
                    dp = std::max(dp, std::abs(pscale * gp - f12[i][k]));
                    db = std::max(db, std::abs(bscale * gb - fbr[i][k]));
                }
                run.prod_defect[n][si][i] = dp;
                run.bracket_defect[n][si][i] = db;
            }
        }
    }

    run.per_orbit_slope.resize(no);
    for (int i = 0; i < no; ++i) {
        std::vector<std::pair<double, double>> pts;
        for (int si = 0; si < ns; ++si)
            pts.emplace_back(static_cast<double>(s_list[si]), run.per_orbit_prod[si][i]);
        run.per_orbit_slope[i] = fit_loglog(pts).slope;
    }
    return run;
}

double restriction_compatibility_gap(const MagooRun& run) {
    double gap = 0;
    const int nl = static_cast<int>(run.levels.size());
    for (int i = 0; i < static_cast<int>(run.orbits.size()); ++i) {
        const int n0 = run.level_of_orbit[i];
        for (int n = n0 + 1; n < nl; ++n)
            for (size_t si = 0; si < run.s_list.size(); ++si) {
                gap = std::max(gap, std::abs(run.prod_defect[n][si][i] -
                                             run.prod_defect[n0][si][i]));
                gap = std::max(gap, std::abs(run.bracket_defect[n][si][i] -
                                             run.bracket_defect[n0][si][i]));
            }
    }
    return gap;
}

double level_vs_per_orbit_gap(const MagooRun& run) {
    double gap = 0;
    for (size_t n = 0; n < run.levels.size(); ++n)
        for (size_t si = 0; si < run.s_list.size(); ++si) {
            double glued_p = 0, own_p = 0, glued_b = 0, own_b = 0;
            for (int i : run.levels[n]) {
                glued_p = std::max(glued_p, run.prod_defect[n][si][i]);
                own_p = std::max(own_p, run.per_orbit_prod[si][i]);
                glued_b = std::max(glued_b, run.bracket_defect[n][si][i]);
                own_b = std::max(own_b, run.per_orbit_bracket[si][i]);
            }
            gap = std::max(gap, std::abs(glued_p - own_p));
            gap = std::max(gap, std::abs(glued_b - own_b));
        }
    return gap;
}

std::vector<double> max_defect_cutoff_curve(const MagooRun& run, int s, DefectChannel channel) {
    auto it = std::find(run.s_list.begin(), run.s_list.end(), s);
    if (it == run.s_list.end())
        throw std::domain_error("max_defect_cutoff_curve: s not in the sweep");
    const size_t si = static_cast<size_t>(it - run.s_list.begin());
    const auto& tensor =
        channel == DefectChannel::Product ? run.prod_defect : run.bracket_defect;
    std::vector<double> curve;
    curve.reserve(run.levels.size());
    for (size_t n = 0; n < run.levels.size(); ++n) {
        double m = 0;
        for (int i : run.levels[n]) m = std::max(m, tensor[n][si][i]);
        curve.push_back(m);
    }
    return curve;
}

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const char* kind_name(SymbolKind kind) {
    return kind == SymbolKind::Berezin ? "berezin" : "scaled_berezin";
}

}  // namespace

std::string orbit_set_csv(const IntegralOrbitSet& set) {
    // every solution of X^2+XY+Y^2 = rho^2 lies on the same sphere, so the r
    // column is common to all rows; compute it from the row's own norm rather
    // than through a primitive-ray reduction
    std::string out = "X,Y,r\n";
    for (const auto& [x, y] : set.solutions) {
        double norm = static_cast<double>(x * x + x * y + y * y);
        out += std::to_string(x) + "," + std::to_string(y) + "," +
               fmt17(std::sqrt(2.0 / 3.0 * norm)) + "\n";
    }
    return out;
}

std::string magoo_run_csv(const MagooRun& run) {
    std::string out = "kind,level,s,orbit_p1,orbit_q1,prod_defect,bracket_defect\n";
    for (size_t n = 0; n < run.levels.size(); ++n)
        for (size_t si = 0; si < run.s_list.size(); ++si)
            for (int i : run.levels[n]) {
                out += std::string(kind_name(run.kind)) + "," + std::to_string(n + 1) + "," +
                       std::to_string(run.s_list[si]) + "," + std::to_string(run.orbits[i].p1) +
                       "," + std::to_string(run.orbits[i].q1) + "," +
                       fmt17(run.prod_defect[n][si][i]) + "," +
                       fmt17(run.bracket_defect[n][si][i]) + "\n";
            }
    return out;
}

std::string magoo_run_json(const MagooRun& run) {
    nlohmann::json j;
    j["kind"] = kind_name(run.kind);
    j["seed"] = run.seed;
    j["samples"] = run.samples;
    j["s_list"] = run.s_list;
    j["deg_u"] = run.deg_u;
    j["deg_v"] = run.deg_v;
    nlohmann::json orbits = nlohmann::json::array();
    for (size_t i = 0; i < run.orbits.size(); ++i)
        orbits.push_back({{"p1", run.orbits[i].p1},
                          {"q1", run.orbits[i].q1},
                          {"r", run.orbits[i].r},
                          {"level", run.level_of_orbit[i] + 1}});
    j["orbits"] = orbits;
    nlohmann::json levels = nlohmann::json::array();
    for (const auto& lvl : run.levels) levels.push_back(lvl);
    j["levels"] = levels;
    j["pencil_ill_conditioned"] = run.pencil_ill;
    auto tensor = [&](const std::vector<std::vector<std::vector<double>>>& t) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& per_level : t) {
            nlohmann::json lvl = nlohmann::json::array();
            for (const auto& per_s : per_level) {
                nlohmann::json row = nlohmann::json::array();
                for (double v : per_s) {
                    if (std::isnan(v))
                        row.push_back(nullptr);
                    else
                        row.push_back(v);
                }
                lvl.push_back(row);
            }
            out.push_back(lvl);
        }
        return out;
    };
    j["prod_defect"] = tensor(run.prod_defect);
    j["bracket_defect"] = tensor(run.bracket_defect);
    j["per_orbit_prod"] = run.per_orbit_prod;
    j["per_orbit_bracket"] = run.per_orbit_bracket;
    j["per_orbit_slope"] = run.per_orbit_slope;
    return j.dump(2);
}

}  // namespace su3
