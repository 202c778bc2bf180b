#include "su3/berezin.hpp"

#include "su3/rational.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace su3 {

namespace {

using cplx = std::complex<double>;

constexpr int kAlgebraicDegreeCap = 4;

// (-i)^d
cplx minus_i_pow(int d) {
    static const cplx table[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    return table[((d % 4) + 4) % 4];
}

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// --- The algebraic route -------------------------------------------------
//
// b[u](Ad_g xi; s) = beta[Ad_{g^-1} u](-i omega(sp1, sq1)). For a word
// e_{j1}..e_{jd} the push is Prod_i (sum_k a(j_i,k) e_k); expanding gives a
// contraction of the tensor V[k1..kd] = beta[nf(e_{k1}..e_{kd})](-i omega)
// against rows of a. At the diagonal evaluation point only the Cartan
// coordinates survive: ell_j(-i omega) = 0 for j <= 6,
// ell_7 = -Q/sqrt2, ell_8 = (2P+Q)/sqrt6 with (P,Q) = (s p1, s q1), so the
// beta value of each normal form is a polynomial in those two numbers whose
// coefficients do not depend on s. Those per-word coefficients are computed
// once per degree; each (P,Q) then fills the tensor with plain arithmetic.

struct WordBeta {
    // c[m7][m8]: coefficient of ell7^m7 * ell8^m8, m7 + m8 <= degree
    std::array<std::array<cplx, 5>, 5> c{};
};

const std::vector<WordBeta>& word_beta_table(int d) {
    static std::vector<WordBeta> tables[kAlgebraicDegreeCap + 1];
    static std::once_flag flags[kAlgebraicDegreeCap + 1];
    std::call_once(flags[d], [d] {
        size_t n = 1;
        for (int i = 0; i < d; ++i) n *= 8;
        std::vector<WordBeta> t(n);
        Word w(d);
        for (size_t idx = 0; idx < n; ++idx) {
            size_t rest = idx;
            for (int pos = d - 1; pos >= 0; --pos) {
                w[pos] = static_cast<uint8_t>(1 + rest % 8);
                rest /= 8;
            }
            const UeaElement nf = normal_order(w);
            for (const auto& [m, coeff] : nf.terms()) {
                bool cartan_only = true;
                for (int j = 0; j < 6; ++j)
                    if (m[j] != 0) cartan_only = false;
                if (!cartan_only) continue;  // ell_j vanishes at the weight
                t[idx].c[m[6]][m[7]] += coeff.to_complex();
            }
        }
        tables[d] = std::move(t);
    });
    return tables[d];
}

// V tensors cached per (degree, P, Q).
const std::vector<cplx>& v_tensor(int d, int P, int Q) {
    static std::map<std::tuple<int, int, int>, std::vector<cplx>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find({d, P, Q});
    if (it != cache.end()) return it->second;

    const auto& table = word_beta_table(d);
    const double l7 = -Q / std::sqrt(2.0);
    const double l8 = (2.0 * P + Q) / std::sqrt(6.0);
    double p7[5], p8[5];
    p7[0] = p8[0] = 1.0;
    for (int i = 1; i <= 4; ++i) {
        p7[i] = p7[i - 1] * l7;
        p8[i] = p8[i - 1] * l8;
    }
    std::vector<cplx> v(table.size());
    for (size_t idx = 0; idx < table.size(); ++idx) {
        cplx acc = 0;
        for (int m7 = 0; m7 <= d; ++m7)
            for (int m8 = 0; m7 + m8 <= d; ++m8) {
                cplx c = table[idx].c[m7][m8];
                if (c != cplx(0, 0)) acc += c * (p7[m7] * p8[m8]);
            }
        v[idx] = acc;
    }
    return cache.emplace(std::tuple{d, P, Q}, std::move(v)).first->second;
}

Word monomial_word(const Mono8& m) {
    Word w;
    for (int j = 0; j < 8; ++j)
        for (int rep = 0; rep < m[j]; ++rep) w.push_back(static_cast<uint8_t>(j + 1));
    return w;
}

// Contract the last tensor axis with row j of a; axes rotate so that after
// deg applications the flat index reads the word left to right.
void contract_axis(std::vector<cplx>& cur, int j, const Matrix8c& a) {
    const size_t n = cur.size() / 8;
    std::vector<cplx> nxt(n);
    for (size_t t = 0; t < n; ++t) {
        cplx acc = 0;
        for (int k = 0; k < 8; ++k) acc += cur[t * 8 + k] * a(j, k);
        nxt[t] = acc;
    }
    cur.swap(nxt);
}

cplx contract_word(const std::vector<cplx>& v, const Word& w, const Matrix8c& a) {
    std::vector<cplx> cur(v);
    for (int pos = static_cast<int>(w.size()) - 1; pos >= 0; --pos)
        contract_axis(cur, w[pos] - 1, a);
    return cur[0];
}

// Evaluation plan for one element at fixed (P,Q): monomials grouped by
// degree, with a per-degree choice between per-word contraction and a full
// index transform (cheaper once a degree has many distinct words).
struct DegreeGroup {
    int d = 0;
    const std::vector<cplx>* v = nullptr;
    std::vector<std::pair<Word, cplx>> words;
    bool use_transform = false;
};

struct EvalPlan {
    std::vector<DegreeGroup> groups;
    cplx constant = 0;  // degree-0 part
};

EvalPlan make_plan(const UeaElement& u, int P, int Q) {
    EvalPlan plan;
    std::map<int, DegreeGroup> by_deg;
    for (const auto& [m, coeff] : u.terms()) {
        int d = mono_degree(m);
        if (d == 0) {
            plan.constant += coeff.to_complex();
            continue;
        }
        if (d > kAlgebraicDegreeCap)
            throw std::domain_error("algebraic symbol route supports degree <= 4");
        auto& grp = by_deg[d];
        grp.d = d;
        grp.words.emplace_back(monomial_word(m), coeff.to_complex());
    }
    for (auto& [d, grp] : by_deg) {
        grp.v = &v_tensor(d, P, Q);
        grp.use_transform = static_cast<int>(grp.words.size()) > 7 * d;
        plan.groups.push_back(std::move(grp));
    }
    return plan;
}

cplx eval_plan(const EvalPlan& plan, const Matrix8c& a) {
    cplx out = plan.constant;
    for (const auto& grp : plan.groups) {
        if (grp.use_transform) {
            std::vector<cplx> w(*grp.v);
            for (int i = 0; i < grp.d; ++i) {
                // transform every axis: W[j...] = sum_k a(j,k) V[...k]
                const size_t n = w.size() / 8;
                std::vector<cplx> nxt(w.size());
                for (int j = 0; j < 8; ++j)
                    for (size_t t = 0; t < n; ++t) {
                        cplx acc = 0;
                        for (int k = 0; k < 8; ++k) acc += w[t * 8 + k] * a(j, k);
                        nxt[j * n + t] = acc;
                    }
                w.swap(nxt);
            }
            size_t base = 1;
            for (int i = 1; i < grp.d; ++i) base *= 8;
            for (const auto& [word, coeff] : grp.words) {
                size_t idx = 0;
                for (uint8_t letter : word) idx = idx * 8 + (letter - 1);
                out += coeff * w[idx];
            }
            (void)base;
        } else {
            for (const auto& [word, coeff] : grp.words)
                out += coeff * contract_word(*grp.v, word, a);
        }
    }
    return out;
}

// --- The operator route --------------------------------------------------

const Irrep& cached_irrep(int P, int Q) {
    static std::map<std::pair<int, int>, Irrep> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find({P, Q});
    if (it == cache.end()) it = cache.emplace(std::pair{P, Q}, build_irrep(P, Q)).first;
    return it->second;
}

cplx route_operator(const UeaElement& u, int P, int Q, const GroupSample& g) {
    const Irrep& ir = cached_irrep(P, Q);
    Eigen::VectorXcd psi = coherent_state(ir, g);
    cplx out = 0;
    for (const auto& [m, coeff] : u.terms())
        out += coeff.to_complex() * psi.dot(apply_monomial(ir, m, psi));
    return out;
}

void check_level(const RaySpec& ray, int s) {
    if (s < 1) throw std::domain_error("symbol level s must be >= 1");
    if (ray.orbit.p1 == 0 && ray.orbit.q1 == 0)
        throw std::domain_error("ray orbit is not initialized");
}

std::vector<cplx> raw_symbol_values(const UeaElement& u, const RaySpec& ray, int s,
                                    const OrbitContext& ctx) {
    const int P = s * ray.orbit.p1, Q = s * ray.orbit.q1;
    EvalPlan plan = make_plan(u, P, Q);
    std::vector<cplx> vals(ctx.bank.size());
    for (size_t i = 0; i < ctx.bank.size(); ++i) vals[i] = eval_plan(plan, ctx.apush[i]);
    return vals;
}

void apply_scaling(std::vector<cplx>& vals, const RaySpec& ray, int s) {
    if (ray.kind != SymbolKind::ScaledBerezin || vals.empty()) return;
    cplx mean = std::accumulate(vals.begin(), vals.end(), cplx(0, 0)) /
                static_cast<double>(vals.size());
    const double f = ray.orbit.r / static_cast<double>(s);
    for (auto& v : vals) v += f * (v - mean);
}

}  // namespace

RaySpec make_ray(int p1, int q1, SymbolKind kind, std::vector<int> s_range) {
    RaySpec ray;
    ray.orbit = rational_orbit(p1, q1);
    ray.kind = kind;
    ray.s_range = std::move(s_range);
    return ray;
}

std::vector<int> s_sequence(int lo, int hi) {
    if (lo < 1 || hi < lo) throw std::domain_error("s_sequence: need 1 <= lo <= hi");
    std::vector<int> out(hi - lo + 1);
    std::iota(out.begin(), out.end(), lo);
    return out;
}

Matrix8c adjoint_push(const GroupSample& g) {
    const auto& e = gt_basis_num();
    Matrix8c a;
    for (int j = 0; j < 8; ++j) {
        Eigen::Matrix3cd pushed = g.defining.adjoint() * e[j] * g.defining;
        for (int k = 0; k < 8; ++k) a(j, k) = (e[k].adjoint() * pushed).trace();
    }
    return a;
}

OrbitContext make_orbit_context(const RationalOrbit& orbit, uint64_t seed, int samples) {
    if (samples < 1) throw std::domain_error("make_orbit_context: need at least one sample");
    OrbitContext ctx;
    ctx.orbit = orbit;
    ctx.seed = seed;
    ctx.bank.reserve(samples);
    ctx.points.reserve(samples);
    ctx.xcoords.reserve(samples);
    ctx.apush.reserve(samples);
    const double chi = tau_on_orbit(orbit);
    const PolyElement& tau = tau_poly();
    for (int i = 0; i < samples; ++i) {
        GroupSample g = sample_group(splitmix64(seed + static_cast<uint64_t>(i)));
        Eigen::Matrix3cd pt = g.defining * orbit.xi * g.defining.adjoint();
        auto x = x_coords(pt);
        double norm2 = 0;
        for (const auto& xk : x) {
            if (std::abs(xk.imag()) > 1e-12)
                throw CertificationError("orbit point has non-real coordinates");
            norm2 += xk.real() * xk.real();
        }
        if (std::abs(norm2 - 1.0) > 1e-12)
            throw CertificationError("orbit point is off the unit sphere");
        cplx tv = evaluate_at(tau, x);
        if (std::abs(tv - cplx(chi, 0)) > 1e-10 * std::max(1.0, std::abs(chi)))
            throw CertificationError("orbit point has the wrong invariant value");
        ctx.apush.push_back(adjoint_push(g));
        ctx.bank.push_back(std::move(g));
        ctx.points.push_back(pt);
        ctx.xcoords.push_back(x);
    }
    return ctx;
}

OrbitSample orbit_sample(const OrbitContext& ctx) {
    OrbitSample s;
    s.orbit = ctx.orbit;
    s.seed = ctx.seed;
    s.points = ctx.points;
    return s;
}

std::complex<double> universal_berezin(const UeaElement& u, const RaySpec& ray, int s,
                                       const GroupSample& g, BerezinRoute route) {
    check_level(ray, s);
    const int P = s * ray.orbit.p1, Q = s * ray.orbit.q1;
    if (route == BerezinRoute::Auto)
        route = (u.degree() <= kAlgebraicDegreeCap) ? BerezinRoute::Algebraic
                                                    : BerezinRoute::Operator;
    if (route == BerezinRoute::Operator) return route_operator(u, P, Q, g);
    EvalPlan plan = make_plan(u, P, Q);
    return eval_plan(plan, adjoint_push(g));
}

SymbolEval eval_symbol(const UeaElement& u, const RaySpec& ray, int s, const OrbitContext& ctx) {
    check_level(ray, s);
    SymbolEval out;
    out.s = s;
    out.values = raw_symbol_values(u, ray, s, ctx);
    apply_scaling(out.values, ray, s);
    return out;
}

std::complex<double> twisted_product_eval(const UeaElement& u, const UeaElement& v,
                                          const RaySpec& ray, int s, const GroupSample& g) {
    if (ray.kind == SymbolKind::ScaledBerezin)
        throw std::invalid_argument(
            "scaled product symbols need a sample bank; use twisted_product_symbol");
    return universal_berezin(multiply(u, v), ray, s, g);
}

SymbolEval twisted_product_symbol(const UeaElement& u, const UeaElement& v, const RaySpec& ray,
                                  int s, const OrbitContext& ctx) {
    return eval_symbol(multiply(u, v), ray, s, ctx);
}

double error_map_eval(const UeaElement& u, const RaySpec& ray, int s, const OrbitContext& ctx) {
    if (ray.kind != SymbolKind::Berezin)
        throw std::invalid_argument("error_map_eval is defined for the plain Berezin kind");
    check_level(ray, s);
    const int d = u.degree();
    if (d < 0) return 0.0;
    const PolyElement top = beta_d(u, d);
    const cplx phase = minus_i_pow(d);
    const double sr = static_cast<double>(s) * ray.orbit.r;
    const double scale = std::pow(sr, -d);
    std::vector<cplx> b = raw_symbol_values(u, ray, s, ctx);
    double sup = 0.0;
    for (int i = 0; i < ctx.size(); ++i) {
        cplx f = phase * evaluate_at(top, ctx.xcoords[i]);
        sup = std::max(sup, std::abs(scale * b[i] - f));
    }
    return sup;
}

std::vector<PoissonRow> poisson_diagnostics(const UeaElement& u, const UeaElement& v,
                                            const RaySpec& ray, const OrbitContext& ctx) {
    if (ray.s_range.empty()) throw std::domain_error("poisson_diagnostics: empty s_range");
    const int d1 = std::max(u.degree(), 0), d2 = std::max(v.degree(), 0);
    const UeaElement uv = multiply(u, v);
    const UeaElement br = commutator(u, v);
    const int dbr = d1 + d2 - 1;
    const PolyElement fbr_poly = dbr >= 0 ? beta_d(br, dbr) : PolyElement();
    const PolyElement f1_poly = beta_d(u, d1), f2_poly = beta_d(v, d2);

    const int n = ctx.size();
    std::vector<cplx> f12(n), fbr(n);
    for (int i = 0; i < n; ++i) {
        cplx f1 = minus_i_pow(d1) * evaluate_at(f1_poly, ctx.xcoords[i]);
        cplx f2 = minus_i_pow(d2) * evaluate_at(f2_poly, ctx.xcoords[i]);
        f12[i] = f1 * f2;
        fbr[i] = dbr >= 0 ? minus_i_pow(dbr) * evaluate_at(fbr_poly, ctx.xcoords[i]) : cplx(0, 0);
    }

    std::vector<PoissonRow> rows;
    rows.reserve(ray.s_range.size());
    for (int s : ray.s_range) {
        check_level(ray, s);
        const double sr = static_cast<double>(s) * ray.orbit.r;
        std::vector<cplx> wuv = raw_symbol_values(uv, ray, s, ctx);
        std::vector<cplx> wbr = raw_symbol_values(br, ray, s, ctx);
        apply_scaling(wuv, ray, s);
        apply_scaling(wbr, ray, s);
        PoissonRow row;
        row.s = s;
        row.s_times_r = sr;
        const double pscale = std::pow(sr, -(d1 + d2));
        const double bscale = dbr >= 0 ? std::pow(sr, -dbr) : 0.0;
        for (int i = 0; i < n; ++i) {
            row.prod_defect = std::max(row.prod_defect, std::abs(pscale * wuv[i] - f12[i]));
            row.bracket_defect =
                std::max(row.bracket_defect, std::abs(bscale * wbr[i] - fbr[i]));
        }
        rows.push_back(row);
    }
    return rows;
}

SlopeFit fit_loglog(const std::vector<std::pair<double, double>>& s_and_defect) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& [s, d] : s_and_defect)
        if (s > 0 && d > 0 && std::isfinite(d)) pts.emplace_back(std::log(s), std::log(d));
    SlopeFit fit;
    fit.n_used = static_cast<int>(pts.size());
    if (fit.n_used < 2) {
        fit.slope = fit.intercept = fit.stderr_slope = std::nan("");
        return fit;
    }
    double sx = 0, sy = 0;
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
    }
    const double mx = sx / fit.n_used, my = sy / fit.n_used;
    double sxx = 0, sxy = 0;
    for (const auto& [x, y] : pts) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (fit.n_used > 2) {
        double ssr = 0;
        for (const auto& [x, y] : pts) {
            double rres = y - (fit.intercept + fit.slope * x);
            ssr += rres * rres;
        }
        fit.stderr_slope = std::sqrt(ssr / (fit.n_used - 2) / sxx);
    }
    return fit;
}

double characteristic_number(int p, int n) {
    if (n < 0 || p < 0 || n > p)
        throw std::domain_error("characteristic_number: need 0 <= n <= p");
    auto binom = [](int a, int b) {
        Int num = 1, den = 1;
        for (int i = 0; i < b; ++i) {
            num *= (a - i);
            den *= (i + 1);
        }
        return Rational(num, den);
    };
    Rational ratio = binom(p, n) / binom(p + n + 2, n);
    return std::sqrt(rat_double(ratio));
}

LadderCouplings ladder_couplings(int p, int n) {
    if (n < 1 || n >= p) throw std::domain_error("ladder_couplings: need 1 <= n < p");
    const double pp = static_cast<double>(p);
    const double root = std::sqrt(pp * (pp + 1) * (pp + 2) * (pp + 3));
    const double sign = (p % 2 == 0) ? 1.0 : -1.0;
    LadderCouplings c;
    c.x_n = sign * (2.0 * n * (n + 2)) / ((2.0 * n + 1) * (2.0 * n + 3)) * (2.0 * pp + 3) / root;
    c.y_n = sign * 3.0 * std::sqrt(static_cast<double>((n + 1) * (n + 2))) / (2.0 * n + 3) *
            std::sqrt((pp + n + 3) * (pp - n) / (pp * (pp + 1) * (pp + 2) * (pp + 3)));
    return c;
}

CharNumberReport char_number_limit_check(int p_max, int n_max) {
    if (p_max < 1 || n_max < 0 || n_max > p_max)
        throw std::domain_error("char_number_limit_check: need 1 <= p_max and 0 <= n_max <= p_max");
    CharNumberReport rep;
    rep.p_max = p_max;
    rep.n_max = n_max;
    rep.all_pass = true;
    for (int n = 0; n <= n_max; ++n) {
        CharNumberRow row;
        row.n = n;
        row.b_at_pmax = characteristic_number(p_max, n);
        row.scaled_gap = p_max * (row.b_at_pmax - 1.0);
        row.target = -0.5 * n * (n + 2);
        // Tolerance is measured against the limit constant; the finite-size
        // correction of the scaled gap is [3n(n+2)/4 + n^2(n+2)^2/8]/p, so an
        // absolute band of 0.05 would need p ~ 2000 at n = 4.
        row.pass = std::abs(row.scaled_gap - row.target) <=
                   rep.tolerance * std::max(1.0, std::abs(row.target));
        rep.all_pass = rep.all_pass && row.pass;
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace su3
