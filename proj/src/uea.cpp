#include "su3/uea.hpp"

#include <algorithm>
#include <mutex>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace su3 {

UeaElement UeaElement::scalar(const GaussQuad& c) {
    UeaElement u;
    u.add_term(Mono8{}, c);
    return u;
}

UeaElement UeaElement::generator(int j) {
    if (j < 1 || j > 8) throw std::domain_error("UeaElement::generator: index out of range");
    Mono8 m{};
    m[j - 1] = 1;
    return monomial(m, GaussQuad(1));
}

UeaElement UeaElement::monomial(const Mono8& m, const GaussQuad& c) {
    UeaElement u;
    u.add_term(m, c);
    return u;
}

UeaElement UeaElement::from_matrix(const Mat3q& X) {
    auto coeff = expand_gt(X);
    UeaElement u;
    for (int j = 0; j < 8; ++j) {
        Mono8 m{};
        m[j] = 1;
        u.add_term(m, coeff[j]);
    }
    return u;
}

int UeaElement::degree() const {
    return terms_.empty() ? -1 : mono_degree(terms_.begin()->first);
}

void UeaElement::add_term(const Mono8& m, const GaussQuad& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

UeaElement UeaElement::operator-() const {
    UeaElement u;
    for (const auto& [m, c] : terms_) u.terms_.emplace(m, -c);
    return u;
}

UeaElement operator+(const UeaElement& u, const UeaElement& v) {
    UeaElement out = u;
    for (const auto& [m, c] : v.terms_) out.add_term(m, c);
    return out;
}

UeaElement operator-(const UeaElement& u, const UeaElement& v) {
    UeaElement out = u;
    for (const auto& [m, c] : v.terms_) out.add_term(m, -c);
    return out;
}

UeaElement operator*(const GaussQuad& s, const UeaElement& u) {
    UeaElement out;
    if (s.is_zero()) return out;
    for (const auto& [m, c] : u.terms()) out.add_term(m, s * c);
    return out;
}

std::string UeaElement::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += "(";
        out += c.str();
        out += ")*";
        out += mono_str(m, 'e');
    }
    return out;
}

namespace {

void validate_word(const Word& w) {
    for (uint8_t j : w)
        if (j < 1 || j > 8) throw std::domain_error("normal_order: generator index out of range");
}

UeaElement word_monomial(const Word& w) {
    Mono8 m{};
    for (uint8_t j : w) m[j - 1] += 1;
    return UeaElement::monomial(m, GaussQuad(1));
}

struct WordHash {
    size_t operator()(const Word& w) const {
        size_t h = 1469598103934665603ull;
        for (uint8_t v : w) {
            h ^= v;
            h *= 1099511628211ull;
        }
        return h;
    }
};

std::unordered_map<Word, UeaElement, WordHash>& nf_cache() {
    static std::unordered_map<Word, UeaElement, WordHash> cache;
    return cache;
}
std::mutex g_nf_mutex;

// [e_a, e_b] as a degree-<=1 element, 1-based a,b.
const UeaElement& pair_bracket(int a, int b) {
    static const auto table = [] {
        std::array<std::array<UeaElement, 8>, 8> t;
        const auto& sc = structure_constants(BasisTag::GT);
        for (int j = 0; j < 8; ++j)
            for (int k = 0; k < 8; ++k)
                for (const auto& [l, coeff] : sc.bracket(j, k)) {
                    Mono8 m{};
                    m[l] = 1;
                    t[j][k].add_term(m, GaussQuad(coeff));
                }
        return t;
    }();
    return table[a - 1][b - 1];
}

UeaElement word_nf(const Word& w);

UeaElement accumulate_rewrite(const Word& w, size_t i) {
    // Rewrite the inversion at position i: w[i] > w[i+1].
    Word swapped = w;
    std::swap(swapped[i], swapped[i + 1]);
    UeaElement out = word_nf(swapped);
    // Bracket terms are always single generators for a Lie algebra.
    const UeaElement& br = pair_bracket(w[i], w[i + 1]);
    for (const auto& [m, c] : br.terms()) {
        Word shorter;
        shorter.reserve(w.size() - 1);
        shorter.insert(shorter.end(), w.begin(), w.begin() + i);
        int l = 0;
        while (m[l] == 0) ++l;
        shorter.push_back(static_cast<uint8_t>(l + 1));
        shorter.insert(shorter.end(), w.begin() + i + 2, w.end());
        out = out + c * word_nf(shorter);
    }
    return out;
}

UeaElement word_nf(const Word& w) {
    {
        std::lock_guard<std::mutex> lock(g_nf_mutex);
        auto it = nf_cache().find(w);
        if (it != nf_cache().end()) return it->second;
    }
    // Rightmost inversion first.
    UeaElement result;
    bool ordered = true;
    for (size_t i = w.size(); i-- > 1;) {
        if (w[i - 1] > w[i]) {
            result = accumulate_rewrite(w, i - 1);
            ordered = false;
            break;
        }
    }
    if (ordered) result = word_monomial(w);
    {
        std::lock_guard<std::mutex> lock(g_nf_mutex);
        nf_cache().emplace(w, result);
    }
    return result;
}

}  // namespace

UeaElement normal_order(const Word& word) {
    validate_word(word);
    return word_nf(word);
}

UeaElement normal_order_randomized(const Word& word, uint64_t seed) {
    validate_word(word);
    std::mt19937_64 rng(seed);
    // Non-memoized recursive rewriting with a random inversion choice.
    struct Rec {
        std::mt19937_64& rng;
        UeaElement run(const Word& w) {
            std::vector<size_t> inversions;
            for (size_t i = 0; i + 1 < w.size(); ++i)
                if (w[i] > w[i + 1]) inversions.push_back(i);
            if (inversions.empty()) return word_monomial(w);
            size_t i = inversions[std::uniform_int_distribution<size_t>(0, inversions.size() - 1)(rng)];
            Word swapped = w;
            std::swap(swapped[i], swapped[i + 1]);
            UeaElement out = run(swapped);
            for (const auto& [m, c] : pair_bracket(w[i], w[i + 1]).terms()) {
                Word shorter(w.begin(), w.begin() + i);
                int l = 0;
                while (m[l] == 0) ++l;
                shorter.push_back(static_cast<uint8_t>(l + 1));
                shorter.insert(shorter.end(), w.begin() + i + 2, w.end());
                out = out + c * run(shorter);
            }
            return out;
        }
    } rec{rng};
    return rec.run(word);
}

namespace {

Word monomial_word(const Mono8& m) {
    Word w;
    w.reserve(mono_degree(m));
    for (int j = 0; j < 8; ++j)
        for (int e = 0; e < m[j]; ++e) w.push_back(static_cast<uint8_t>(j + 1));
    return w;
}

}  // namespace

UeaElement multiply(const UeaElement& u, const UeaElement& v) {
    UeaElement out;
    for (const auto& [mu, cu] : u.terms()) {
        Word wu = monomial_word(mu);
        for (const auto& [mv, cv] : v.terms()) {
            Word w = wu;
            Word wv = monomial_word(mv);
            w.insert(w.end(), wv.begin(), wv.end());
            UeaElement nf = word_nf(w);
            GaussQuad scale = cu * cv;
            for (const auto& [m, c] : nf.terms()) out.add_term(m, scale * c);
        }
    }
    return out;
}

UeaElement commutator(const UeaElement& u, const UeaElement& v) {
    return multiply(u, v) - multiply(v, u);
}

UeaElement project_degree(const UeaElement& u, int d) {
    if (d < 0) throw std::domain_error("project_degree: negative degree");
    UeaElement out;
    for (const auto& [m, c] : u.terms())
        if (mono_degree(m) == d) out.add_term(m, c);
    return out;
}

const PolyElement& ell(int j) {
    if (j < 1 || j > 8) throw std::domain_error("ell: index out of range");
    static const std::array<PolyElement, 8> forms = [] {
        std::array<PolyElement, 8> f;
        const auto& P = gt_gm_pairing();
        for (int a = 0; a < 8; ++a)
            for (int k = 0; k < 8; ++k) {
                Mono8 m{};
                m[k] = 1;
                f[a].add_term(m, P[a][k]);
            }
        return f;
    }();
    return forms[j - 1];
}

PolyElement beta(const UeaElement& u) {
    PolyElement out;
    for (const auto& [m, c] : u.terms()) {
        PolyElement term = PolyElement::constant(GaussQuad(1));
        for (int j = 0; j < 8; ++j)
            for (int e = 0; e < m[j]; ++e) term = pointwise_mul(term, ell(j + 1));
        out = out + c * term;
    }
    return out;
}

PolyElement beta_d(const UeaElement& u, int d) { return beta(project_degree(u, d)); }

PolyElement beta_top(const UeaElement& u) {
    if (u.is_zero()) return PolyElement();
    return beta_d(u, u.degree());
}

UeaElement symmetrize(const PolyElement& f) {
    // x_k = sum_j Pinv[k][j] l_j.
    static const std::array<PolyElement, 8>* subst = [] {
        auto* s = new std::array<PolyElement, 8>;
        const auto& Pinv = gt_gm_pairing_inv();
        for (int k = 0; k < 8; ++k)
            for (int j = 0; j < 8; ++j) {
                Mono8 m{};
                m[j] = 1;
                (*s)[k].add_term(m, Pinv[k][j]);
            }
        return s;
    }();

    // Re-express f as a polynomial whose variables mean l_1..l_8.
    PolyElement in_l;
    for (const auto& [m, c] : f.terms()) {
        PolyElement term = PolyElement::constant(c);
        for (int k = 0; k < 8; ++k)
            for (int e = 0; e < m[k]; ++e) term = pointwise_mul(term, (*subst)[k]);
        in_l = in_l + term;
    }

    UeaElement out;
    for (const auto& [alpha, c] : in_l.terms()) {
        int d = mono_degree(alpha);
        if (d == 0) {
            out.add_term(Mono8{}, c);
            continue;
        }
        // Each distinct arrangement of the multiset word appears prod(alpha_j!)
        // times among the d! orderings.
        Rational weight(1);
        for (int j = 0; j < 8; ++j)
            for (int e = 2; e <= alpha[j]; ++e) weight *= e;
        for (int e = 2; e <= d; ++e) weight /= e;
        GaussQuad factor = c * GaussQuad(QuadScalar(weight));

        Word w = monomial_word(alpha);  // sorted ascending
        do {
            UeaElement nf = word_nf(w);
            for (const auto& [m, cc] : nf.terms()) out.add_term(m, factor * cc);
        } while (std::next_permutation(w.begin(), w.end()));
    }
    return out;
}

const UeaElement& cubic_casimir() {
    static const UeaElement cas = symmetrize(tau_poly());
    return cas;
}

}  // namespace su3
