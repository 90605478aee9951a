#pragma once

#include "otlab/errors.hpp"
#include "otlab/numeric.hpp"
#include "otlab/units.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace otlab {

using Mask = std::uint64_t;

inline int popcount(Mask m) { return std::popcount(m); }

/// Bit i of a de Rham mask is embedding i+1 (range 1..s+2t). A Dolbeault pair
/// (I, J) has I over embeddings 1..s+t and bit j of J meaning embedding s+j+1.
struct RelationSet {
    int s = 0;
    int t = 0;
    std::vector<Mask> derham;                      // sorted, includes the empty set
    std::vector<std::pair<Mask, Mask>> dolbeault;  // sorted, includes (0, 0)
    std::vector<int> rho;                          // rho[m], m = 0..s+2t
    std::vector<std::vector<int>> rho_pm;          // rho_pm[p][m], p = 0..s+t, m = 0..t
    std::vector<std::string> ambiguity_flags;

    bool certified() const { return ambiguity_flags.empty(); }
    int dim() const { return s + t; }

    int rho_at(int m) const { return m >= 0 && m < static_cast<int>(rho.size()) ? rho[m] : 0; }
    int rho_pm_at(int p, int m) const {
        if (p < 0 || m < 0 || p >= static_cast<int>(rho_pm.size()) || m >= static_cast<int>(rho_pm[p].size()))
            return 0;
        return rho_pm[p][m];
    }

    /// Swaps complex embedding s+j with its conjugate s+t+j.
    Mask conjugate(Mask m) const {
        Mask out = m & ((Mask(1) << s) - 1);
        for (int j = 0; j < t; ++j) {
            if (m >> (s + j) & 1)
                out |= Mask(1) << (s + t + j);
            if (m >> (s + t + j) & 1)
                out |= Mask(1) << (s + j);
        }
        return out;
    }

    /// De Rham index set of a Dolbeault pair: I together with J shifted by t.
    Mask to_derham(Mask i, Mask j) const { return i | (j << (s + t)); }
    std::pair<Mask, Mask> to_dolbeault(Mask d) const {
        Mask low = d & ((Mask(1) << (s + t)) - 1);
        return {low, d >> (s + t)};
    }

    void recount() {
        std::sort(derham.begin(), derham.end());
        std::sort(dolbeault.begin(), dolbeault.end());
        rho.assign(s + 2 * t + 1, 0);
        for (Mask m : derham)
            ++rho[popcount(m)];
        rho_pm.assign(s + t + 1, std::vector<int>(t + 1, 0));
        for (auto& [i, j] : dolbeault)
            ++rho_pm[popcount(i)][popcount(j)];
    }

    /// Builds a set from explicit de Rham relations (the empty set is added);
    /// the Dolbeault part is obtained by re-indexing.
    static RelationSet from_derham(int s, int t, std::vector<Mask> relations) {
        RelationSet r;
        r.s = s;
        r.t = t;
        if (std::find(relations.begin(), relations.end(), Mask(0)) == relations.end())
            relations.push_back(0);
        r.derham = std::move(relations);
        for (Mask m : r.derham)
            r.dolbeault.push_back(r.to_dolbeault(m));
        r.recount();
        return r;
    }
};

/// 1-based index list of a mask, e.g. "{1,2,3}".
inline std::string mask_to_string(Mask m, int offset = 1) {
    std::string out = "{";
    bool first = true;
    for (int i = 0; i < 64; ++i)
        if (m >> i & 1) {
            out += (first ? "" : ",") + std::to_string(i + offset);
            first = false;
        }
    return out + "}";
}

inline std::vector<int> mask_to_indices(Mask m, int offset = 1) {
    std::vector<int> out;
    for (int i = 0; i < 64; ++i)
        if (m >> i & 1)
            out.push_back(i + offset);
    return out;
}

inline constexpr int kMaxEnumerationIndices = 24;

namespace detail {

/// Decides which products of characters are 1 on every generator. `factor(i, j)`
/// returns the value of factor i (0-based) on generator j.
template <class Factor>
std::vector<Mask> enumerate_trivial_products(const UnitSystem& u, int count, Factor factor,
                                             std::vector<std::string>& flags, const std::string& label) {
    const int gens = u.rank();
    PrecisionScope scope(u.tol.bits);
    std::vector<std::vector<Cplx>> values(count, std::vector<Cplx>(gens));
    std::vector<std::vector<double>> logs(count, std::vector<double>(gens)), args(count, std::vector<double>(gens));
    for (int i = 0; i < count; ++i)
        for (int j = 0; j < gens; ++j) {
            values[i][j] = factor(i, j);
            logs[i][j] = static_cast<double>(boost::multiprecision::log(abs(values[i][j])));
            args[i][j] = static_cast<double>(arg(values[i][j]));
        }

    // The double screen can only reject; candidates are confirmed at full precision.
    const bool screen = u.tol.sqrt_eps_double() < 1e-8;
    const double screen_gap = 1e-6;
    constexpr double two_pi = 6.283185307179586476925;

    std::vector<Mask> found{0};
    std::vector<double> lsum(gens, 0.0), asum(gens, 0.0);
    const Mask total = Mask(1) << count;
    Mask gray = 0;
    for (Mask step = 1; step < total; ++step) {
        int bit = std::countr_zero(step);
        gray ^= Mask(1) << bit;
        double sign = (gray >> bit & 1) ? 1.0 : -1.0;
        for (int j = 0; j < gens; ++j) {
            lsum[j] += sign * logs[bit][j];
            asum[j] += sign * args[bit][j];
        }
        if (screen) {
            bool reject = false;
            for (int j = 0; j < gens && !reject; ++j) {
                double a = std::remainder(asum[j], two_pi);
                reject = std::abs(lsum[j]) > screen_gap || std::abs(a) > screen_gap;
            }
            if (reject)
                continue;
        }
        bool all_equal = true, ambiguous = false;
        for (int j = 0; j < gens && all_equal; ++j) {
            Cplx prod(Real(1));
            for (int i = 0; i < count; ++i)
                if (gray >> i & 1)
                    prod *= values[i][j];
            switch (classify_distance(abs(prod - Cplx(Real(1))), u.tol)) {
            case Closeness::Equal: break;
            case Closeness::Distinct: all_equal = false; break;
            case Closeness::Ambiguous:
                ambiguous = true;
                all_equal = false;
                break;
            }
        }
        if (ambiguous)
            flags.push_back(label + " " + mask_to_string(gray));
        else if (all_equal)
            found.push_back(gray);
    }
    std::sort(found.begin(), found.end());
    return found;
}

} // namespace detail

/// All I in {1..s+2t} with prod_{i in I} sigma_i = 1 on U.
inline RelationSet enumerate_derham_relations(const UnitSystem& u) {
    const int s = u.s(), t = u.t(), n = s + 2 * t;
    if (n > kMaxEnumerationIndices)
        fail(ErrorKind::EnumerationTooLarge, std::to_string(n) + " embeddings exceed " +
                                                 std::to_string(kMaxEnumerationIndices));
    RelationSet r;
    r.s = s;
    r.t = t;
    r.derham = detail::enumerate_trivial_products(
        u, n, [&](int i, int j) { return u.sigma(i + 1, j); }, r.ambiguity_flags, "derham");
    r.recount();
    return r;
}

/// All (I, J), I in {1..s+t}, J in {s+1..s+t}, with sigma_I conj(sigma_J) = 1 on U.
inline RelationSet enumerate_dolbeault_relations(const UnitSystem& u) {
    const int s = u.s(), t = u.t(), n = s + 2 * t;
    if (n > kMaxEnumerationIndices)
        fail(ErrorKind::EnumerationTooLarge, std::to_string(n) + " embeddings exceed " +
                                                 std::to_string(kMaxEnumerationIndices));
    RelationSet r;
    r.s = s;
    r.t = t;
    // Factors 0..s+t-1 are sigma_1..sigma_{s+t}; factor s+t+j is conj(sigma_{s+j+1}).
    auto masks = detail::enumerate_trivial_products(
        u, n,
        [&](int i, int j) { return i < s + t ? u.sigma(i + 1, j) : conj(u.sigma(s + (i - s - t) + 1, j)); },
        r.ambiguity_flags, "dolbeault");
    for (Mask m : masks)
        r.dolbeault.push_back({m & ((Mask(1) << (s + t)) - 1), m >> (s + t)});
    r.recount();
    return r;
}

/// Both parts in one set.
inline RelationSet enumerate_relations(const UnitSystem& u) {
    RelationSet r = enumerate_derham_relations(u);
    RelationSet d = enumerate_dolbeault_relations(u);
    r.dolbeault = std::move(d.dolbeault);
    r.ambiguity_flags.insert(r.ambiguity_flags.end(), d.ambiguity_flags.begin(), d.ambiguity_flags.end());
    r.recount();
    return r;
}

struct RelationStructure {
    Verdict verdict = Verdict::Fails;
    std::string witness;
    std::vector<Mask> triples;
};

/// Exactly s length-3 relations, pairwise disjoint, covering every index, each
/// of the form {k, s+j, s+t+j}.
inline RelationStructure pluriclosed_relation_structure(const RelationSet& r, int s, int t) {
    RelationStructure out;
    for (Mask m : r.derham)
        if (popcount(m) == 3)
            out.triples.push_back(m);
    if (static_cast<int>(out.triples.size()) != s) {
        out.witness = std::to_string(out.triples.size()) + " length-3 relations, expected " + std::to_string(s);
        return out;
    }
    Mask seen = 0;
    for (Mask m : out.triples) {
        if (seen & m) {
            out.witness = "relations overlap at " + mask_to_string(seen & m);
            return out;
        }
        seen |= m;
        Mask real = m & ((Mask(1) << s) - 1);
        Mask cpx = m >> s;
        bool shape = popcount(real) == 1 && popcount(cpx) == 2;
        if (shape) {
            int lo = std::countr_zero(cpx);
            shape = lo < t && (cpx >> (lo + t) & 1) && popcount(cpx) == 2;
        }
        if (!shape) {
            out.witness = "relation " + mask_to_string(m) + " is not of the form {k, s+j, s+t+j}";
            return out;
        }
    }
    const Mask all = (Mask(1) << (s + 2 * t)) - 1;
    if (seen != all) {
        out.witness = "relations miss indices " + mask_to_string(all & ~seen);
        return out;
    }
    out.verdict = Verdict::Holds;
    out.witness = "disjoint triples";
    for (Mask m : out.triples)
        out.witness += " " + mask_to_string(m);
    return out;
}

} // namespace otlab
