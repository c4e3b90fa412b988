#pragma once

/**
 * @file motives.hpp
 * @brief Upper motives of flag varieties and the decision procedures on them.
 *
 * Normal form. The upper p-motive of an anisotropic X(d_1,...,d_k; A) is
 * M_{u,D}, the upper summand of X(p^u; D), where u = v_p(gcd d_i) and D is
 * the division algebra of the p-primary part A_p. M_{u,D} only depends on
 * u and the cyclic subgroup <[D]>, so UpperMotive stores the level u, one
 * generator and the subgroup it generates. An isotropic X has the Tate
 * motive as upper motive.
 *
 * Two independent routes decide isomorphism:
 *
 * - motives_isomorphic: equal levels and equal subgroups.
 * - oracle_isomorphic: mutual isotropy over function fields, decided with
 *   the index reduction formula
 *
 *       ind(D over F(X(p^k; D'))) = gcd_{1<=j<=p^n} mu_{k,j} = min_j mu_{k,j},
 *       mu_{k,j} = p^k / gcd(j, p^k) * ind(D - j D'),
 *
 *   together with equality of the dimensions p^k (p^n - p^k) of the
 *   underlying p-incompressible varieties.
 */

#include <optional>
#include <string>
#include <vector>

#include "flagmot/brauer.hpp"
#include "flagmot/varieties.hpp"

namespace flagmot {

class UpperMotive {
public:
    struct Upper {
        Nat p;
        Nat level;
        BrauerClass gen;
        std::vector<BrauerClass> subgroup;  // sorted elements of <gen>
    };

    static UpperMotive tate() { return UpperMotive(); }

    /// M_{level, gen}; gen must be p-primary of index p^n with level < n.
    static UpperMotive upper(Nat p, Nat level, BrauerClass gen) {
        require_prime(p);
        if (!is_p_primary(gen, p)) throw DomainError("generator " + gen.str() + " is not p-primary");
        const Nat n = v_p(index(gen), p);
        if (level < 0 || level >= n) {
            throw DomainError("level " + std::to_string(level) + " must lie in [0, " + std::to_string(n) + ")");
        }
        std::vector<BrauerClass> sub;
        const Nat e = exponent(gen);
        sub.reserve(static_cast<std::size_t>(e));
        for (Nat t = 0; t < e; ++t) sub.push_back(combine(gen, t));
        std::sort(sub.begin(), sub.end());
        UpperMotive m;
        m.upper_ = Upper{p, level, std::move(gen), std::move(sub)};
        return m;
    }

    bool is_tate() const { return !upper_.has_value(); }

    const Upper& upper_data() const {
        if (!upper_) throw DomainError("the Tate motive has no upper data");
        return *upper_;
    }

    Nat p() const { return upper_data().p; }
    Nat level() const { return upper_data().level; }
    const BrauerClass& gen() const { return upper_data().gen; }
    const std::vector<BrauerClass>& subgroup() const { return upper_data().subgroup; }
    /// v_p of the index of the generator.
    Nat n() const { return v_p(index(gen()), p()); }

    std::string str() const {
        if (is_tate()) return "Tate";
        return "M{level=" + std::to_string(level()) + ", gen=" + gen().str() + "}";
    }

private:
    UpperMotive() = default;
    std::optional<Upper> upper_;
};

struct MuProfile {
    Nat k = 0;
    std::vector<Nat> values;  // values[j - 1] = mu_{k,j}, j = 1..p^n

    Nat at(Nat j) const { return values.at(static_cast<std::size_t>(j - 1)); }
};

namespace detail {

inline void require_mu_inputs(const BrauerClass& d, const BrauerClass& dp, Nat k, Nat p) {
    require_prime(p);
    require_same_model(d, dp);
    if (!is_p_primary(d, p)) throw DomainError("class " + d.str() + " is not p-primary");
    if (!is_p_primary(dp, p)) throw DomainError("class " + dp.str() + " is not p-primary");
    if (k < 0) throw DomainError("k must be >= 0");
    const Nat n = v_p(index(dp), p);
    if (k > n) {
        throw DomainError("k = " + std::to_string(k) + " exceeds v_p(ind D') = " + std::to_string(n));
    }
}

inline bool is_power_of(Nat x, Nat p) {
    if (x < 1) return false;
    while (x % p == 0) x /= p;
    return x == 1;
}

}  // namespace detail

/// mu_{k,j} = p^k / gcd(j, p^k) * ind(D - j D').
inline Nat mu(Nat k, Nat j, const BrauerClass& d, const BrauerClass& dp, Nat p) {
    detail::require_mu_inputs(d, dp, k, p);
    if (j < 1) throw DomainError("j must be >= 1");
    const Nat pk = ipow(p, k);
    return checked_mul(pk / gcd(j, pk), index(tensor(d, combine(dp, -j))));
}

/// The mu_{k,j} for j = 1..p^n where ind D' = p^n.
inline MuProfile mu_profile(const BrauerClass& d, Nat k, const BrauerClass& dp, Nat p) {
    detail::require_mu_inputs(d, dp, k, p);
    const Nat pn = index(dp);
    MuProfile prof{k, {}};
    prof.values.reserve(static_cast<std::size_t>(pn));
    for (Nat j = 1; j <= pn; ++j) prof.values.push_back(mu(k, j, d, dp, p));
    return prof;
}

struct IndexReduction {
    MuProfile profile;
    Nat reduced = 1;
};

/**
 * Index of D over the function field of X(p^k; D'), with its mu profile.
 * Raises InternalInvariantError if gcd != min, a mu value is not a p-power,
 * or the result does not divide ind D.
 */
inline IndexReduction index_reduction_detail(const BrauerClass& d, Nat k, const BrauerClass& dp, Nat p) {
    detail::require_mu_inputs(d, dp, k, p);
    if (index(dp) == 1) throw DomainError("index reduction needs a non-split D'");
    IndexReduction r{mu_profile(d, k, dp, p), 0};
    Nat g = 0;
    Nat mn = 0;
    for (Nat v : r.profile.values) {
        if (!detail::is_power_of(v, p)) {
            throw InternalInvariantError("mu value " + std::to_string(v) + " is not a power of p");
        }
        g = gcd(g, v);
        mn = mn == 0 ? v : std::min(mn, v);
    }
    if (g != mn) {
        throw InternalInvariantError("index reduction: gcd " + std::to_string(g) + " != min " +
                                     std::to_string(mn));
    }
    if (index(d) % g != 0) {
        throw InternalInvariantError("reduced index " + std::to_string(g) + " does not divide ind D = " +
                                     std::to_string(index(d)));
    }
    r.reduced = g;
    return r;
}

inline Nat index_reduction(const BrauerClass& d, Nat k, const BrauerClass& dp, Nat p) {
    return index_reduction_detail(d, k, dp, p).reduced;
}

inline UpperMotive upper_motive_of(const FlagVariety& x, Nat p) {
    if (is_isotropic(x, p)) return UpperMotive::tate();
    return UpperMotive::upper(p, x.level(p), p_primary(x.algebra().cls(), p));
}

namespace detail {

inline void require_comparable(const UpperMotive& m, const UpperMotive& n) {
    if (m.is_tate() || n.is_tate()) return;
    if (m.p() != n.p()) throw DomainError("motives for different primes");
    require_same_model(m.gen(), n.gen());
}

}  // namespace detail

/// Tate ~ Tate; Upper ~ Upper iff equal levels and <gen> = <gen'>.
inline bool motives_isomorphic(const UpperMotive& m, const UpperMotive& n) {
    detail::require_comparable(m, n);
    if (m.is_tate() || n.is_tate()) return m.is_tate() && n.is_tate();
    return m.level() == n.level() && same_subgroup(m.gen(), n.gen());
}

/**
 * Mutual-isotropy route. For M_{k,D} and M_{l,D'}:
 *   v_p(ind D over F(X(p^l; D'))) <= k,
 *   v_p(ind D' over F(X(p^k; D))) <= l,
 *   dim X(p^k; D) = dim X(p^l; D').
 * The Tate motive is the motive of the point, over whose function field
 * nothing changes, so it is only isomorphic to itself.
 */
inline bool oracle_isomorphic(const UpperMotive& m, const UpperMotive& n) {
    detail::require_comparable(m, n);
    if (m.is_tate() || n.is_tate()) return m.is_tate() && n.is_tate();
    const Nat p = m.p();
    const Nat k = m.level();
    const Nat l = n.level();
    const bool x_over_y = v_p(index_reduction(m.gen(), l, n.gen(), p), p) <= k;
    const bool y_over_x = v_p(index_reduction(n.gen(), k, m.gen(), p), p) <= l;
    const bool same_dim = gsb_dimension(k, m.n(), p) == gsb_dimension(l, n.n(), p);
    return x_over_y && y_over_x && same_dim;
}

inline bool compare_flag_upper_motives(const FlagVariety& x, const FlagVariety& y, Nat p) {
    require_same_model(x.algebra().cls(), y.algebra().cls());
    return motives_isomorphic(upper_motive_of(x, p), upper_motive_of(y, p));
}

/// {Tate} and M_{l, A_p} for 0 <= l < v_p(ind A_p), in that order.
inline std::vector<UpperMotive> enumerate_upper_motives(const CentralSimpleAlgebra& a, Nat p) {
    std::vector<UpperMotive> out{UpperMotive::tate()};
    const BrauerClass ap = p_primary(a.cls(), p);
    const Nat n = v_p(index(ap), p);
    for (Nat l = 0; l < n; ++l) out.push_back(UpperMotive::upper(p, l, ap));
    return out;
}

enum class Dichotomy { Disjoint, Equal };

inline const char* to_string(Dichotomy d) { return d == Dichotomy::Equal ? "equal" : "disjoint"; }

/**
 * Compares the sets of upper p-motives of PGL_1(A) and PGL_1(A'). They
 * either coincide or meet only in the Tate motive. When both sets are
 * {Tate} they coincide, and Equal is reported.
 */
inline Dichotomy dichotomy_check(const CentralSimpleAlgebra& a, const CentralSimpleAlgebra& b, Nat p) {
    require_same_model(a.cls(), b.cls());
    const auto xa = enumerate_upper_motives(a, p);
    const auto xb = enumerate_upper_motives(b, p);
    auto member = [](const UpperMotive& m, const std::vector<UpperMotive>& set) {
        return std::any_of(set.begin(), set.end(), [&](const UpperMotive& x) { return motives_isomorphic(m, x); });
    };
    std::size_t common = 0;
    bool a_in_b = true;
    for (const auto& m : xa) {
        if (member(m, xb)) {
            ++common;
        } else {
            a_in_b = false;
        }
    }
    const bool b_in_a = std::all_of(xb.begin(), xb.end(), [&](const UpperMotive& m) { return member(m, xa); });
    if (a_in_b && b_in_a) return Dichotomy::Equal;
    // Tate is always common; anything else shared breaks the dichotomy.
    if (common == 1) return Dichotomy::Disjoint;
    throw InternalInvariantError("upper motive sets of " + a.cls().str() + " and " + b.cls().str() +
                                 " are neither equal nor disjoint");
}

}  // namespace flagmot
