#pragma once

/**
 * @file oracles.hpp
 * @brief Brute-force oracles, theorem audits and deterministic sweeps.
 *
 * The oracles here recompute from first principles (cyclic subgroups by
 * repeated addition, dimension equalities by exhaustive scan) and are used
 * to cross-check the fast paths in brauer.hpp and motives.hpp. The index
 * reduction formula has no more primitive definition, so the audits use it
 * directly and check its internal identities instead.
 */

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "flagmot/brauer.hpp"
#include "flagmot/motives.hpp"
#include "flagmot/varieties.hpp"

namespace flagmot {

/// The cyclic subgroup generated by c, built by repeated addition.
inline std::set<BrauerClass> cyclic_subgroup_bruteforce(const BrauerClass& c) {
    std::set<BrauerClass> out;
    BrauerClass cur = BrauerClass::zero(c.model_ptr());
    while (out.insert(cur).second) cur = tensor(cur, c);
    return out;
}

inline bool subgroup_bruteforce(const BrauerClass& c, const BrauerClass& d) {
    require_same_model(c, d);
    return cyclic_subgroup_bruteforce(c) == cyclic_subgroup_bruteforce(d);
}

struct DimensionSolution {
    Nat k, n, l, n_prime;
    friend bool operator==(const DimensionSolution&, const DimensionSolution&) = default;
    bool diagonal() const { return k == l && n == n_prime; }
};

/// All (k, n, l, n') with k < n <= bound, l < n' <= bound and
/// p^k (p^n - p^k) = p^l (p^n' - p^l).
inline std::vector<DimensionSolution> cor1_dimension_scan(Nat p, Nat bound) {
    require_prime(p);
    if (bound < 0 || bound > 8) throw DomainError("cor1_dimension_scan bound must lie in [0, 8]");
    auto dim = [p](Nat k, Nat n) {
        Nat pk = 1, pn = 1;
        for (Nat i = 0; i < k; ++i) pk = checked_mul(pk, p);
        for (Nat i = 0; i < n; ++i) pn = checked_mul(pn, p);
        return checked_mul(pk, pn - pk);
    };
    std::vector<DimensionSolution> out;
    for (Nat n = 1; n <= bound; ++n)
        for (Nat k = 0; k < n; ++k)
            for (Nat np = 1; np <= bound; ++np)
                for (Nat l = 0; l < np; ++l)
                    if (dim(k, n) == dim(l, np)) out.push_back({k, n, l, np});
    return out;
}

struct Theorem1Report {
    Nat n = 0;
    bool some_level = false;  // (1) M_{l,D} ~ M_{l,D'} for some l < n
    bool same_subgroup = false;  // (2) <D> = <D'>
    bool all_levels = false;  // (3) M_{l,D} ~ M_{l,D'} for all l < n
    bool equivalent() const { return some_level == same_subgroup && same_subgroup == all_levels; }
    const char* verdict() const { return equivalent() ? "equivalent" : "VIOLATION"; }
};

inline void require_equal_p_index(const BrauerClass& d, const BrauerClass& dp, Nat p) {
    require_prime(p);
    require_same_model(d, dp);
    if (!is_p_primary(d, p) || !is_p_primary(dp, p)) throw DomainError("classes must be p-primary");
    if (index(d) != index(dp)) {
        throw DomainError("classes must have equal index (" + std::to_string(index(d)) + " vs " +
                          std::to_string(index(dp)) + ")");
    }
    if (index(d) == 1) throw DomainError("classes must be non-split");
}

/// Evaluates the three equivalent assertions for D, D' of equal index p^n.
inline Theorem1Report theorem1_report(const BrauerClass& d, const BrauerClass& dp, Nat p) {
    require_equal_p_index(d, dp, p);
    Theorem1Report r;
    r.n = v_p(index(d), p);
    r.all_levels = true;
    for (Nat l = 0; l < r.n; ++l) {
        bool iso = oracle_isomorphic(UpperMotive::upper(p, l, d), UpperMotive::upper(p, l, dp));
        r.some_level = r.some_level || iso;
        r.all_levels = r.all_levels && iso;
    }
    r.same_subgroup = same_subgroup(d, dp);
    return r;
}

struct Prop1Report {
    Nat k = 0;
    bool exponent_condition = false;  // exp(D) >= exp(D')
    bool isotropy_condition = false;  // X(p^k; D) isotropic over F(X(p^k; D'))
    Nat reduced_index = 0;
    std::vector<Nat> minimizers;  // all j attaining min mu_{k,j}
    std::optional<bool> pass;  // unset when the hypotheses do not hold

    bool hypotheses_met() const { return exponent_condition && isotropy_condition; }
    const char* verdict() const {
        if (!pass) return "hypotheses not met";
        return *pass ? "pass" : "VIOLATION";
    }
};

/// Checks that every mu-minimizer is prime to p whenever the hypotheses hold.
inline Prop1Report prop1_audit(const BrauerClass& d, const BrauerClass& dp, Nat k, Nat p) {
    require_equal_p_index(d, dp, p);
    const Nat n = v_p(index(d), p);
    if (k < 0 || k >= n) throw DomainError("prop1_audit needs 0 <= k < n");
    Prop1Report r;
    r.k = k;
    const auto red = index_reduction_detail(d, k, dp, p);
    r.reduced_index = red.reduced;
    r.exponent_condition = exponent(d) >= exponent(dp);
    r.isotropy_condition = v_p(red.reduced, p) <= k;
    for (std::size_t i = 0; i < red.profile.values.size(); ++i) {
        if (red.profile.values[i] == red.reduced) r.minimizers.push_back(static_cast<Nat>(i) + 1);
    }
    if (r.hypotheses_met()) {
        r.pass = std::all_of(r.minimizers.begin(), r.minimizers.end(), [p](Nat j) { return j % p != 0; });
    }
    return r;
}

/// Deterministic generator: mt19937_64 is fully specified, and the
/// range reduction below does not depend on the standard library.
class SweepRng {
public:
    explicit SweepRng(std::uint64_t seed) : eng_(seed) {}
    Nat uniform(Nat lo, Nat hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<Nat>(eng_() % span);
    }
    bool coin() { return (eng_() & 1U) != 0; }

private:
    std::mt19937_64 eng_;
};

/// All a/p^n with a prime to p, i.e. the generators of the order-p^n subgroup of Q/Z.
inline std::vector<BrauerClass> local_classes_of_index(Nat p, Nat n) {
    const Nat pn = ipow(p, n);
    std::vector<BrauerClass> out;
    for (Nat a = 1; a < pn; ++a) {
        if (a % p != 0) out.push_back(BrauerClass::local(Fraction(a, pn)));
    }
    return out;
}

inline ModelPtr make_finite_places_model(Nat count) {
    std::vector<Place> places;
    for (Nat i = 1; i <= count; ++i) places.push_back({"v" + std::to_string(i), false});
    return FieldModel::global(std::move(places));
}

/**
 * A random class over the given finite places: every place but the last
 * gets a/denom with denom drawn from `denominators`, the last one is fixed
 * by reciprocity.
 */
inline BrauerClass random_global_class(SweepRng& rng, const ModelPtr& model, const std::vector<Nat>& denominators) {
    const auto& places = model->global_field().places;
    GlobalInvariants invs;
    Fraction sum;
    for (std::size_t i = 0; i + 1 < places.size(); ++i) {
        Nat den = denominators[static_cast<std::size_t>(rng.uniform(0, static_cast<Nat>(denominators.size()) - 1))];
        Fraction f(rng.uniform(0, den - 1), den);
        invs[places[i].id] = f;
        sum = sum + f;
    }
    invs[places.back().id] = -sum;
    return BrauerClass::global(model, invs);
}

inline std::vector<Nat> p_power_denominators(Nat p, Nat max_n) {
    std::vector<Nat> out;
    for (Nat e = 0; e <= max_n; ++e) out.push_back(ipow(p, e));
    return out;
}

inline Nat random_unit(SweepRng& rng, Nat p, Nat bound) {
    Nat t;
    do {
        t = rng.uniform(1, bound);
    } while (t % p == 0);
    return t;
}

struct ClassPool {
    ModelPtr model;
    Nat p = 2;
    std::vector<BrauerClass> classes;  // non-split, p-primary
};

/// 2-4 finite places; three random classes plus prime-to-p multiples, so
/// that equal subgroups actually occur.
inline ClassPool random_global_pool(SweepRng& rng, Nat p, Nat max_n) {
    ClassPool pool{make_finite_places_model(rng.uniform(2, 4)), p, {}};
    const auto dens = p_power_denominators(p, max_n);
    std::vector<BrauerClass> base;
    for (int i = 0; i < 3; ++i) base.push_back(random_global_class(rng, pool.model, dens));
    std::vector<BrauerClass> all = base;
    const Nat pn = ipow(p, max_n);
    all.push_back(combine(base[0], random_unit(rng, p, pn)));
    all.push_back(combine(base[0], random_unit(rng, p, pn)));
    all.push_back(combine(base[1], random_unit(rng, p, pn)));
    all.push_back(combine(base[0], p));
    std::set<BrauerClass> seen;
    for (auto& c : all) {
        if (!c.is_zero() && seen.insert(c).second) pool.classes.push_back(c);
    }
    return pool;
}

/**
 * Index table ind(g) = p^{bump} * prod_{blocks B} max_{i in B} ord(g_i) for
 * g != 0. Blocks partition the cyclic factors; block_of[i] names the block
 * of factor i. Satisfies the index axioms for any partition and bump >= 0.
 */
inline AbstractPGroup block_index_table(Nat p, std::vector<Nat> exponents, const std::vector<Nat>& block_of, Nat bump) {
    AbstractPGroup g{p, std::move(exponents), {}};
    const auto mods = g.moduli();
    for (const auto& e : g.elements()) {
        std::map<Nat, Nat> block_max;
        bool zero = true;
        for (std::size_t i = 0; i < e.size(); ++i) {
            Nat ord = mods[i] / gcd(e[i], mods[i]);
            auto& m = block_max[block_of[i]];
            m = std::max<Nat>(std::max<Nat>(m, 1), ord);
            zero = zero && e[i] == 0;
        }
        Nat ind = 1;
        if (!zero) {
            ind = ipow(p, bump);
            for (const auto& [b, m] : block_max) ind = checked_mul(ind, m);
        }
        g.index_table[e] = ind;
    }
    return g;
}

inline bool has_exponent_below_index(const AbstractPGroup& g) {
    for (const auto& [e, ind] : g.index_table) {
        if (g.element_order(e) < ind) return true;
    }
    return false;
}

/// Random axiom-valid abstract p-group model with all indices <= p^max_n
/// and group order <= 27. Every nonzero element goes into the pool. With
/// want_gap the table is redrawn until some element has exp < ind.
inline ClassPool random_abstract_pool(SweepRng& rng, Nat p, Nat max_n, bool want_gap = false) {
    while (true) {
        const Nat rank = rng.uniform(1, p == 2 ? 3 : 2);
        std::vector<Nat> exps;
        std::vector<Nat> block_of;
        for (Nat i = 0; i < rank; ++i) {
            exps.push_back(rng.uniform(1, 2));
            block_of.push_back(rng.uniform(0, rank - 1));
        }
        const Nat bump = rng.uniform(0, 1);
        auto g = block_index_table(p, exps, block_of, bump);
        if (g.order() > 27) continue;
        Nat max_ind = 1;
        for (const auto& [e, ind] : g.index_table) max_ind = std::max(max_ind, ind);
        if (v_p(max_ind, p) > max_n) continue;
        if (want_gap && !has_exponent_below_index(g)) continue;
        ClassPool pool{FieldModel::abstract(g), p, {}};
        for (const auto& e : g.elements()) {
            auto c = BrauerClass::abstract(pool.model, e);
            if (!c.is_zero()) pool.classes.push_back(c);
        }
        return pool;
    }
}

inline ClassPool local_pool(Nat p, Nat max_n) {
    ClassPool pool{FieldModel::local(), p, {}};
    for (Nat n = 1; n <= max_n; ++n) {
        for (auto& c : local_classes_of_index(p, n)) pool.classes.push_back(c);
    }
    return pool;
}

struct CheckCounter {
    std::int64_t cases = 0;
    std::int64_t failures = 0;
};

/// Per-check case and failure counts, keyed like "agreement/global".
struct SweepStats {
    std::map<std::string, CheckCounter> checks;
    std::map<std::string, std::int64_t> counts;  // informational tallies
    std::vector<std::string> failure_samples;

    void record(const std::string& key, bool ok, const std::string& what = {}) {
        auto& c = checks[key];
        ++c.cases;
        if (!ok) {
            ++c.failures;
            if (failure_samples.size() < 20) failure_samples.push_back(key + ": " + what);
        }
    }

    /// Runs fn, recording a failure (instead of propagating) on library errors.
    template <class Fn>
    void guarded(const std::string& key, const std::string& what, Fn&& fn) {
        try {
            record(key, fn(), what);
        } catch (const Error& e) {
            record(key, false, what + " threw: " + e.what());
        }
    }

    CheckCounter total(const std::string& prefix) const {
        CheckCounter t;
        for (const auto& [k, c] : checks) {
            if (k.rfind(prefix, 0) == 0) {
                t.cases += c.cases;
                t.failures += c.failures;
            }
        }
        return t;
    }

    std::int64_t total_failures() const { return total("").failures; }
};

/// Independent check of a mu profile: p-powers, gcd = min, the j = p^n term
/// equals ind D, and the reduced index divides ind D.
inline bool mu_profile_sound(const BrauerClass& d, const MuProfile& prof, Nat reduced, Nat p) {
    if (prof.values.empty()) return false;
    Nat g = 0, mn = prof.values.front();
    for (Nat v : prof.values) {
        Nat x = v;
        while (x % p == 0) x /= p;
        if (x != 1) return false;
        g = std::gcd(g, v);
        mn = std::min(mn, v);
    }
    return g == mn && g == reduced && prof.values.back() == index(d) && index(d) % reduced == 0;
}

/**
 * Runs every pairwise check on a pool, recording under "<check>/<tag>":
 * subgroup (same_subgroup vs brute force), agreement (criterion vs oracle
 * on all level pairs), mu (profile soundness), theorem1 and prop1 (equal
 * index pairs only).
 */
inline void sweep_pool(const ClassPool& pool, const std::string& tag, SweepStats& stats) {
    const Nat p = pool.p;
    for (const auto& d : pool.classes) {
        for (const auto& dp : pool.classes) {
            const std::string what = d.str() + " vs " + dp.str() + " (p=" + std::to_string(p) + ")";
            stats.guarded("subgroup/" + tag, what, [&] { return same_subgroup(d, dp) == subgroup_bruteforce(d, dp); });
            const Nat n = v_p(index(d), p);
            const Nat np = v_p(index(dp), p);
            for (Nat l = 0; l <= np; ++l) {
                stats.guarded("mu/" + tag, what + " l=" + std::to_string(l), [&] {
                    auto red = index_reduction_detail(d, l, dp, p);
                    return mu_profile_sound(d, red.profile, red.reduced, p);
                });
            }
            for (Nat k = 0; k < n; ++k) {
                for (Nat l = 0; l < np; ++l) {
                    stats.guarded("agreement/" + tag, what + " k=" + std::to_string(k) + " l=" + std::to_string(l),
                                  [&] {
                                      auto m = UpperMotive::upper(p, k, d);
                                      auto o = UpperMotive::upper(p, l, dp);
                                      return motives_isomorphic(m, o) == oracle_isomorphic(m, o);
                                  });
                }
            }
            if (n != np) continue;
            stats.guarded("theorem1/" + tag, what, [&] { return theorem1_report(d, dp, p).equivalent(); });
            for (Nat k = 0; k < n; ++k) {
                try {
                    auto r = prop1_audit(d, dp, k, p);
                    if (r.hypotheses_met()) {
                        stats.record("prop1/" + tag, r.pass.value_or(false), what + " k=" + std::to_string(k));
                    } else {
                        ++stats.counts["prop1_hypotheses_not_met/" + tag];
                    }
                } catch (const Error& e) {
                    stats.record("prop1/" + tag, false, what + " threw: " + e.what());
                }
            }
        }
    }
}

/// Every pair of equal index p^n, n <= max_n, in Q/Z gives isomorphic
/// M_{l,.} for all l < n, by both routes.
inline void sweep_local_corollary(Nat p, Nat max_n, SweepStats& stats) {
    for (Nat n = 1; n <= max_n; ++n) {
        const auto cls = local_classes_of_index(p, n);
        for (const auto& d : cls) {
            for (const auto& dp : cls) {
                for (Nat l = 0; l < n; ++l) {
                    stats.guarded("local_corollary", d.str() + " vs " + dp.str(), [&] {
                        auto m = UpperMotive::upper(p, l, d);
                        auto o = UpperMotive::upper(p, l, dp);
                        return motives_isomorphic(m, o) && oracle_isomorphic(m, o);
                    });
                }
            }
        }
    }
}

inline void sweep_cor1(Nat p, Nat bound, SweepStats& stats) {
    for (const auto& s : cor1_dimension_scan(p, bound)) {
        stats.record("cor1", s.diagonal(),
                     "p=" + std::to_string(p) + " (" + std::to_string(s.k) + "," + std::to_string(s.n) + "," +
                         std::to_string(s.l) + "," + std::to_string(s.n_prime) + ")");
    }
}

/// Random class whose order involves both 2 and 3, in the given model.
inline BrauerClass random_mixed_class(SweepRng& rng, const ModelPtr& model) {
    static const std::vector<Nat> dens{1, 2, 3, 4, 6, 8, 9, 12, 18, 24, 36, 72};
    if (model->kind() == ModelKind::Local) {
        Nat den = dens[static_cast<std::size_t>(rng.uniform(0, static_cast<Nat>(dens.size()) - 1))];
        return BrauerClass::local(model, Fraction(rng.uniform(0, den - 1), den));
    }
    return random_global_class(rng, model, dens);
}

/**
 * dichotomy_check on random pairs: must never throw and must say Equal
 * exactly when the p-primary parts generate the same subgroup.
 */
inline void sweep_dichotomy(SweepRng& rng, Nat pairs, SweepStats& stats) {
    for (Nat i = 0; i < pairs; ++i) {
        const Nat p = rng.coin() ? 2 : 3;
        ModelPtr model = rng.coin() ? FieldModel::local() : make_finite_places_model(rng.uniform(2, 4));
        BrauerClass a = random_mixed_class(rng, model);
        BrauerClass b = random_mixed_class(rng, model);
        switch (rng.uniform(0, 3)) {
            case 0: b = combine(a, random_unit(rng, p, 72)); break;
            case 1: b = BrauerClass::zero(model); break;
            default: break;
        }
        const auto alg_a = CentralSimpleAlgebra(a, checked_mul(index(a), rng.uniform(1, 3)));
        const auto alg_b = CentralSimpleAlgebra(b, checked_mul(index(b), rng.uniform(1, 3)));
        stats.guarded("dichotomy", a.str() + " vs " + b.str() + " (p=" + std::to_string(p) + ")", [&] {
            const bool expect_equal = subgroup_bruteforce(p_primary(a, p), p_primary(b, p));
            return (dichotomy_check(alg_a, alg_b, p) == Dichotomy::Equal) == expect_equal;
        });
    }
}

/// Isotropy from the gcd of an un-normalized flag. Entries 0 drop out of the
/// gcd, and deg(A) cannot lower it below v_p(ind A_p) since ind A | deg A.
inline bool isotropic_from_raw_flag(const std::vector<Nat>& dims, const CentralSimpleAlgebra& a, Nat p) {
    Nat g = 0;
    for (Nat d : dims) g = std::gcd(g, d);
    if (g == 0) return true;
    Nat e = 0;
    while (g % p == 0) {
        g /= p;
        ++e;
    }
    Nat ind = index(p_primary(a.cls(), p)), n = 0;
    while (ind % p == 0) {
        ind /= p;
        ++n;
    }
    return e >= n;
}

inline bool same_upper_normal_form(const UpperMotive& a, const UpperMotive& b) {
    if (a.is_tate() || b.is_tate()) return a.is_tate() && b.is_tate();
    return a.p() == b.p() && a.level() == b.level() && a.gen() == b.gen();
}

/// Appending 0 and/or deg(A) to a flag changes no invariant.
inline void sweep_normalization(SweepRng& rng, Nat flags, SweepStats& stats) {
    for (Nat i = 0; i < flags; ++i) {
        const Nat p = rng.coin() ? 2 : 3;
        ModelPtr model = rng.coin() ? FieldModel::local() : make_finite_places_model(rng.uniform(2, 4));
        BrauerClass c = random_mixed_class(rng, model);
        const Nat deg = checked_mul(index(c), rng.uniform(1, 3));
        if (deg < 2) {
            --i;
            continue;
        }
        const CentralSimpleAlgebra alg(c, deg);
        std::vector<Nat> dims;
        for (Nat d = 1; d < deg; ++d) {
            if (rng.uniform(0, 2) == 0) dims.push_back(d);
        }
        if (dims.empty()) dims.push_back(rng.uniform(1, deg - 1));
        const FlagVariety base(alg, dims);
        const bool iso = is_isotropic(base, p);
        const Nat cdim = canonical_p_dimension(base, p);
        const UpperMotive um = upper_motive_of(base, p);
        for (int variant = 1; variant <= 3; ++variant) {
            std::vector<Nat> ext = dims;
            if (variant & 1) ext.insert(ext.begin(), 0);
            if (variant & 2) ext.push_back(deg);
            stats.guarded("normalization", c.str() + " deg " + std::to_string(deg), [&] {
                const FlagVariety x(alg, ext);
                return is_isotropic(x, p) == iso && iso == isotropic_from_raw_flag(ext, alg, p) &&
                       canonical_p_dimension(x, p) == cdim && same_upper_normal_form(upper_motive_of(x, p), um);
            });
        }
    }
}

struct SweepConfig {
    std::vector<Nat> primes{2, 3};
    Nat max_n = 3;
    Nat global_models = 500;
    Nat abstract_models = 24;
    Nat dichotomy_pairs = 200;
    Nat flags = 100;
    std::vector<Nat> cor1_primes{2, 3, 5};
    Nat cor1_bound = 6;
    std::uint64_t seed = 20240101;
};

/**
 * The full sweep. Global and abstract models cycle through the configured
 * primes; every other abstract model is required to have exp < ind
 * somewhere.
 */
inline SweepStats run_sweep(const SweepConfig& cfg) {
    if (cfg.primes.empty()) throw DomainError("sweep needs at least one prime");
    for (Nat p : cfg.primes) require_prime(p);
    if (cfg.max_n < 1 || cfg.max_n > 4) throw DomainError("max_n must lie in [1, 4]");
    SweepStats stats;
    SweepRng rng(cfg.seed);

    for (Nat p : cfg.primes) {
        sweep_pool(local_pool(p, cfg.max_n), "local", stats);
        sweep_local_corollary(p, cfg.max_n, stats);
        ++stats.counts["models/local"];
    }
    for (Nat i = 0; i < cfg.global_models; ++i) {
        const Nat p = cfg.primes[static_cast<std::size_t>(i) % cfg.primes.size()];
        sweep_pool(random_global_pool(rng, p, cfg.max_n), "global", stats);
        ++stats.counts["models/global"];
    }
    for (Nat i = 0; i < cfg.abstract_models; ++i) {
        const Nat p = cfg.primes[static_cast<std::size_t>(i) % cfg.primes.size()];
        auto pool = random_abstract_pool(rng, p, cfg.max_n, i % 2 == 0);
        if (has_exponent_below_index(pool.model->group())) ++stats.counts["models/abstract_exp_lt_ind"];
        sweep_pool(pool, "abstract", stats);
        ++stats.counts["models/abstract"];
    }
    for (Nat p : cfg.cor1_primes) sweep_cor1(p, cfg.cor1_bound, stats);
    sweep_dichotomy(rng, cfg.dichotomy_pairs, stats);
    sweep_normalization(rng, cfg.flags, stats);
    return stats;
}

}  // namespace flagmot
