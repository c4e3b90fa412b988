// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Every threshold below is exact (100% agreement, zero
// violations) and the runtime limits are hard limits.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "flagmot/motives.hpp"
#include "flagmot/oracles.hpp"

using namespace flagmot;

namespace {

constexpr std::uint64_t kSeed = 20240101;
constexpr Nat kMaxN = 3;
constexpr Nat kGlobalModels = 500;
constexpr Nat kAbstractModels = 24;
constexpr Nat kMinAbstractModels = 20;
constexpr Nat kMinAbstractWithGap = 5;
constexpr Nat kDichotomyPairs = 200;
constexpr Nat kFlags = 100;

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const Outcome& o) {
    std::printf("[%s] AC%d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str());
    if (!o.pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const CheckCounter& c) {
    return std::to_string(c.cases) + " cases, " + std::to_string(c.failures) + " failures";
}

std::string secs(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f s", s);
    return buf;
}

void print_samples(const SweepStats& s) {
    for (const auto& f : s.failure_samples) std::printf("    %s\n", f.c_str());
}

}  // namespace

int main() {
    const std::vector<Nat> primes{2, 3};

    // AC1: local model, all pairs of generators of the order-p^n subgroup, n <= 3.
    {
        const auto t0 = std::chrono::steady_clock::now();
        SweepStats s;
        std::int64_t expected_pairs = 0;
        for (Nat p : primes) {
            for (Nat n = 1; n <= kMaxN; ++n) {
                const auto cls = local_classes_of_index(p, n);
                expected_pairs += static_cast<std::int64_t>(cls.size() * cls.size());
                for (const auto& d : cls)
                    for (const auto& dp : cls)
                        s.guarded("theorem1", d.str() + " vs " + dp.str(),
                                  [&] { return theorem1_report(d, dp, p).equivalent(); });
            }
        }
        const double t = seconds_since(t0);
        const auto c = s.total("theorem1");
        report(1, "isomorphism criterion equivalence sweep (local, p in {2,3}, n <= 3)",
               {c.failures == 0 && c.cases == expected_pairs && t < 10.0,
                fmt(c) + " of " + std::to_string(expected_pairs) + " pairs, " + secs(t) + " (limit 10 s)"});
        print_samples(s);
    }

    // AC2, AC3, AC4, AC7 share one sweep: local pools, 500 random global
    // models and 24 abstract models (every other one forced to have exp < ind).
    SweepStats pools;
    double pool_time = 0;
    {
        const auto t0 = std::chrono::steady_clock::now();
        SweepRng rng(kSeed);
        for (Nat p : primes) sweep_pool(local_pool(p, kMaxN), "local", pools);
        for (Nat i = 0; i < kGlobalModels; ++i) {
            sweep_pool(random_global_pool(rng, primes[static_cast<std::size_t>(i % 2)], kMaxN), "global", pools);
            ++pools.counts["models/global"];
        }
        for (Nat i = 0; i < kAbstractModels; ++i) {
            auto pool = random_abstract_pool(rng, primes[static_cast<std::size_t>(i % 2)], kMaxN, i % 2 == 0);
            if (has_exponent_below_index(pool.model->group())) ++pools.counts["models/abstract_exp_lt_ind"];
            sweep_pool(pool, "abstract", pools);
            ++pools.counts["models/abstract"];
        }
        pool_time = seconds_since(t0);
    }
    {
        const auto c = pools.total("agreement/");
        const auto nglob = pools.counts["models/global"];
        const auto nabs = pools.counts["models/abstract"];
        const auto ngap = pools.counts["models/abstract_exp_lt_ind"];
        const bool coverage = nglob >= kGlobalModels && nabs >= kMinAbstractModels && ngap >= kMinAbstractWithGap &&
                              pools.total("agreement/local").cases > 0 && pools.total("agreement/global").cases > 0 &&
                              pools.total("agreement/abstract").cases > 0;
        report(2, "criterion/oracle agreement on Upper pairs",
               {c.failures == 0 && coverage && pool_time < 60.0,
                fmt(c) + " over " + std::to_string(nglob) + " global and " + std::to_string(nabs) +
                    " abstract models (" + std::to_string(ngap) + " with exp < ind), " + secs(pool_time) +
                    " (limit 60 s)"});
    }
    {
        const auto c = pools.total("mu/");
        report(3, "mu profiles: p-powers, gcd = min, reduced index | ind D", {c.failures == 0 && c.cases > 0, fmt(c)});
    }
    {
        const auto c = pools.total("prop1/");
        std::int64_t skipped = 0;
        for (const auto& [k, v] : pools.counts)
            if (k.rfind("prop1_hypotheses_not_met/", 0) == 0) skipped += v;
        report(4, "mu-minimizer audit: minimizers prime to p",
               {c.failures == 0 && c.cases > 0,
                fmt(c) + " with hypotheses met, " + std::to_string(skipped) + " cases with hypotheses not met"});
    }
    {
        const auto t0 = std::chrono::steady_clock::now();
        SweepStats s;
        for (Nat p : {2, 3, 5}) sweep_cor1(p, 6, s);
        const double t = seconds_since(t0);
        const auto c = s.total("cor1");
        report(5, "dimension scan: only diagonal solutions (p in {2,3,5}, bound 6)",
               {c.failures == 0 && c.cases > 0 && t < 1.0, fmt(c) + ", " + secs(t) + " (limit 1 s)"});
        print_samples(s);
    }
    {
        SweepStats s;
        SweepRng rng(kSeed + 1);
        sweep_dichotomy(rng, kDichotomyPairs, s);
        const auto c = s.total("dichotomy");
        report(6, "dichotomy on random algebra pairs",
               {c.failures == 0 && c.cases == kDichotomyPairs, fmt(c)});
        print_samples(s);
    }
    {
        const auto c = pools.total("subgroup/");
        report(7, "same_subgroup vs brute-force subgroup oracle", {c.failures == 0 && c.cases > 0, fmt(c)});
    }
    {
        SweepStats s;
        SweepRng rng(kSeed + 2);
        sweep_normalization(rng, kFlags, s);
        const auto c = s.total("normalization");
        report(8, "normalization invariance (appending 0 and/or deg A)",
               {c.failures == 0 && c.cases == 3 * kFlags, fmt(c) + " over " + std::to_string(kFlags) + " flags"});
        print_samples(s);
    }
    {
        SweepStats s;
        for (Nat p : primes) sweep_local_corollary(p, kMaxN, s);
        const auto c = s.total("local_corollary");
        report(9, "local model: equal p-power index gives isomorphic M_{l,.}", {c.failures == 0 && c.cases > 0, fmt(c)});
        print_samples(s);
    }

    if (pools.total_failures() > 0) print_samples(pools);
    std::printf("%s: %d criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
    return failures == 0 ? 0 : 1;
}
