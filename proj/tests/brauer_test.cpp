#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "flagmot/brauer.hpp"
#include "flagmot/oracles.hpp"

using namespace flagmot;

namespace {

BrauerClass loc(Int a, Int b) { return BrauerClass::local(Fraction(a, b)); }

ModelPtr three_places() {
    return FieldModel::global({{"v1", false}, {"v2", false}, {"v3", false}});
}

AbstractPGroup cyclic_table(Nat p, Nat e, std::vector<Nat> inds) {
    AbstractPGroup g{p, {e}, {}};
    for (Nat i = 0; i < static_cast<Nat>(inds.size()); ++i) g.index_table[{i}] = inds[static_cast<std::size_t>(i)];
    return g;
}

// Test-side p-primary oracle for Q/Z: scan the multiples t*c and return the
// one of p-power order whose complement c - t*c has order prime to p.
Fraction p_primary_by_enumeration(const Fraction& c, Nat p) {
    for (Int t = 0; t < c.den(); ++t) {
        Fraction cand = frac_scale(c, t);
        Fraction rest = c - cand;
        Nat o = frac_order(cand);
        while (o % p == 0) o /= p;
        if (o == 1 && frac_order(rest) % p != 0) return cand;
    }
    ADD_FAILURE() << "no p-primary component found";
    return {};
}

}  // namespace

TEST(Exponent, Examples) {
    EXPECT_EQ(exponent(loc(3, 4)), 4);
    auto g = three_places();
    auto c = BrauerClass::global(g, {{"v1", Fraction(1, 2)}, {"v2", Fraction(1, 3)}, {"v3", Fraction(1, 6)}});
    EXPECT_EQ(exponent(c), 6);
    auto m = FieldModel::abstract(cyclic_table(2, 2, {1, 4, 2, 4}));
    EXPECT_EQ(exponent(BrauerClass::abstract(m, {2})), 2);
}

TEST(Index, Examples) {
    EXPECT_EQ(index(loc(3, 4)), 4);
    auto g = three_places();
    auto c = BrauerClass::global(g, {{"v1", Fraction(1, 2)}, {"v2", Fraction(1, 3)}, {"v3", Fraction(1, 6)}});
    // lcm of the local denominators, and ind = exp in this model
    EXPECT_EQ(index(c), std::lcm(std::lcm(2, 3), 6));
    EXPECT_EQ(index(c), exponent(c));
    auto m = FieldModel::abstract(cyclic_table(2, 1, {1, 4}));
    auto d = BrauerClass::abstract(m, {1});
    EXPECT_EQ(index(d), 4);
    EXPECT_EQ(exponent(d), 2);
}

TEST(ValidateIndexTable, AcceptsValidTable) {
    EXPECT_TRUE(validate_index_table(cyclic_table(2, 2, {1, 4, 2, 4})).empty());
}

TEST(ValidateIndexTable, ReportsA1) {
    auto v = validate_index_table(cyclic_table(2, 2, {2, 4, 2, 4}));
    ASSERT_FALSE(v.empty());
    EXPECT_EQ(v.front().axiom, "A1");
    EXPECT_EQ(v.front().witness.front(), GroupElement{0});
    EXPECT_THROW(FieldModel::abstract(cyclic_table(2, 2, {2, 4, 2, 4})), IndexTableError);
}

// The table {0->1, 1->2, 2->4, 3->2}: by direct enumeration, element 1 has
// order 4 which does not divide its index 2, so A2 must be reported; A5
// holds (ind(1+1) = 4 divides 2*2) and A4 holds (ind(3) = ind(1)).
TEST(ValidateIndexTable, VerdictComesFromEnumeration) {
    auto g = cyclic_table(2, 2, {1, 2, 4, 2});
    std::set<std::string> expected;
    for (Nat x = 0; x < 4; ++x) {
        Nat order = 4 / std::gcd(x, Nat{4});
        if (g.index_table.at({x}) % order != 0) expected.insert("A2");
    }
    for (Nat x = 0; x < 4; ++x)
        for (Nat y = 0; y < 4; ++y)
            if ((g.index_table.at({x}) * g.index_table.at({y})) % g.index_table.at({(x + y) % 4}) != 0)
                expected.insert("A5");
    std::set<std::string> got;
    for (const auto& v : validate_index_table(g)) got.insert(v.axiom);
    EXPECT_EQ(got, expected);
    EXPECT_EQ(got, std::set<std::string>{"A2"});
}

TEST(ValidateIndexTable, ReportsA3A4A5) {
    auto v3 = validate_index_table(cyclic_table(3, 1, {1, 6, 6}));
    EXPECT_TRUE(std::any_of(v3.begin(), v3.end(), [](auto& v) { return v.axiom == "A3"; }));
    auto v4 = validate_index_table(cyclic_table(3, 1, {1, 3, 9}));
    EXPECT_TRUE(std::any_of(v4.begin(), v4.end(), [](auto& v) { return v.axiom == "A4"; }));
    // Z/2 x Z/2 with ind(1,1) = 8 > 2 * 2.
    AbstractPGroup g{2, {1, 1}, {{{0, 0}, 1}, {{0, 1}, 2}, {{1, 0}, 2}, {{1, 1}, 8}}};
    auto v5 = validate_index_table(g);
    ASSERT_EQ(v5.size(), 1u);
    EXPECT_EQ(v5.front().axiom, "A5");
    EXPECT_EQ(v5.front().witness.size(), 2u);
}

TEST(ValidateIndexTable, PartialTableIsDomainError) {
    AbstractPGroup g{2, {2}, {{{0}, 1}, {{1}, 4}}};
    EXPECT_THROW(validate_index_table(g), DomainError);
    AbstractPGroup bad_key{2, {1}, {{{0}, 1}, {{1}, 2}, {{2}, 2}}};
    EXPECT_THROW(validate_index_table(bad_key), DomainError);
    EXPECT_THROW(validate_index_table(AbstractPGroup{4, {1}, {}}), DomainError);
}

TEST(Combine, Examples) {
    EXPECT_EQ(combine(loc(1, 4), -1), loc(3, 4));
    EXPECT_EQ(combine(loc(1, 4), 2), loc(1, 2));
    auto g = FieldModel::global({{"v1", false}, {"v2", false}});
    auto c = BrauerClass::global(g, {{"v1", Fraction(1, 4)}, {"v2", Fraction(3, 4)}});
    auto e = BrauerClass::global(g, {{"v1", Fraction(3, 4)}, {"v2", Fraction(1, 4)}});
    EXPECT_EQ(combine(c, 3), e);
}

TEST(Tensor, Examples) {
    EXPECT_EQ(tensor(loc(1, 4), loc(3, 4)), loc(0, 1));
    EXPECT_EQ(tensor(loc(1, 4), loc(1, 4)), loc(1, 2));
}

TEST(Global, InvariantsEnforced) {
    auto g = FieldModel::global({{"v1", false}, {"v2", false}, {"r", true}});
    EXPECT_THROW(BrauerClass::global(g, {{"v1", Fraction(1, 2)}}), DomainError);
    EXPECT_THROW(BrauerClass::global(g, {{"v1", Fraction(3, 4)}, {"r", Fraction(1, 4)}}), DomainError);
    EXPECT_THROW(BrauerClass::global(g, {{"w", Fraction(0, 1)}}), DomainError);
    auto c = BrauerClass::global(g, {{"v1", Fraction(1, 2)}, {"r", Fraction(1, 2)}, {"v2", Fraction()}});
    EXPECT_EQ(std::get<GlobalInvariants>(c.payload()).size(), 2u);
    EXPECT_TRUE(tensor(c, c).is_zero());
    EXPECT_TRUE(std::get<GlobalInvariants>(tensor(c, c).payload()).empty());
    EXPECT_THROW(FieldModel::global({{"v", false}, {"v", true}}), DomainError);
}

TEST(ModelMismatch, Raises) {
    auto g = FieldModel::global({{"v1", false}, {"v2", false}});
    auto c = BrauerClass::global(g, {{"v1", Fraction(1, 2)}, {"v2", Fraction(1, 2)}});
    EXPECT_THROW(tensor(loc(1, 2), c), ModelError);
    EXPECT_THROW(same_subgroup(loc(1, 2), c), ModelError);
    EXPECT_THROW(subgroup_bruteforce(loc(1, 2), c), ModelError);
    auto g2 = FieldModel::global({{"v1", false}, {"v3", false}});
    auto d = BrauerClass::global(g2, {{"v1", Fraction(1, 2)}, {"v3", Fraction(1, 2)}});
    EXPECT_THROW(tensor(c, d), ModelError);
    // Structurally equal models are the same model.
    auto g_copy = FieldModel::global({{"v1", false}, {"v2", false}});
    auto c2 = BrauerClass::global(g_copy, {{"v1", Fraction(1, 2)}, {"v2", Fraction(1, 2)}});
    EXPECT_EQ(c, c2);
    EXPECT_TRUE(tensor(c, c2).is_zero());
}

TEST(PPrimary, Examples) {
    EXPECT_EQ(p_primary(loc(1, 12), 2), loc(3, 4));
    EXPECT_EQ(p_primary(loc(1, 12), 2).payload(), ClassPayload(p_primary_by_enumeration(Fraction(1, 12), 2)));
    EXPECT_EQ(p_primary(loc(1, 12), 3), loc(1, 3));
    EXPECT_EQ(p_primary(loc(1, 12), 3).payload(), ClassPayload(p_primary_by_enumeration(Fraction(1, 12), 3)));
    EXPECT_EQ(tensor(loc(3, 4), loc(1, 3)), loc(1, 12));
    EXPECT_EQ(p_primary(loc(1, 4), 3), loc(0, 1));
}

TEST(PPrimary, MatchesEnumerationOracle) {
    for (Int den = 1; den <= 72; ++den) {
        for (Int num = 0; num < den; ++num) {
            for (Nat p : {2, 3, 5}) {
                Fraction f(num, den);
                EXPECT_EQ(std::get<Fraction>(p_primary(BrauerClass::local(f), p).payload()),
                          p_primary_by_enumeration(f, p))
                    << f << " p=" << p;
            }
        }
    }
}

TEST(SameSubgroup, Examples) {
    EXPECT_TRUE(same_subgroup(loc(1, 4), loc(3, 4)));
    EXPECT_FALSE(same_subgroup(loc(1, 4), loc(1, 2)));
    auto g = FieldModel::global({{"v1", false}, {"v2", false}});
    auto c = BrauerClass::global(g, {{"v1", Fraction(1, 4)}, {"v2", Fraction(3, 4)}});
    auto d = BrauerClass::global(g, {{"v1", Fraction(3, 4)}, {"v2", Fraction(1, 4)}});
    EXPECT_TRUE(same_subgroup(c, d));
    EXPECT_EQ(same_subgroup(c, d), subgroup_bruteforce(c, d));
}

// Properties over random classes in local, global and abstract models.
class BrauerProperties : public ::testing::Test {
protected:
    std::vector<std::vector<BrauerClass>> families() {
        SweepRng rng(99);
        std::vector<std::vector<BrauerClass>> out;
        std::vector<BrauerClass> local;
        for (Int den : {1, 2, 3, 4, 6, 8, 9, 12, 24, 36})
            for (Int num = 0; num < den; ++num) local.push_back(loc(num, den));
        out.push_back(local);
        for (int i = 0; i < 20; ++i) {
            auto m = make_finite_places_model(rng.uniform(2, 4));
            std::vector<BrauerClass> cls;
            for (int j = 0; j < 6; ++j) cls.push_back(random_mixed_class(rng, m));
            out.push_back(cls);
        }
        for (int i = 0; i < 12; ++i) out.push_back(random_abstract_pool(rng, i % 2 ? 3 : 2, 3, i % 3 == 0).classes);
        return out;
    }
};

TEST_F(BrauerProperties, ExponentDividesIndex) {
    for (const auto& fam : families()) {
        for (const auto& c : fam) {
            EXPECT_EQ(index(c) % exponent(c), 0) << c;
            EXPECT_EQ(index(c) == 1, c.is_zero()) << c;
            if (c.kind() != ModelKind::Abstract) { EXPECT_EQ(index(c), exponent(c)); }
        }
    }
}

TEST_F(BrauerProperties, CoprimePowersKeepIndex) {
    for (const auto& fam : families()) {
        for (const auto& c : fam) {
            const Nat e = exponent(c);
            for (Int t = -7; t <= 13; ++t) {
                if (gcd(t, e) == 1) { EXPECT_EQ(index(combine(c, t)), index(c)) << c << " t=" << t; }
            }
        }
    }
}

TEST_F(BrauerProperties, PrimaryDecomposition) {
    for (const auto& fam : families()) {
        for (const auto& c : fam) {
            for (Nat p : {2, 3, 5}) {
                auto cp = p_primary(c, p);
                auto rest = c - cp;
                EXPECT_EQ(tensor(cp, rest), c);
                EXPECT_EQ(exponent(cp), p_part(exponent(c), p)) << c << " p=" << p;
                EXPECT_NE(exponent(rest) % p, 0) << c << " p=" << p;
            }
        }
    }
}

TEST_F(BrauerProperties, SameSubgroupIsEquivalenceAndMatchesBruteForce) {
    for (const auto& fam : families()) {
        for (const auto& a : fam) {
            EXPECT_TRUE(same_subgroup(a, a));
            for (const auto& b : fam) {
                const bool ab = same_subgroup(a, b);
                EXPECT_EQ(ab, same_subgroup(b, a));
                EXPECT_EQ(ab, subgroup_bruteforce(a, b)) << a << " vs " << b;
                if (!ab) continue;
                for (const auto& c : fam) {
                    if (same_subgroup(b, c)) { EXPECT_TRUE(same_subgroup(a, c)); }
                }
            }
        }
    }
}
