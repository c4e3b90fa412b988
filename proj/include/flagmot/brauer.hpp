#pragma once

/**
 * @file brauer.hpp
 * @brief Field models, Brauer classes, index and exponent.
 *
 * A FieldModel fixes how Br(F) and the Schur index are represented:
 *
 * - Local: Br(F) = Q/Z and ind = exp = the denominator of the invariant.
 * - Global: a finite list of places. A class is a sparse map place -> Q/Z
 *   whose invariants sum to zero, with real places carrying 0 or 1/2.
 *   ind = exp = lcm of the local denominators.
 * - Abstract: a finite abelian p-group prod Z/p^{e_i} together with an
 *   explicit index table. The table must satisfy the axioms checked by
 *   validate_index_table; this is the only model where exp < ind occurs.
 *
 * Classes are additive: combine(c, t) is the t-th tensor power and
 * tensor(c, d) is the Brauer product.
 */

#include <algorithm>
#include <compare>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "flagmot/errors.hpp"
#include "flagmot/exact.hpp"

namespace flagmot {

enum class ModelKind { Local, Global, Abstract };

inline const char* to_string(ModelKind k) {
    switch (k) {
        case ModelKind::Local: return "local";
        case ModelKind::Global: return "global";
        case ModelKind::Abstract: return "abstract";
    }
    return "?";
}

struct Place {
    std::string id;
    bool is_real = false;
    friend bool operator==(const Place&, const Place&) = default;
};

struct LocalField {
    friend bool operator==(const LocalField&, const LocalField&) = default;
};

struct GlobalField {
    std::vector<Place> places;
    friend bool operator==(const GlobalField&, const GlobalField&) = default;

    const Place* find(const std::string& id) const {
        auto it = std::find_if(places.begin(), places.end(),
                               [&](const Place& pl) { return pl.id == id; });
        return it == places.end() ? nullptr : &*it;
    }
};

using GroupElement = std::vector<Nat>;

/// Finite abelian p-group prod Z/p^{e_i} with a Schur index for every element.
struct AbstractPGroup {
    Nat p = 2;
    std::vector<Nat> exponents;
    std::map<GroupElement, Nat> index_table;

    friend bool operator==(const AbstractPGroup&, const AbstractPGroup&) = default;

    std::vector<Nat> moduli() const {
        std::vector<Nat> m;
        m.reserve(exponents.size());
        for (Nat e : exponents) m.push_back(ipow(p, e));
        return m;
    }

    Nat order() const {
        Nat n = 1;
        for (Nat m : moduli()) n = checked_mul(n, m);
        return n;
    }

    /// Largest element order, p^{max e_i}.
    Nat group_exponent() const {
        Nat e = 0;
        for (Nat x : exponents) e = std::max(e, x);
        return ipow(p, e);
    }

    GroupElement reduce(const GroupElement& g) const {
        if (g.size() != exponents.size()) {
            throw DomainError("group element has " + std::to_string(g.size()) +
                              " components, expected " + std::to_string(exponents.size()));
        }
        auto m = moduli();
        GroupElement r(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) r[i] = mod(g[i], m[i]);
        return r;
    }

    /// All elements in lexicographic order.
    std::vector<GroupElement> elements() const {
        auto m = moduli();
        std::vector<GroupElement> out;
        out.reserve(static_cast<std::size_t>(order()));
        GroupElement cur(m.size(), 0);
        while (true) {
            out.push_back(cur);
            std::size_t i = m.size();
            while (i > 0) {
                --i;
                if (++cur[i] < m[i]) break;
                cur[i] = 0;
                if (i == 0) return out;
            }
            if (m.empty()) return out;
        }
    }

    Nat element_order(const GroupElement& g) const {
        auto m = moduli();
        Nat o = 1;
        for (std::size_t i = 0; i < g.size(); ++i) o = std::max(o, m[i] / gcd(g[i], m[i]));
        return o;
    }

    GroupElement add(const GroupElement& a, const GroupElement& b) const {
        GroupElement s(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) s[i] = checked_add(a[i], b[i]);
        return reduce(s);
    }

    GroupElement scale(const GroupElement& a, Int t) const {
        auto m = moduli();
        GroupElement s(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) s[i] = mod(checked_mul(a[i], mod(t, m[i])), m[i]);
        return s;
    }
};

inline std::string element_string(const GroupElement& g) {
    std::string s = "(";
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(g[i]);
    }
    return s + ")";
}

/// One failed index-table axiom with the elements that witness it.
struct AxiomViolation {
    std::string axiom;  // "A1" .. "A5"
    std::vector<GroupElement> witness;
    std::string detail;
};

/**
 * Checks the index-table axioms by full enumeration:
 *   A1 ind(0) = 1
 *   A2 exponent(g) | ind(g)
 *   A3 ind(g) is a power of p
 *   A4 ind(t g) = ind(g) for t coprime to p
 *   A5 ind(g + h) | ind(g) ind(h)
 * Returns the first witness found for each violated axiom; empty means ok.
 * A table that does not cover the whole group is a DomainError.
 */
inline std::vector<AxiomViolation> validate_index_table(const AbstractPGroup& m) {
    require_prime(m.p);
    if (m.exponents.empty()) throw DomainError("abstract group needs at least one cyclic factor");
    for (Nat e : m.exponents) {
        if (e < 1) throw DomainError("abstract group exponents must be >= 1");
    }
    auto mods = m.moduli();
    for (const auto& [g, ind] : m.index_table) {
        if (g.size() != mods.size()) {
            throw DomainError("index table key " + element_string(g) + " has wrong length");
        }
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (g[i] < 0 || g[i] >= mods[i]) {
                throw DomainError("index table key " + element_string(g) + " is not reduced");
            }
        }
    }
    const auto elems = m.elements();
    for (const auto& g : elems) {
        if (!m.index_table.contains(g)) {
            throw DomainError("partial index table: no entry for " + element_string(g));
        }
    }

    std::vector<AxiomViolation> out;
    auto ind = [&](const GroupElement& g) { return m.index_table.at(g); };
    auto is_p_power = [&](Nat x) {
        if (x < 1) return false;
        while (x % m.p == 0) x /= m.p;
        return x == 1;
    };

    const GroupElement zero(mods.size(), 0);
    if (ind(zero) != 1) {
        out.push_back({"A1", {zero}, "ind(0) = " + std::to_string(ind(zero)) + ", expected 1"});
    }
    for (const auto& g : elems) {
        Nat i = ind(g);
        if (i < 1 || i % m.element_order(g) != 0) {
            out.push_back({"A2", {g},
                           "exponent " + std::to_string(m.element_order(g)) + " does not divide ind " +
                               std::to_string(i)});
            break;
        }
    }
    for (const auto& g : elems) {
        if (!is_p_power(ind(g))) {
            out.push_back({"A3", {g}, "ind " + std::to_string(ind(g)) + " is not a power of p"});
            break;
        }
    }
    [&] {
        const Nat ge = m.group_exponent();
        for (const auto& g : elems) {
            for (Nat t = 2; t < ge; ++t) {
                if (t % m.p == 0) continue;
                auto tg = m.scale(g, t);
                if (ind(tg) != ind(g)) {
                    out.push_back({"A4", {g, tg},
                                   "ind(" + std::to_string(t) + "*g) = " + std::to_string(ind(tg)) +
                                       " != ind(g) = " + std::to_string(ind(g))});
                    return;
                }
            }
        }
    }();
    [&] {
        for (const auto& g : elems) {
            for (const auto& h : elems) {
                auto s = m.add(g, h);
                Nat bound = checked_mul(ind(g), ind(h));
                if (ind(s) < 1 || bound % ind(s) != 0) {
                    out.push_back({"A5", {g, h},
                                   "ind(g+h) = " + std::to_string(ind(s)) + " does not divide " +
                                       std::to_string(bound)});
                    return;
                }
            }
        }
    }();
    return out;
}

/// Raised when an abstract model fails validate_index_table.
struct IndexTableError : DomainError {
    IndexTableError(std::vector<AxiomViolation> v, const std::string& msg)
        : DomainError(msg), violations(std::move(v)) {}
    std::vector<AxiomViolation> violations;
};

class FieldModel;
using ModelPtr = std::shared_ptr<const FieldModel>;

class FieldModel {
public:
    static ModelPtr local() {
        static const ModelPtr instance(new FieldModel(LocalField{}));
        return instance;
    }

    static ModelPtr global(std::vector<Place> places) {
        std::set<std::string> seen;
        for (const auto& pl : places) {
            if (pl.id.empty()) throw DomainError("place id must be non-empty");
            if (!seen.insert(pl.id).second) throw DomainError("duplicate place id '" + pl.id + "'");
        }
        return ModelPtr(new FieldModel(GlobalField{std::move(places)}));
    }

    static ModelPtr abstract(AbstractPGroup group) {
        auto violations = validate_index_table(group);
        if (!violations.empty()) {
            std::string msg = "index table violates";
            for (const auto& v : violations) msg += " " + v.axiom;
            throw IndexTableError(std::move(violations), msg);
        }
        return ModelPtr(new FieldModel(std::move(group)));
    }

    ModelKind kind() const { return static_cast<ModelKind>(data_.index()); }

    const GlobalField& global_field() const {
        if (auto* g = std::get_if<GlobalField>(&data_)) return *g;
        throw ModelError("model is not global");
    }

    const AbstractPGroup& group() const {
        if (auto* g = std::get_if<AbstractPGroup>(&data_)) return *g;
        throw ModelError("model is not abstract");
    }

    friend bool operator==(const FieldModel&, const FieldModel&) = default;

private:
    using Data = std::variant<LocalField, GlobalField, AbstractPGroup>;
    explicit FieldModel(Data d) : data_(std::move(d)) {}
    Data data_;
};

inline bool same_model(const ModelPtr& a, const ModelPtr& b) { return a == b || *a == *b; }

using GlobalInvariants = std::map<std::string, Fraction>;
using ClassPayload = std::variant<Fraction, GlobalInvariants, GroupElement>;

/// An element of Br(F) for a given field model, always in canonical form.
class BrauerClass {
public:
    static BrauerClass zero(ModelPtr model) {
        switch (model->kind()) {
            case ModelKind::Local: return BrauerClass(std::move(model), Fraction{});
            case ModelKind::Global: return BrauerClass(std::move(model), GlobalInvariants{});
            case ModelKind::Abstract: {
                GroupElement z(model->group().exponents.size(), 0);
                return BrauerClass(std::move(model), std::move(z));
            }
        }
        throw ModelError("unknown model kind");
    }

    static BrauerClass local(Fraction inv) { return local(FieldModel::local(), inv); }

    static BrauerClass local(ModelPtr model, Fraction inv) {
        if (model->kind() != ModelKind::Local) throw ModelError("local class in a non-local model");
        return BrauerClass(std::move(model), inv);
    }

    /// Validates reciprocity and real-place constraints; zero invariants are dropped.
    static BrauerClass global(ModelPtr model, const GlobalInvariants& invs) {
        const auto& field = model->global_field();
        GlobalInvariants sparse;
        Fraction sum;
        for (const auto& [id, inv] : invs) {
            const Place* pl = field.find(id);
            if (!pl) throw DomainError("unknown place '" + id + "'");
            if (pl->is_real && !(inv.is_zero() || inv == Fraction(1, 2))) {
                throw DomainError("real place '" + id + "' carries invariant " + inv.str() +
                                  " (must be 0 or 1/2)");
            }
            sum = sum + inv;
            if (!inv.is_zero()) sparse.emplace(id, inv);
        }
        if (!sum.is_zero()) {
            throw DomainError("global invariants sum to " + sum.str() + ", not 0");
        }
        return BrauerClass(std::move(model), std::move(sparse));
    }

    static BrauerClass abstract(ModelPtr model, const GroupElement& g) {
        auto r = model->group().reduce(g);
        return BrauerClass(std::move(model), std::move(r));
    }

    const FieldModel& model() const { return *model_; }
    const ModelPtr& model_ptr() const { return model_; }
    ModelKind kind() const { return model_->kind(); }
    const ClassPayload& payload() const { return payload_; }

    bool is_zero() const {
        return std::visit(
            [](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, Fraction>) {
                    return v.is_zero();
                } else if constexpr (std::is_same_v<T, GlobalInvariants>) {
                    return v.empty();
                } else {
                    return std::all_of(v.begin(), v.end(), [](Nat x) { return x == 0; });
                }
            },
            payload_);
    }

    std::string str() const {
        std::ostringstream os;
        std::visit(
            [&](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, Fraction>) {
                    os << v;
                } else if constexpr (std::is_same_v<T, GlobalInvariants>) {
                    os << "{";
                    bool first = true;
                    for (const auto& [id, f] : v) {
                        os << (first ? "" : ", ") << id << ":" << f;
                        first = false;
                    }
                    os << "}";
                } else {
                    os << element_string(v);
                }
            },
            payload_);
        return os.str();
    }

    friend bool operator==(const BrauerClass& a, const BrauerClass& b) {
        return a.payload_ == b.payload_ && same_model(a.model_, b.model_);
    }

    /// Canonical ordering of payloads; only meaningful within one model.
    friend std::strong_ordering operator<=>(const BrauerClass& a, const BrauerClass& b) {
        return a.payload_ <=> b.payload_;
    }

private:
    BrauerClass(ModelPtr m, ClassPayload p) : model_(std::move(m)), payload_(std::move(p)) {}

    // Internal constructor for already-canonical results.
    friend BrauerClass combine(const BrauerClass&, Int);
    friend BrauerClass tensor(const BrauerClass&, const BrauerClass&);

    ModelPtr model_;
    ClassPayload payload_;
};

inline std::ostream& operator<<(std::ostream& os, const BrauerClass& c) { return os << c.str(); }

inline void require_same_model(const BrauerClass& a, const BrauerClass& b) {
    if (!same_model(a.model_ptr(), b.model_ptr())) {
        throw ModelError(std::string("classes from different field models (") + to_string(a.kind()) +
                         " vs " + to_string(b.kind()) + ")");
    }
}

/// Order of c in Br(F).
inline Nat exponent(const BrauerClass& c) {
    const auto& pl = c.payload();
    switch (c.kind()) {
        case ModelKind::Local: return frac_order(std::get<Fraction>(pl));
        case ModelKind::Global: {
            Nat e = 1;
            for (const auto& [id, f] : std::get<GlobalInvariants>(pl)) e = lcm(e, frac_order(f));
            return e;
        }
        case ModelKind::Abstract: return c.model().group().element_order(std::get<GroupElement>(pl));
    }
    throw ModelError("unknown model kind");
}

/// Schur index of the division algebra in the class.
inline Nat index(const BrauerClass& c) {
    switch (c.kind()) {
        case ModelKind::Local:
        case ModelKind::Global: return exponent(c);
        case ModelKind::Abstract:
            return c.model().group().index_table.at(std::get<GroupElement>(c.payload()));
    }
    throw ModelError("unknown model kind");
}

/// t-th tensor power, i.e. t*c additively; t may be negative.
inline BrauerClass combine(const BrauerClass& c, Int t) {
    const auto& pl = c.payload();
    switch (c.kind()) {
        case ModelKind::Local:
            return BrauerClass(c.model_ptr(), frac_scale(std::get<Fraction>(pl), t));
        case ModelKind::Global: {
            GlobalInvariants out;
            for (const auto& [id, f] : std::get<GlobalInvariants>(pl)) {
                auto s = frac_scale(f, t);
                if (!s.is_zero()) out.emplace(id, s);
            }
            return BrauerClass(c.model_ptr(), std::move(out));
        }
        case ModelKind::Abstract:
            return BrauerClass(c.model_ptr(), c.model().group().scale(std::get<GroupElement>(pl), t));
    }
    throw ModelError("unknown model kind");
}

inline BrauerClass tensor(const BrauerClass& a, const BrauerClass& b) {
    require_same_model(a, b);
    switch (a.kind()) {
        case ModelKind::Local:
            return BrauerClass(a.model_ptr(),
                               frac_add(std::get<Fraction>(a.payload()), std::get<Fraction>(b.payload())));
        case ModelKind::Global: {
            GlobalInvariants out = std::get<GlobalInvariants>(a.payload());
            for (const auto& [id, f] : std::get<GlobalInvariants>(b.payload())) {
                auto s = frac_add(out.contains(id) ? out.at(id) : Fraction{}, f);
                if (s.is_zero()) {
                    out.erase(id);
                } else {
                    out[id] = s;
                }
            }
            return BrauerClass(a.model_ptr(), std::move(out));
        }
        case ModelKind::Abstract:
            return BrauerClass(a.model_ptr(), a.model().group().add(std::get<GroupElement>(a.payload()),
                                                                    std::get<GroupElement>(b.payload())));
    }
    throw ModelError("unknown model kind");
}

inline BrauerClass operator+(const BrauerClass& a, const BrauerClass& b) { return tensor(a, b); }
inline BrauerClass operator-(const BrauerClass& a) { return combine(a, -1); }
inline BrauerClass operator-(const BrauerClass& a, const BrauerClass& b) { return tensor(a, combine(b, -1)); }

/**
 * The p-primary component of c: with exponent(c) = p^a m', gcd(m', p) = 1,
 * it is m' (m'^{-1} mod p^a) * c.
 */
inline BrauerClass p_primary(const BrauerClass& c, Nat p) {
    require_prime(p);
    const Nat e = exponent(c);
    const Nat pa = p_part(e, p);
    const Nat rest = e / pa;
    const Int t = checked_mul(rest, mod_inverse(rest, pa));
    return combine(c, t);
}

inline bool is_p_primary(const BrauerClass& c, Nat p) { return p_part(exponent(c), p) == exponent(c); }

/// <c> == <d>: equal orders and each is a multiple of the other.
inline bool same_subgroup(const BrauerClass& c, const BrauerClass& d) {
    require_same_model(c, d);
    const Nat e = exponent(c);
    if (e != exponent(d)) return false;
    auto reaches = [e](const BrauerClass& from, const BrauerClass& to) {
        for (Nat t = 0; t < e; ++t) {
            if (combine(from, t) == to) return true;
        }
        return false;
    };
    return reaches(c, d) && reaches(d, c);
}

}  // namespace flagmot
