#pragma once

/**
 * @file io.hpp
 * @brief JSON input documents, flag specifications and result serialization.
 *
 * Input document (see docs/document-format.md):
 *
 *   {
 *     "model": {"kind": "local"}
 *            | {"kind": "global", "places": [{"id": "v1", "real": false}, ...]}
 *            | {"kind": "abstract", "p": 2, "exponents": [2],
 *               "index_table": [{"element": [0], "index": 1}, ...]},
 *     "p": 2,
 *     "algebras": {"A": {"class": <payload>, "degree": 4}, ...}
 *   }
 *
 * Payloads: "num/den" (local), {"place": "num/den", ...} (global),
 * [c_1, ..., c_r] (abstract). Fractions are always strings.
 */

#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "flagmot/brauer.hpp"
#include "flagmot/motives.hpp"
#include "flagmot/oracles.hpp"
#include "flagmot/varieties.hpp"

namespace flagmot::io {

using json = nlohmann::json;

struct Document {
    ModelPtr model;
    std::map<std::string, CentralSimpleAlgebra> algebras;
    std::optional<Nat> p;

    const CentralSimpleAlgebra& algebra(const std::string& name) const {
        auto it = algebras.find(name);
        if (it == algebras.end()) throw DomainError("unknown algebra '" + name + "'");
        return it->second;
    }
};

namespace detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& msg) {
    throw DomainError(path + ": " + msg);
}

inline const json& field(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(path + "." + key, "missing");
    return *it;
}

inline Nat as_nat(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<Nat>();
}

/// Re-raises library errors with the offending field prefixed.
template <class Fn>
auto at_path(const std::string& path, Fn&& fn) {
    try {
        return fn();
    } catch (const IndexTableError&) {
        throw;
    } catch (const DomainError& e) {
        fail(path, e.what());
    } catch (const ModelError& e) {
        fail(path, e.what());
    } catch (const json::exception& e) {
        fail(path, e.what());
    }
}

}  // namespace detail

inline ModelPtr parse_model(const json& j, const std::string& path = "model") {
    const auto& kind_j = detail::field(j, "kind", path);
    if (!kind_j.is_string()) detail::fail(path + ".kind", "expected a string");
    const auto kind = kind_j.get<std::string>();
    if (kind == "local") return FieldModel::local();
    if (kind == "global") {
        const auto& places_j = detail::field(j, "places", path);
        if (!places_j.is_array()) detail::fail(path + ".places", "expected an array");
        std::vector<Place> places;
        for (std::size_t i = 0; i < places_j.size(); ++i) {
            const std::string pp = path + ".places[" + std::to_string(i) + "]";
            const auto& id = detail::field(places_j[i], "id", pp);
            if (!id.is_string()) detail::fail(pp + ".id", "expected a string");
            bool real = false;
            if (places_j[i].contains("real")) {
                if (!places_j[i]["real"].is_boolean()) detail::fail(pp + ".real", "expected a boolean");
                real = places_j[i]["real"].get<bool>();
            }
            places.push_back({id.get<std::string>(), real});
        }
        return detail::at_path(path + ".places", [&] { return FieldModel::global(std::move(places)); });
    }
    if (kind == "abstract") {
        AbstractPGroup g;
        g.p = detail::as_nat(detail::field(j, "p", path), path + ".p");
        const auto& exps = detail::field(j, "exponents", path);
        if (!exps.is_array()) detail::fail(path + ".exponents", "expected an array");
        for (std::size_t i = 0; i < exps.size(); ++i) {
            g.exponents.push_back(detail::as_nat(exps[i], path + ".exponents[" + std::to_string(i) + "]"));
        }
        const auto& table = detail::field(j, "index_table", path);
        if (!table.is_array()) detail::fail(path + ".index_table", "expected an array");
        for (std::size_t i = 0; i < table.size(); ++i) {
            const std::string tp = path + ".index_table[" + std::to_string(i) + "]";
            const auto& el = detail::field(table[i], "element", tp);
            if (!el.is_array()) detail::fail(tp + ".element", "expected an array");
            GroupElement e;
            for (std::size_t c = 0; c < el.size(); ++c) e.push_back(detail::as_nat(el[c], tp + ".element"));
            Nat ind = detail::as_nat(detail::field(table[i], "index", tp), tp + ".index");
            if (!g.index_table.emplace(e, ind).second) detail::fail(tp, "duplicate element " + element_string(e));
        }
        return detail::at_path(path, [&] { return FieldModel::abstract(std::move(g)); });
    }
    detail::fail(path + ".kind", "unknown model kind '" + kind + "'");
}

inline BrauerClass parse_class(const ModelPtr& model, const json& j, const std::string& path) {
    return detail::at_path(path, [&] {
        switch (model->kind()) {
            case ModelKind::Local:
                if (!j.is_string()) detail::fail(path, "expected a \"num/den\" string");
                return BrauerClass::local(model, parse_fraction(j.get<std::string>()));
            case ModelKind::Global: {
                if (!j.is_object()) detail::fail(path, "expected an object of place invariants");
                GlobalInvariants invs;
                for (const auto& [place, f] : j.items()) {
                    if (!f.is_string()) detail::fail(path + "." + place, "expected a \"num/den\" string");
                    invs[place] = parse_fraction(f.get<std::string>());
                }
                return BrauerClass::global(model, invs);
            }
            case ModelKind::Abstract: {
                if (!j.is_array()) detail::fail(path, "expected an array of components");
                GroupElement e;
                for (const auto& c : j) e.push_back(detail::as_nat(c, path));
                return BrauerClass::abstract(model, e);
            }
        }
        detail::fail(path, "unknown model kind");
    });
}

inline Document parse_document(const json& j) {
    if (!j.is_object()) throw DomainError("document: expected a JSON object");
    Document doc;
    doc.model = parse_model(detail::field(j, "model", "document"));
    if (j.contains("p")) {
        Nat p = detail::as_nat(j["p"], "p");
        if (!is_prime(p)) detail::fail("p", std::to_string(p) + " is not a prime");
        doc.p = p;
    }
    if (j.contains("algebras")) {
        const auto& algs = j["algebras"];
        if (!algs.is_object()) detail::fail("algebras", "expected an object");
        for (const auto& [name, a] : algs.items()) {
            const std::string path = "algebras." + name;
            BrauerClass cls = parse_class(doc.model, detail::field(a, "class", path), path + ".class");
            Nat degree = index(cls);
            if (a.contains("degree")) degree = detail::as_nat(a["degree"], path + ".degree");
            doc.algebras.emplace(name, detail::at_path(path + ".degree", [&] {
                                     return CentralSimpleAlgebra(cls, degree);
                                 }));
        }
    }
    return doc;
}

inline Document parse_document(std::istream& in) {
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw DomainError(std::string("document is not valid JSON: ") + e.what());
    }
    return parse_document(j);
}

inline Document parse_document_string(const std::string& s) {
    std::istringstream in(s);
    return parse_document(in);
}

struct FlagSpec {
    std::vector<Nat> dims;
    std::string algebra;
};

/// "d1,d2,...@Name"
inline FlagSpec parse_flagspec(const std::string& s) {
    auto at = s.find('@');
    if (at == std::string::npos || at == 0 || at + 1 == s.size()) {
        throw DomainError("malformed flag specification '" + s + "' (expected d1,d2,...@Algebra)");
    }
    FlagSpec spec;
    spec.algebra = s.substr(at + 1);
    std::stringstream ss(s.substr(0, at));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 15) {
            throw DomainError("malformed flag dimension '" + tok + "' in '" + s + "'");
        }
        spec.dims.push_back(std::stoll(tok));
    }
    if (!s.empty() && s[at - 1] == ',') throw DomainError("malformed flag specification '" + s + "'");
    return spec;
}

inline FlagVariety make_flag(const Document& doc, const std::string& spec) {
    auto fs = parse_flagspec(spec);
    return FlagVariety(doc.algebra(fs.algebra), fs.dims);
}

inline json to_json(const Fraction& f) { return f.str(); }

inline json to_json(const BrauerClass& c) {
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Fraction>) {
                return v.str();
            } else if constexpr (std::is_same_v<T, GlobalInvariants>) {
                json o = json::object();
                for (const auto& [id, f] : v) o[id] = f.str();
                return o;
            } else {
                return json(v);
            }
        },
        c.payload());
}

inline json to_json(const UpperMotive& m) {
    if (m.is_tate()) return json{{"kind", "tate"}};
    json sub = json::array();
    for (const auto& c : m.subgroup()) sub.push_back(to_json(c));
    return json{{"kind", "upper"},
                {"p", m.p()},
                {"level", m.level()},
                {"generator", to_json(m.gen())},
                {"index", index(m.gen())},
                {"subgroup", sub},
                {"dimension", gsb_dimension(m.level(), m.n(), m.p())}};
}

inline json to_json(const std::vector<AxiomViolation>& vs) {
    json out = json::array();
    for (const auto& v : vs) {
        json w = json::array();
        for (const auto& e : v.witness) w.push_back(e);
        out.push_back({{"axiom", v.axiom}, {"witness", w}, {"detail", v.detail}});
    }
    return out;
}

inline json to_json(const Theorem1Report& r) {
    return json{{"n", r.n},
                {"some_level", r.some_level},
                {"same_subgroup", r.same_subgroup},
                {"all_levels", r.all_levels},
                {"verdict", r.verdict()}};
}

inline json to_json(const Prop1Report& r) {
    json j{{"k", r.k},
           {"exponent_condition", r.exponent_condition},
           {"isotropy_condition", r.isotropy_condition},
           {"reduced_index", r.reduced_index},
           {"minimizers", r.minimizers},
           {"verdict", r.verdict()}};
    return j;
}

inline json to_json(const SweepStats& s) {
    json checks = json::object();
    for (const auto& [k, c] : s.checks) checks[k] = {{"cases", c.cases}, {"failures", c.failures}};
    json counts = json::object();
    for (const auto& [k, c] : s.counts) counts[k] = c;
    const auto t = s.total("");
    return json{{"checks", checks},
                {"counts", counts},
                {"total_cases", t.cases},
                {"total_failures", t.failures},
                {"failure_samples", s.failure_samples}};
}

/// The distinct primes dividing n >= 1.
inline std::vector<Nat> prime_factors(Nat n) {
    std::vector<Nat> out;
    for (Nat d = 2; d <= n / d; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace flagmot::io
