#pragma once

/**
 * @file varieties.hpp
 * @brief Symbolic varieties of flags of right ideals X(d_1,...,d_k; A).
 *
 * A flag variety is just (algebra, reduced dimensions). The dimensions 0
 * and deg(A) correspond to the forced ideals 0 and A and are removed on
 * construction; a flag with nothing left is the point Spec F.
 *
 * Isotropy is p-relative: X is isotropic when it carries a zero-cycle of
 * degree prime to p, which happens exactly when
 *     v_p(gcd d_i) >= v_p(ind A_p).
 */

#include <vector>

#include "flagmot/brauer.hpp"
#include "flagmot/exact.hpp"

namespace flagmot {

class CentralSimpleAlgebra {
public:
    CentralSimpleAlgebra(BrauerClass cls, Nat degree) : cls_(std::move(cls)), degree_(degree) {
        if (degree_ < 1) throw DomainError("algebra degree must be >= 1");
        if (degree_ % index(cls_) != 0) {
            throw DomainError("index " + std::to_string(index(cls_)) + " of class " + cls_.str() +
                              " does not divide degree " + std::to_string(degree_));
        }
    }

    /// The division algebra of the class (degree = index).
    static CentralSimpleAlgebra division(BrauerClass cls) {
        Nat d = index(cls);
        return CentralSimpleAlgebra(std::move(cls), d);
    }

    const BrauerClass& cls() const { return cls_; }
    Nat degree() const { return degree_; }

private:
    BrauerClass cls_;
    Nat degree_;
};

struct NormalizedFlag {
    std::vector<Nat> dims;
    bool trivial = false;
    friend bool operator==(const NormalizedFlag&, const NormalizedFlag&) = default;
};

/// Drops the entries 0 and degree from a strictly increasing flag.
inline NormalizedFlag normalize(const std::vector<Nat>& dims, Nat degree) {
    if (degree < 1) throw DomainError("algebra degree must be >= 1");
    NormalizedFlag out;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (dims[i] < 0) throw DomainError("flag dimensions must be >= 0");
        if (dims[i] > degree) {
            throw DomainError("flag dimension " + std::to_string(dims[i]) + " exceeds degree " +
                              std::to_string(degree));
        }
        if (i > 0 && dims[i] <= dims[i - 1]) throw DomainError("flag dimensions must be strictly increasing");
        if (dims[i] != 0 && dims[i] != degree) out.dims.push_back(dims[i]);
    }
    out.trivial = out.dims.empty();
    return out;
}

class FlagVariety {
public:
    FlagVariety(CentralSimpleAlgebra algebra, const std::vector<Nat>& dims)
        : algebra_(std::move(algebra)), flag_(normalize(dims, algebra_.degree())) {}

    const CentralSimpleAlgebra& algebra() const { return algebra_; }
    /// Normalized dimensions (no 0, no degree).
    const std::vector<Nat>& dims() const { return flag_.dims; }
    bool trivial() const { return flag_.trivial; }

    /// v_p(gcd d_i); only defined for non-trivial flags.
    Nat level(Nat p) const {
        if (trivial()) throw DomainError("the point variety has no level");
        return v_p(gcd_list(flag_.dims), p);
    }

private:
    CentralSimpleAlgebra algebra_;
    NormalizedFlag flag_;
};

/// v_p of the index of the p-primary part of the algebra.
inline Nat p_index_valuation(const CentralSimpleAlgebra& a, Nat p) {
    return v_p(index(p_primary(a.cls(), p)), p);
}

inline bool is_isotropic(const FlagVariety& x, Nat p) {
    require_prime(p);
    if (x.trivial()) return true;
    return x.level(p) >= p_index_valuation(x.algebra(), p);
}

/// Dimension of the generalized Severi-Brauer variety X(p^k; D), deg D = p^n.
inline Nat gsb_dimension(Nat k, Nat n, Nat p) {
    require_prime(p);
    if (k < 0 || n < 0) throw DomainError("gsb_dimension needs k, n >= 0");
    if (k > n) throw DomainError("gsb_dimension needs k <= n");
    const Nat pk = ipow(p, k);
    return checked_mul(pk, checked_sub(ipow(p, n), pk));
}

/// Dimension of the upper p-motive of X; 0 exactly when X is isotropic.
inline Nat canonical_p_dimension(const FlagVariety& x, Nat p) {
    if (is_isotropic(x, p)) return 0;
    return gsb_dimension(x.level(p), p_index_valuation(x.algebra(), p), p);
}

}  // namespace flagmot
