#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quandlekit/alexmod.hpp"
#include "quandlekit/fpmat.hpp"

namespace qk {

// R-element: coefficient vector of length deg(q), low power first.
using RElem = FpVec;

// The coefficient ring F_p[t]/(q), with q monic and q(0) != 0 so that t is
// a unit.
struct FiniteRing {
    int p = 2;
    std::vector<int> q;  // monic, length degree+1, low power first

    FiniteRing() : q({1, 1}) {}
    FiniteRing(int p_, std::vector<int> q_);
    static FiniteRing parse(int p, const std::string& q_text);

    int degree() const { return static_cast<int>(q.size()) - 1; }
    bool operator==(const FiniteRing& o) const { return p == o.p && q == o.q; }

    RElem zero() const { return RElem(degree(), 0); }
    RElem one() const;
    RElem t() const;
    RElem t_inverse() const;
    RElem from_int(long long n) const;
    RElem from_laurent(const LaurentPoly& poly) const;  // one-variable

    RElem add(const RElem& a, const RElem& b) const { return fp_add(a, b, p); }
    RElem sub(const RElem& a, const RElem& b) const { return fp_sub(a, b, p); }
    RElem neg(const RElem& a) const { return fp_scale(p - 1, a, p); }
    RElem mul(const RElem& a, const RElem& b) const;
    RElem pow(const RElem& a, int64_t e) const;  // e >= 0
    bool is_unit(const RElem& a) const;
    RElem inv(const RElem& a) const;  // throws DomainError on non-units

    bool q_has_root_one() const;  // q(1) == 0, i.e. 1-t is a zero divisor

    std::string elem_str(const RElem& a) const;
    std::string q_str() const;   // compact, e.g. t^2+t+1
    std::string label() const;   // e.g. F_2[t]/(t^2+t+1)
};

// The default coefficient rings used by the verification suite.  Two of
// them have q(1) = 0 so that 1-t acts non-invertibly and the peripheral
// structure stays visible after specialization.
std::vector<FiniteRing> default_rings();

// Finitely generated R-module as an F_p-space with a t-action.
struct FiniteModule {
    FiniteRing ring;
    int dim = 0;
    FpMat t_act;
    FpMat t_inv;
    std::vector<std::string> labels;

    uint64_t card() const;  // p^dim, saturating at 2^63
    FpVec zero() const { return FpVec(dim, 0); }
    // the module axiom: q(t_act) = 0, without which scalar() is meaningless
    bool satisfies_modulus() const;
    FpVec scalar(const RElem& r, const FpVec& v) const;
    FpVec apply_laurent(const LaurentPoly& poly, const FpVec& v) const;
    // visits all p^dim elements in lexicographic order
    void for_each_element(const std::function<void(const FpVec&)>& fn) const;
    // minimal polynomial of t on the cyclic submodule generated by v (monic,
    // low power first; {1} stands for the zero element's annihilator being
    // everything, i.e. min poly 1)
    std::vector<int> min_poly(const FpVec& v) const;
};

FiniteModule ring_as_module(const FiniteRing& R);
// t acts as the identity; only an R-module when n = 0 or q(1) = 0
FiniteModule trivial_module(const FiniteRing& R, int n, const std::string& label_prefix = "z");
FiniteModule product_module(const FiniteModule& a, const FiniteModule& b);

// R-linear map between modules over the same ring.
struct FiniteMap {
    FiniteModule src;
    FiniteModule dst;
    FpMat mat;  // dst.dim x src.dim

    bool commutes_with_t() const;
};

// Submodule of a FiniteModule: echelonized basis rows in parent coordinates.
struct Submodule {
    FpMat basis;              // rows
    std::vector<int> pivots;  // pivot columns of basis

    int dim() const { return basis.rows; }
    bool contains(const FpVec& v) const;
    bool operator==(const Submodule& o) const { return basis == o.basis; }
};

Submodule span_of(int p, int ambient_dim, const std::vector<FpVec>& vectors);
bool is_t_stable(const FiniteModule& M, const Submodule& S);

// Specialization of a one-variable presented module to a finite ring:
// the cokernel of the expanded relation matrix over F_p.
struct Specialization {
    FiniteModule mod;
    // reduction data for mapping free-module elements into the cokernel
    FpMat reducer;
    std::vector<int> reducer_pivots;
    std::vector<int> free_cols;
    std::map<std::string, int> gen_pos;

    FpVec class_of_expanded(const FpVec& v) const;
    FpVec class_of(const ModuleElement& x) const;
    // R-linear map M -> R determined by a value per generator; checks that
    // every relation row maps to zero.
    FiniteMap map_to_ring(const std::map<std::string, LaurentPoly>& values) const;
    // The full reduced Crowell map M -> R (+) Z^{mu-1} shadow; the tail is a
    // trivial-action F_p block.
    FiniteMap map_phi_tau(const CrowellData& cd) const;
};

Specialization specialize(const PresentedModule& m, const FiniteRing& R);

Submodule kernel(const FiniteMap& f);
Submodule annihilator(const FiniteModule& M, const LaurentPoly& poly);
// annihilator taken inside a submodule: {x in N : poly(t) x = 0}
Submodule ann_in(const FiniteModule& M, const Submodule& N, const LaurentPoly& poly);
Submodule generated_submodule(const FiniteModule& M, const std::vector<FpVec>& gens);
Submodule image_of_submodule(const FiniteModule& M, const FpMat& op, const Submodule& S);

struct QuotientModule {
    FiniteModule mod;
    FpMat proj;  // mod.dim x parent.dim
};
QuotientModule quotient(const FiniteModule& M, const Submodule& N);

FiniteModule submodule_as_module(const FiniteModule& M, const Submodule& S, FiniteMap* inclusion = nullptr);

struct SearchBudget {
    int64_t max_elements = 4096;
    int64_t max_quandle = 512;
    int64_t max_nodes = 1000000;
};

struct IsoConstraints {
    std::vector<std::pair<FpVec, FpVec>> elements;       // f(first) = second
    std::vector<std::pair<Submodule, Submodule>> submodules;  // f(first) = second
};

// Searches for an invertible t-commuting map A -> B honoring the
// constraints.  Exhaustive over images of a generating set, pruned by
// cyclic invariants; deterministic.  Throws BudgetExceeded when a module
// is larger than budget.max_elements or the node budget runs out.
std::optional<FpMat> iso_search(const FiniteModule& A, const FiniteModule& B,
                                const IsoConstraints& constraints = {},
                                const SearchBudget& budget = {});

// Same module with t acting by the inverse: coefficients move to the
// reciprocal modulus.
FiniteModule twist_inverse(const FiniteModule& M);

std::string module_json(const FiniteModule& M);

}  // namespace qk
