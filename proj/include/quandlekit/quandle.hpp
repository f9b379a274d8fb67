#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quandlekit/finquot.hpp"
#include "quandlekit/linkdiag.hpp"

namespace qk {

// Finite quandle as an operation table: table[x][y] = x > y.
struct FiniteQuandle {
    std::vector<std::string> elements;
    std::vector<std::vector<int>> table;
    std::optional<std::vector<int>> block;  // per element, when built blockwise

    int size() const { return static_cast<int>(elements.size()); }
    int op(int x, int y) const { return table[x][y]; }
    bool operator==(const FiniteQuandle& o) const {
        return elements == o.elements && table == o.table && block == o.block;
    }
};

struct QuandleCheck {
    bool idempotent = true;
    bool right_bijective = true;
    bool self_distributive = true;
    std::string detail;
    bool ok() const { return idempotent && right_bijective && self_distributive; }
};

QuandleCheck check_axioms(const FiniteQuandle& q);
// (w>x)>(y>z) == (w>y)>(x>z) over all quadruples
bool check_medial(const FiniteQuandle& q);

FiniteQuandle trivial_quandle(int n);
// conjugation quandle of a permutation group given by its elements
FiniteQuandle conjugation_quandle_s3();

// Data for the coset-union medial quandle: the block for index i is N/X_i
// and  x > y = m_j - m_i + t x + (1-t) y + X_i  for x in block i, y in block j.
struct MedialInput {
    FiniteModule ambient;
    Submodule N;
    std::vector<FpVec> m;        // one ambient element per block index
    std::vector<Submodule> X;    // one submodule of N per block index
};

FiniteQuandle build_medial(const MedialInput& inp, const SearchBudget& budget = {});

// Everything the quandle constructions need from one link over one ring.
struct LinkShadow {
    Diagram diag;
    FiniteRing ring;
    Specialization sp;
    FiniteMap phi;                 // reduced Crowell map M -> R
    FiniteMap tau_phi;             // arc |-> t-1 map M -> R (Def-6 style phi)
    Submodule ker_phi;             // N
    std::vector<FpVec> meridian;   // class of the base arc, per component
    std::vector<FpVec> chi;        // specialized longitudes
    std::vector<Submodule> X;      // cyclic submodule generated by chi_i

    const FiniteModule& mod() const { return sp.mod; }
};

LinkShadow link_shadow(const Diagram& d, const FiniteRing& ring);

FiniteQuandle mq_of_link(const Diagram& d, const FiniteRing& ring, const SearchBudget& budget = {});

// The two-block quandle Q(ker phi, (d,0), (X,X)) with X = ann(1-t) inside
// ker phi and d = (m1 - m2) + (1-t) n.  Classical two-component links only.
FiniteQuandle thm20_quandle(const Diagram& d, const FiniteRing& ring, const FpVec& n,
                            const SearchBudget& budget = {});
FiniteQuandle thm20_quandle(const LinkShadow& sh, const FpVec& n, const SearchBudget& budget = {});

// ---- operations on module elements carrying a phi-value ----
//
// Shadow semantics: over a finite coefficient ring there are more units
// than the +-monomials of the Laurent ring, so the set of elements with
// 1 + phi invertible is larger than the image of the integral quandle it
// mirrors.  The identity checks below are still exact, because every
// formula is a polynomial identity valid over any commutative ring.

struct UElem {
    FpVec v;
    RElem phi;
    bool operator==(const UElem& o) const { return v == o.v && phi == o.phi; }
};

UElem make_uelem(const LinkShadow& sh, const FpVec& v);

// x > y = (phi(y)+1) x - phi(x) y
UElem u_op(const FiniteModule& M, const UElem& x, const UElem& y);
// x . y = x + (1+phi(x)) y, with phi(x.y) = phi(x) + phi(y) + phi(x)phi(y)
UElem group_op(const FiniteModule& M, const UElem& x, const UElem& y);
// inverse of x: -(1+phi(x))^-1 x
UElem group_inv(const FiniteModule& M, const UElem& x);
// x > y = y + (1+phi(y)) x - (1+phi(y))(1+phi(x))(1+phi(y))^-1 y
UElem conj_op(const FiniteModule& M, const UElem& x, const UElem& y);

// all module elements with 1 + phi invertible (the finite U-shadow)
std::vector<UElem> u_shadow_elements(const LinkShadow& sh, const SearchBudget& budget = {});
// subquandle generated by the arc classes under u_op
FiniteQuandle qa_shadow_quandle(const LinkShadow& sh, const SearchBudget& budget = {});
// u_op table on an explicit element set (must be closed)
FiniteQuandle u_quandle_on(const LinkShadow& sh, const std::vector<UElem>& elems);

std::optional<std::vector<int>> quandle_iso_search(const FiniteQuandle& a, const FiniteQuandle& b,
                                                   const SearchBudget& budget = {});

std::string quandle_json(const FiniteQuandle& q);
std::string quandle_table(const FiniteQuandle& q);

}  // namespace qk
