#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "quandlekit/laurent.hpp"
#include "quandlekit/linkdiag.hpp"

namespace qk {

// Presentation of a module over the Laurent ring: free module on the arc
// generators modulo one relation row per classical crossing.
struct PresentedModule {
    int num_vars = 1;
    std::vector<std::string> gens;
    std::vector<std::string> row_labels;            // crossing ids
    std::vector<std::vector<LaurentPoly>> rows;     // rows[i][j]: coefficient of gens[j]

    int gen_index(const std::string& id) const;
};

// A representative of a module class in the free module on the generators.
struct ModuleElement {
    int num_vars = 1;
    std::map<std::string, LaurentPoly> coeffs;  // no zero entries kept

    bool is_zero() const { return coeffs.empty(); }
    ModuleElement& add(const std::string& gen, const LaurentPoly& c);
    ModuleElement operator+(const ModuleElement& o) const;
    ModuleElement operator-(const ModuleElement& o) const;
    ModuleElement scaled(const LaurentPoly& c) const;
    bool operator==(const ModuleElement& o) const { return num_vars == o.num_vars && coeffs == o.coeffs; }
    std::string str() const;
};

// Values of the Crowell map on the arc generators.  In the multivariate
// case phi(a) = t_{k(a)} - 1 and ztail is empty; in the reduced case
// phi(a) = 1 and ztail(a) is the projection to the trivial Z^{mu-1} tail
// (zero for component 1, standard basis vector e_{i-1} for component i>1).
struct CrowellData {
    bool reduced = false;
    std::map<std::string, LaurentPoly> phi;
    std::map<std::string, std::vector<long long>> ztail;

    LaurentPoly phi_of(const ModuleElement& x) const;
};

PresentedModule alexander_presentation(const Diagram& d);
PresentedModule reduced_presentation(const Diagram& d);
CrowellData crowell_data(const Diagram& d, bool reduced);

// Image of w - 1 in the reduced module, computed letter by letter:
// empty word -> 0, (g_a u) -> s(a) + t*f(u), (g_a^-1 u) -> -t^-1 s(a) + t^-1 f(u).
using Word = std::vector<std::pair<std::string, int>>;
ModuleElement fox_image(const Diagram& d, const Word& word);

// Exponent sum of a word.
int word_exponent(const Word& w);

// The peripheral word for component i: the over-arcs of the component's
// underpasses with their crossing signs, composed against the traversal
// (the group convention b2 = a b1 a^-1 makes the pushoff read right to
// left), then a base-arc correction killing the total exponent.
Word longitude_word(const Diagram& d, int component);

// fox_image of the longitude word: the class chi_i in the reduced module.
// Checks that the reduced Crowell value of the result is 0.
ModuleElement longitude(const Diagram& d, int component);

// gcd of all (g-1)x(g-1) minors of the one-variable relation matrix,
// normalized to lowest degree 0 with positive leading coefficient.
// Zero when there are fewer than g-1 rows.
LaurentPoly alexander_polynomial(const PresentedModule& m);

// One-variable gcd over Z[t] (content + primitive part), result normalized
// like alexander_polynomial.
LaurentPoly gcd_zt(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly normalize_poly(const LaurentPoly& p);

// Fraction-free determinant of a square matrix of Laurent polynomials.
LaurentPoly poly_det(const std::vector<std::vector<LaurentPoly>>& m, int num_vars);

std::string presentation_table(const PresentedModule& m);

}  // namespace qk
