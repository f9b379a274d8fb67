#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <string>
#include <vector>

#include "quandlekit/errors.hpp"

namespace qk {

using Int = boost::multiprecision::cpp_int;

// Exact Laurent polynomial in num_vars commuting variables t1..tn with
// integer coefficients.  Terms are kept in a map keyed by exponent vector
// (lexicographic order), with no zero coefficients stored, so equal
// polynomials have identical representations.
class LaurentPoly {
  public:
    using Exps = std::vector<int>;
    using TermMap = std::map<Exps, Int>;

    explicit LaurentPoly(int num_vars = 1);

    static LaurentPoly constant(int num_vars, const Int& c);
    static LaurentPoly monomial(int num_vars, const Exps& exps, const Int& c);
    // 1-based variable index; exp may be negative.
    static LaurentPoly variable(int num_vars, int index, int exp = 1);

    int num_vars() const { return num_vars_; }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }
    size_t term_count() const { return terms_.size(); }

    LaurentPoly operator-() const;
    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const LaurentPoly& o);
    bool operator==(const LaurentPoly& o) const { return num_vars_ == o.num_vars_ && terms_ == o.terms_; }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    // Sum of coefficients: the ring map sending every variable to 1.
    Int augment() const;

    // Sends every variable to the single variable t; result has num_vars 1.
    LaurentPoly reduce_tau() const;

    // True iff the polynomial is a single monomial with coefficient +-1,
    // i.e. a unit of the Laurent ring.
    bool is_unit() const;
    // Multiplicative inverse of a unit (throws DomainError otherwise).
    LaurentPoly unit_inverse() const;

    // One-variable only: substitutes t -> t^-1.
    LaurentPoly reverse_t() const;

    // One-variable convenience.
    int min_degree() const;  // lowest exponent of t (0 for the zero poly)
    int max_degree() const;

    std::string str() const;

    // Accepts the printed syntax: terms joined by + and -, factors joined
    // by *, variables t1, t2, ... (plain t allowed when num_vars == 1),
    // integer exponents after ^.
    static LaurentPoly parse(const std::string& text, int num_vars);
    // Same, inferring num_vars from the largest variable index seen.
    static LaurentPoly parse(const std::string& text);

  private:
    int num_vars_;
    TermMap terms_;

    void add_term(const Exps& e, const Int& c);
    void check_vars(const LaurentPoly& o) const;
};

inline LaurentPoly operator*(const Int& c, const LaurentPoly& p) {
    return LaurentPoly::constant(p.num_vars(), c) * p;
}

}  // namespace qk
