#include "quandlekit/laurent.hpp"

#include <cctype>
#include <sstream>

namespace qk {

LaurentPoly::LaurentPoly(int num_vars) : num_vars_(num_vars) {
    if (num_vars < 1) throw DomainError("LaurentPoly needs at least one variable");
}

LaurentPoly LaurentPoly::constant(int num_vars, const Int& c) {
    LaurentPoly p(num_vars);
    p.add_term(Exps(num_vars, 0), c);
    return p;
}

LaurentPoly LaurentPoly::monomial(int num_vars, const Exps& exps, const Int& c) {
    if (static_cast<int>(exps.size()) != num_vars)
        throw DomainError("exponent vector length does not match num_vars");
    LaurentPoly p(num_vars);
    p.add_term(exps, c);
    return p;
}

LaurentPoly LaurentPoly::variable(int num_vars, int index, int exp) {
    if (index < 1 || index > num_vars) throw DomainError("variable index out of range");
    Exps e(num_vars, 0);
    e[index - 1] = exp;
    return monomial(num_vars, e, 1);
}

void LaurentPoly::add_term(const Exps& e, const Int& c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void LaurentPoly::check_vars(const LaurentPoly& o) const {
    if (num_vars_ != o.num_vars_)
        throw DomainError("mismatched num_vars: " + std::to_string(num_vars_) + " vs " +
                          std::to_string(o.num_vars_));
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r(num_vars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    check_vars(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    check_vars(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    r += o;
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    r -= o;
    return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    check_vars(o);
    LaurentPoly r(num_vars_);
    for (const auto& [e1, c1] : terms_) {
        for (const auto& [e2, c2] : o.terms_) {
            Exps e(num_vars_);
            for (int i = 0; i < num_vars_; ++i) e[i] = e1[i] + e2[i];
            r.add_term(e, c1 * c2);
        }
    }
    return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
    *this = *this * o;
    return *this;
}

Int LaurentPoly::augment() const {
    Int s = 0;
    for (const auto& [e, c] : terms_) s += c;
    return s;
}

LaurentPoly LaurentPoly::reduce_tau() const {
    LaurentPoly r(1);
    for (const auto& [e, c] : terms_) {
        int total = 0;
        for (int x : e) total += x;
        r.add_term({total}, c);
    }
    return r;
}

bool LaurentPoly::is_unit() const {
    if (terms_.size() != 1) return false;
    const Int& c = terms_.begin()->second;
    return c == 1 || c == -1;
}

LaurentPoly LaurentPoly::unit_inverse() const {
    if (!is_unit()) throw DomainError("not a unit: " + str());
    const auto& [e, c] = *terms_.begin();
    Exps inv(num_vars_);
    for (int i = 0; i < num_vars_; ++i) inv[i] = -e[i];
    return monomial(num_vars_, inv, c);
}

LaurentPoly LaurentPoly::reverse_t() const {
    if (num_vars_ != 1) throw DomainError("reverse_t is for one-variable polynomials");
    LaurentPoly r(1);
    for (const auto& [e, c] : terms_) r.add_term({-e[0]}, c);
    return r;
}

int LaurentPoly::min_degree() const {
    if (num_vars_ != 1) throw DomainError("min_degree is for one-variable polynomials");
    if (terms_.empty()) return 0;
    return terms_.begin()->first[0];
}

int LaurentPoly::max_degree() const {
    if (num_vars_ != 1) throw DomainError("max_degree is for one-variable polynomials");
    if (terms_.empty()) return 0;
    return terms_.rbegin()->first[0];
}

namespace {

std::string monomial_str(const LaurentPoly::Exps& e, const Int& c, int num_vars) {
    std::ostringstream out;
    Int a = c < 0 ? Int(-c) : c;
    bool have_factor = false;
    if (a != 1) {
        out << a.str();
        have_factor = true;
    }
    for (int i = 0; i < num_vars; ++i) {
        if (e[i] == 0) continue;
        if (have_factor) out << "*";
        out << (num_vars == 1 ? std::string("t") : "t" + std::to_string(i + 1));
        if (e[i] != 1) out << "^" << e[i];
        have_factor = true;
    }
    if (!have_factor) out << "1";
    return out.str();
}

}  // namespace

std::string LaurentPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    // highest term first
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        out << monomial_str(e, c, num_vars_);
    }
    return out.str();
}

// ---- parsing ----

namespace {

struct PolyScanner {
    const std::string& s;
    size_t i = 0;
    explicit PolyScanner(const std::string& text) : s(text) {}

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, 1, static_cast<int>(i) + 1); }

    long long integer() {
        skip_ws();
        bool neg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) fail("expected integer");
        long long v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            v = v * 10 + (s[i] - '0');
            if (v > (1LL << 40)) fail("integer literal too large");
            ++i;
        }
        return neg ? -v : v;
    }
};

}  // namespace

LaurentPoly LaurentPoly::parse(const std::string& text, int num_vars) {
    LaurentPoly result(num_vars);
    PolyScanner sc(text);
    if (sc.done()) sc.fail("empty polynomial");
    bool first_term = true;
    while (!sc.done()) {
        int sign = 1;
        char c = sc.peek();
        if (c == '+' || c == '-') {
            sign = c == '-' ? -1 : 1;
            ++sc.i;
        } else if (!first_term) {
            sc.fail("expected + or - between terms");
        }
        first_term = false;
        // one term: factors joined by '*'
        Int coeff = sign;
        Exps exps(num_vars, 0);
        bool more = true;
        bool any_factor = false;
        while (more) {
            char f = sc.peek();
            if (f == 't') {
                ++sc.i;
                int index = 1;
                if (sc.i < sc.s.size() && std::isdigit(static_cast<unsigned char>(sc.s[sc.i]))) {
                    index = static_cast<int>(sc.integer());
                } else if (num_vars != 1) {
                    sc.fail("bare t is only valid in the one-variable ring");
                }
                if (index < 1 || index > num_vars) sc.fail("variable index out of range: t" + std::to_string(index));
                int exp = 1;
                if (sc.peek() == '^') {
                    ++sc.i;
                    exp = static_cast<int>(sc.integer());
                }
                exps[index - 1] += exp;
            } else if (std::isdigit(static_cast<unsigned char>(f))) {
                coeff *= sc.integer();
            } else {
                sc.fail("expected a coefficient or variable");
            }
            any_factor = true;
            if (sc.peek() == '*') {
                ++sc.i;
            } else {
                more = false;
            }
        }
        if (!any_factor) sc.fail("empty term");
        result.add_term(exps, coeff);
    }
    return result;
}

LaurentPoly LaurentPoly::parse(const std::string& text) {
    // infer the variable count: scan for t<k> tokens
    int max_index = 1;
    for (size_t i = 0; i + 1 < text.size(); ++i) {
        if (text[i] == 't' && std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
            int v = 0;
            size_t j = i + 1;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) v = v * 10 + (text[j++] - '0');
            if (v > max_index) max_index = v;
        }
    }
    return parse(text, max_index);
}

}  // namespace qk
