#include "quandlekit/alexmod.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace qk {

int PresentedModule::gen_index(const std::string& id) const {
    for (size_t i = 0; i < gens.size(); ++i)
        if (gens[i] == id) return static_cast<int>(i);
    throw DomainError("unknown generator: " + id);
}

ModuleElement& ModuleElement::add(const std::string& gen, const LaurentPoly& c) {
    if (c.is_zero()) return *this;
    auto it = coeffs.find(gen);
    if (it == coeffs.end()) {
        coeffs.emplace(gen, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) coeffs.erase(it);
    }
    return *this;
}

ModuleElement ModuleElement::operator+(const ModuleElement& o) const {
    ModuleElement r = *this;
    for (const auto& [g, c] : o.coeffs) r.add(g, c);
    return r;
}

ModuleElement ModuleElement::operator-(const ModuleElement& o) const {
    ModuleElement r = *this;
    for (const auto& [g, c] : o.coeffs) r.add(g, -c);
    return r;
}

ModuleElement ModuleElement::scaled(const LaurentPoly& c) const {
    ModuleElement r;
    r.num_vars = num_vars;
    for (const auto& [g, x] : coeffs) r.add(g, x * c);
    return r;
}

std::string ModuleElement::str() const {
    if (coeffs.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [g, c] : coeffs) {
        // single-term coefficients move their sign into the separator
        bool negated = c.term_count() == 1 && c.terms().begin()->second < 0;
        const LaurentPoly shown = negated ? -c : c;
        if (first)
            out << (negated ? "-" : "");
        else
            out << (negated ? " - " : " + ");
        first = false;
        if (shown == LaurentPoly::constant(c.num_vars(), 1))
            out << g;
        else if (shown.term_count() == 1)
            out << shown.str() << "*" << g;
        else
            out << "(" << shown.str() << ")*" << g;
    }
    return out.str();
}

PresentedModule alexander_presentation(const Diagram& d) {
    PresentedModule m;
    m.num_vars = d.mu;
    for (const auto& a : d.arcs) m.gens.push_back(a.id);
    for (const auto& c : d.crossings) {
        std::vector<LaurentPoly> row(m.gens.size(), LaurentPoly(d.mu));
        auto bump = [&](const std::string& gen, const LaurentPoly& coeff) {
            row[m.gen_index(gen)] += coeff;
        };
        LaurentPoly one = LaurentPoly::constant(d.mu, 1);
        LaurentPoly t_b1 = LaurentPoly::variable(d.mu, d.arc(c.b1).component);
        LaurentPoly t_over = LaurentPoly::variable(d.mu, d.arc(c.over).component);
        bump(c.over, one - t_b1);
        bump(c.b1, t_over);
        bump(c.b2, -one);
        m.rows.push_back(std::move(row));
        m.row_labels.push_back(c.id);
    }
    return m;
}

PresentedModule reduced_presentation(const Diagram& d) {
    PresentedModule m = alexander_presentation(d);
    PresentedModule r;
    r.num_vars = 1;
    r.gens = m.gens;
    r.row_labels = m.row_labels;
    for (const auto& row : m.rows) {
        std::vector<LaurentPoly> rrow;
        rrow.reserve(row.size());
        for (const auto& c : row) rrow.push_back(c.reduce_tau());
        r.rows.push_back(std::move(rrow));
    }
    return r;
}

CrowellData crowell_data(const Diagram& d, bool reduced) {
    CrowellData cd;
    cd.reduced = reduced;
    for (const auto& a : d.arcs) {
        if (reduced) {
            cd.phi.emplace(a.id, LaurentPoly::constant(1, 1));
            std::vector<long long> z(d.mu > 1 ? d.mu - 1 : 0, 0);
            if (a.component > 1) z[a.component - 2] = 1;
            cd.ztail.emplace(a.id, std::move(z));
        } else {
            cd.phi.emplace(a.id, LaurentPoly::variable(d.mu, a.component) - LaurentPoly::constant(d.mu, 1));
        }
    }
    return cd;
}

LaurentPoly CrowellData::phi_of(const ModuleElement& x) const {
    int nv = phi.empty() ? 1 : phi.begin()->second.num_vars();
    LaurentPoly s(nv);
    for (const auto& [g, c] : x.coeffs) {
        auto it = phi.find(g);
        if (it == phi.end()) throw DomainError("phi undefined on generator " + g);
        s += c * it->second;
    }
    return s;
}

ModuleElement fox_image(const Diagram& d, const Word& word) {
    ModuleElement acc;
    acc.num_vars = 1;
    LaurentPoly t = LaurentPoly::variable(1, 1);
    LaurentPoly tinv = LaurentPoly::variable(1, 1, -1);
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        const auto& [arc, exp] = *it;
        if (!d.has_arc(arc)) throw DomainError("unknown arc in word: " + arc);
        if (exp == 1) {
            acc = acc.scaled(t);
            acc.add(arc, LaurentPoly::constant(1, 1));
        } else if (exp == -1) {
            acc = acc.scaled(tinv);
            acc.add(arc, -tinv);
        } else {
            throw DomainError("word letters must have exponent +1 or -1");
        }
    }
    return acc;
}

int word_exponent(const Word& w) {
    int e = 0;
    for (const auto& [arc, exp] : w) e += exp;
    return e;
}

Word longitude_word(const Diagram& d, int component) {
    auto under = underpass_signs(d, component);
    Word w;
    int total = 0;
    for (auto it = under.rbegin(); it != under.rend(); ++it) {
        w.emplace_back(it->over, it->sign);
        total += it->sign;
    }
    const std::string& base = d.base_arc[component - 1];
    for (int k = 0; k < std::abs(total); ++k) w.emplace_back(base, total > 0 ? -1 : 1);
    return w;
}

ModuleElement longitude(const Diagram& d, int component) {
    ModuleElement chi = fox_image(d, longitude_word(d, component));
    CrowellData cd = crowell_data(d, true);
    if (!cd.phi_of(chi).is_zero())
        throw Error("internal: longitude of component " + std::to_string(component) +
                    " is not in the kernel of the reduced Crowell map");
    return chi;
}

// ---- determinants and gcds over Z[t] ----

namespace {

// exact division, used by the fraction-free elimination below
LaurentPoly exact_div(const LaurentPoly& num, const LaurentPoly& den) {
    if (den.is_zero()) throw DomainError("division by zero polynomial");
    LaurentPoly q(num.num_vars());
    LaurentPoly r = num;
    size_t guard = num.term_count() * den.term_count() + r.term_count() + 16;
    while (!r.is_zero()) {
        const auto& [re, rc] = *r.terms().rbegin();
        const auto& [de, dc] = *den.terms().rbegin();
        if (rc % dc != 0) throw DomainError("inexact polynomial division");
        LaurentPoly::Exps e(re.size());
        for (size_t i = 0; i < re.size(); ++i) e[i] = re[i] - de[i];
        LaurentPoly term = LaurentPoly::monomial(num.num_vars(), e, rc / dc);
        q += term;
        r -= term * den;
        if (guard-- == 0) throw DomainError("inexact polynomial division");
    }
    return q;
}

Int content(const LaurentPoly& p) {
    Int g = 0;
    for (const auto& [e, c] : p.terms()) g = boost::multiprecision::gcd(g, c < 0 ? Int(-c) : c);
    return g;
}

// p as a plain polynomial vector (after dropping the t-power unit), low first
std::vector<Int> poly_coeffs(const LaurentPoly& p) {
    int lo = p.min_degree(), hi = p.max_degree();
    std::vector<Int> v(hi - lo + 1, 0);
    for (const auto& [e, c] : p.terms()) v[e[0] - lo] = c;
    return v;
}

LaurentPoly from_coeffs(const std::vector<Int>& v) {
    LaurentPoly p(1);
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) p += LaurentPoly::monomial(1, {static_cast<int>(i)}, v[i]);
    return p;
}

std::vector<Int> primitive(std::vector<Int> v) {
    Int g = 0;
    for (const auto& c : v) g = boost::multiprecision::gcd(g, c < 0 ? Int(-c) : c);
    if (g > 1)
        for (auto& c : v) c /= g;
    return v;
}

int deg(const std::vector<Int>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i)
        if (v[i] != 0) return i;
    return -1;
}

// pseudo-remainder of a by b (deg a >= deg b >= 0)
std::vector<Int> prem(std::vector<Int> a, const std::vector<Int>& b) {
    int da = deg(a), db = deg(b);
    const Int& lb = b[db];
    while (da >= db && da >= 0) {
        Int la = a[da];
        for (int i = 0; i <= da; ++i) a[i] *= lb;
        for (int i = 0; i <= db; ++i) a[da - db + i] -= la * b[i];
        a.resize(da);  // top coefficient cancelled
        da = deg(a);
    }
    return a;
}

}  // namespace

LaurentPoly normalize_poly(const LaurentPoly& p) {
    if (p.is_zero()) return p;
    LaurentPoly shifted = p * LaurentPoly::monomial(1, {-p.min_degree()}, 1);
    if (shifted.terms().rbegin()->second < 0) shifted = -shifted;
    return shifted;
}

LaurentPoly gcd_zt(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.num_vars() != 1 || b.num_vars() != 1) throw DomainError("gcd_zt needs one-variable polynomials");
    if (a.is_zero()) return normalize_poly(b);
    if (b.is_zero()) return normalize_poly(a);
    Int cg = boost::multiprecision::gcd(content(a), content(b));
    std::vector<Int> u = primitive(poly_coeffs(a));
    std::vector<Int> v = primitive(poly_coeffs(b));
    if (deg(u) < deg(v)) std::swap(u, v);
    while (deg(v) >= 0) {
        std::vector<Int> r = prem(u, v);
        u = std::move(v);
        v = primitive(std::move(r));
    }
    // u is the primitive gcd (a constant vector means coprime parts)
    if (deg(u) == 0) u = {Int(1)};
    LaurentPoly g = from_coeffs(u) * LaurentPoly::constant(1, cg);
    return normalize_poly(g);
}

LaurentPoly poly_det(const std::vector<std::vector<LaurentPoly>>& m, int num_vars) {
    size_t n = m.size();
    if (n == 0) return LaurentPoly::constant(num_vars, 1);
    // Bareiss fraction-free elimination; divisions are exact over a domain.
    std::vector<std::vector<LaurentPoly>> a = m;
    LaurentPoly prev = LaurentPoly::constant(num_vars, 1);
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k].is_zero()) {
            size_t piv = k + 1;
            while (piv < n && a[piv][k].is_zero()) ++piv;
            if (piv == n) return LaurentPoly(num_vars);  // zero column, det 0
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                LaurentPoly num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                a[i][j] = exact_div(num, prev);
            }
            a[i][k] = LaurentPoly(num_vars);
        }
        prev = a[k][k];
    }
    LaurentPoly det = a[n - 1][n - 1];
    if (sign < 0) det = -det;
    return det;
}

namespace {

// all k-subsets of {0..n-1} in lexicographic order
void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
    if (k > n) return;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

LaurentPoly alexander_polynomial(const PresentedModule& m) {
    if (m.num_vars != 1)
        throw DomainError("alexander_polynomial is defined for one-variable presentations");
    int g = static_cast<int>(m.gens.size());
    int r = static_cast<int>(m.rows.size());
    int k = g - 1;
    if (r < k) return LaurentPoly(1);  // deficient presentation
    if (k == 0) return LaurentPoly::constant(1, 1);
    LaurentPoly gcd(1);
    bool unit_reached = false;
    for_each_subset(r, k, [&](const std::vector<int>& rows_idx) {
        if (unit_reached) return;
        for_each_subset(g, k, [&](const std::vector<int>& cols_idx) {
            if (unit_reached) return;
            std::vector<std::vector<LaurentPoly>> sub(k, std::vector<LaurentPoly>(k, LaurentPoly(1)));
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) sub[i][j] = m.rows[rows_idx[i]][cols_idx[j]];
            LaurentPoly d = poly_det(sub, 1);
            gcd = gcd_zt(gcd, d);
            if (gcd == LaurentPoly::constant(1, 1)) unit_reached = true;
        });
    });
    return gcd;
}

std::string presentation_table(const PresentedModule& m) {
    std::vector<std::vector<std::string>> cells;
    std::vector<std::string> header;
    header.push_back("");
    for (const auto& g : m.gens) header.push_back(g);
    cells.push_back(header);
    for (size_t i = 0; i < m.rows.size(); ++i) {
        std::vector<std::string> row;
        row.push_back(m.row_labels.size() > i ? m.row_labels[i] : "r" + std::to_string(i));
        for (const auto& c : m.rows[i]) row.push_back(c.str());
        cells.push_back(row);
    }
    std::vector<size_t> width(cells[0].size(), 0);
    for (const auto& row : cells)
        for (size_t j = 0; j < row.size(); ++j) width[j] = std::max(width[j], row[j].size());
    std::ostringstream out;
    for (const auto& row : cells) {
        for (size_t j = 0; j < row.size(); ++j) {
            out << row[j] << std::string(width[j] - row[j].size(), ' ');
            out << (j + 1 < row.size() ? "  " : "");
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace qk
