#include "quandlekit/finquot.hpp"

#include <algorithm>
#include <sstream>

namespace qk {

// ---- F_p[t] helpers (dense coefficient vectors, low power first) ----

namespace {

int pdeg(const std::vector<int>& a) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (a[i]) return i;
    return -1;
}

std::vector<int> ptrim(std::vector<int> a) {
    a.resize(static_cast<size_t>(pdeg(a) + 1));
    return a;
}

std::vector<int> pmul(const std::vector<int>& a, const std::vector<int>& b, int p) {
    if (pdeg(a) < 0 || pdeg(b) < 0) return {};
    std::vector<int> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = fp_norm(r[i + j] + static_cast<long long>(a[i]) * b[j], p);
    }
    return ptrim(r);
}

// remainder of a modulo monic-leading b
std::vector<int> pmod(std::vector<int> a, const std::vector<int>& b, int p) {
    int db = pdeg(b);
    if (db < 0) throw DomainError("division by zero polynomial");
    int lead_inv = fp_inv(b[db], p);
    for (int da = pdeg(a); da >= db; da = pdeg(a)) {
        int f = fp_norm(static_cast<long long>(a[da]) * lead_inv, p);
        for (int i = 0; i <= db; ++i)
            a[da - db + i] = fp_norm(a[da - db + i] - static_cast<long long>(f) * b[i], p);
    }
    return ptrim(a);
}

std::vector<int> pgcd(std::vector<int> a, std::vector<int> b, int p) {
    while (pdeg(b) >= 0) {
        a = pmod(a, b, p);
        std::swap(a, b);
    }
    int d = pdeg(a);
    if (d >= 0) {
        int inv = fp_inv(a[d], p);
        for (auto& c : a) c = fp_norm(static_cast<long long>(c) * inv, p);
    }
    return ptrim(a);
}

// extended euclid: returns g and u with u*a = g mod m (g monic)
std::pair<std::vector<int>, std::vector<int>> pxgcd(std::vector<int> a, std::vector<int> m, int p) {
    std::vector<int> u = {1}, v = {};
    while (pdeg(m) >= 0) {
        // a = q*m + r
        std::vector<int> r = a;
        std::vector<int> qpoly;
        int dm = pdeg(m);
        int lead_inv = fp_inv(m[dm], p);
        for (int dr = pdeg(r); dr >= dm; dr = pdeg(r)) {
            int f = fp_norm(static_cast<long long>(r[dr]) * lead_inv, p);
            if (static_cast<int>(qpoly.size()) < dr - dm + 1) qpoly.resize(dr - dm + 1, 0);
            qpoly[dr - dm] = f;
            for (int i = 0; i <= dm; ++i)
                r[dr - dm + i] = fp_norm(r[dr - dm + i] - static_cast<long long>(f) * m[i], p);
        }
        // (a, m) <- (m, r); (u, v) <- (v, u - q v)
        std::vector<int> qv = pmul(qpoly, v, p);
        std::vector<int> nu = v;
        std::vector<int> nv = u;
        if (nv.size() < qv.size()) nv.resize(qv.size(), 0);
        for (size_t i = 0; i < qv.size(); ++i) nv[i] = fp_norm(nv[i] - qv[i], p);
        a = std::move(m);
        m = ptrim(r);
        u = std::move(nu);
        v = ptrim(nv);
    }
    int d = pdeg(a);
    if (d >= 0) {
        int inv = fp_inv(a[d], p);
        for (auto& c : a) c = fp_norm(static_cast<long long>(c) * inv, p);
        for (auto& c : u) c = fp_norm(static_cast<long long>(c) * inv, p);
    }
    return {ptrim(a), ptrim(u)};
}

std::vector<int> pfit(std::vector<int> a, int len) {
    a.resize(len, 0);
    return a;
}

}  // namespace

// ---- FiniteRing ----

FiniteRing::FiniteRing(int p_, std::vector<int> q_) : p(p_), q(std::move(q_)) {
    if (!is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
    for (auto& c : q) c = fp_norm(c, p);
    while (q.size() > 1 && q.back() == 0) q.pop_back();
    if (q.size() < 2) throw DomainError("modulus must have degree >= 1");
    if (q.back() != 1) throw DomainError("modulus must be monic");
    if (q[0] == 0) throw DomainError("modulus must have nonzero constant term (t must be a unit)");
}

FiniteRing FiniteRing::parse(int p, const std::string& q_text) {
    LaurentPoly poly = LaurentPoly::parse(q_text, 1);
    if (poly.is_zero() || poly.min_degree() < 0)
        throw DomainError("modulus must be an honest polynomial in t");
    std::vector<int> q(poly.max_degree() + 1, 0);
    for (const auto& [e, c] : poly.terms()) q[e[0]] = fp_norm(static_cast<long long>(c % p), p);
    return FiniteRing(p, q);
}

RElem FiniteRing::one() const {
    RElem r = zero();
    r[0] = 1;
    return r;
}

RElem FiniteRing::t() const {
    RElem r = zero();
    if (degree() == 1)
        r[0] = fp_norm(-q[0], p);
    else
        r[1] = 1;
    return r;
}

RElem FiniteRing::t_inverse() const {
    // t * (q1 + q2 t + ... + t^{d-1}) = -q0, so invert -q0
    int d = degree();
    RElem r(d, 0);
    int c = fp_inv(fp_norm(-q[0], p), p);
    for (int k = 0; k < d; ++k) r[k] = fp_norm(static_cast<long long>(c) * q[k + 1], p);
    return r;
}

RElem FiniteRing::from_int(long long n) const {
    RElem r = zero();
    r[0] = fp_norm(n, p);
    return r;
}

RElem FiniteRing::mul(const RElem& a, const RElem& b) const {
    return pfit(pmod(pmul(a, b, p), q, p), degree());
}

RElem FiniteRing::pow(const RElem& a, int64_t e) const {
    RElem r = one(), base = a;
    while (e > 0) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

RElem FiniteRing::from_laurent(const LaurentPoly& poly) const {
    if (poly.num_vars() != 1) throw DomainError("ring specialization needs a one-variable polynomial");
    RElem tinv = t_inverse();
    RElem tt = t();
    RElem r = zero();
    for (const auto& [e, c] : poly.terms()) {
        long long cm = static_cast<long long>(c % p);
        RElem term = from_int(cm);
        int k = e[0];
        term = mul(term, k >= 0 ? pow(tt, k) : pow(tinv, -k));
        r = add(r, term);
    }
    return r;
}

bool FiniteRing::is_unit(const RElem& a) const {
    return pdeg(pgcd(a, q, p)) == 0;
}

RElem FiniteRing::inv(const RElem& a) const {
    auto [g, u] = pxgcd(a, q, p);
    if (pdeg(g) != 0) throw DomainError("not a unit in " + label() + ": " + elem_str(a));
    return pfit(u, degree());
}

bool FiniteRing::q_has_root_one() const {
    long long s = 0;
    for (int c : q) s += c;
    return fp_norm(s, p) == 0;
}

std::string FiniteRing::elem_str(const RElem& a) const {
    LaurentPoly poly(1);
    for (size_t k = 0; k < a.size(); ++k)
        if (a[k]) poly += LaurentPoly::monomial(1, {static_cast<int>(k)}, a[k]);
    return poly.str();
}

std::string FiniteRing::q_str() const {
    LaurentPoly poly(1);
    for (size_t k = 0; k < q.size(); ++k)
        if (q[k]) poly += LaurentPoly::monomial(1, {static_cast<int>(k)}, q[k]);
    std::string s = poly.str();
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    return s;
}

std::string FiniteRing::label() const { return "F_" + std::to_string(p) + "[t]/(" + q_str() + ")"; }

std::vector<FiniteRing> default_rings() {
    return {
        FiniteRing(2, {1, 1, 1}),  // F_4
        FiniteRing(2, {1, 0, 1}),  // (t+1)^2: t-1 nilpotent, q(1)=0
        FiniteRing(3, {1, 1}),     // t = -1
        FiniteRing(5, {3, 1}),     // t = 2
        FiniteRing(5, {2, 2, 1}),  // (t-1)(t-2): q(1)=0, semisimple
        FiniteRing(7, {4, 1}),     // t = 3
    };
}

// ---- FiniteModule ----

uint64_t FiniteModule::card() const {
    uint64_t c = 1;
    for (int i = 0; i < dim; ++i) {
        if (c > (uint64_t(1) << 62) / static_cast<uint64_t>(ring.p)) return uint64_t(1) << 63;
        c *= static_cast<uint64_t>(ring.p);
    }
    return c;
}

bool FiniteModule::satisfies_modulus() const {
    FpMat acc(ring.p, dim, dim);
    FpMat power = FpMat::identity(ring.p, dim);
    for (size_t k = 0; k < ring.q.size(); ++k) {
        if (ring.q[k]) {
            for (size_t i = 0; i < acc.a.size(); ++i)
                acc.a[i] = fp_norm(acc.a[i] + static_cast<long long>(ring.q[k]) * power.a[i], ring.p);
        }
        if (k + 1 < ring.q.size()) power = power * t_act;
    }
    return acc == FpMat(ring.p, dim, dim);
}

FpVec FiniteModule::scalar(const RElem& r, const FpVec& v) const {
    FpVec acc(dim, 0);
    FpVec power = v;  // t^k v
    for (size_t k = 0; k < r.size(); ++k) {
        if (r[k]) acc = fp_add(acc, fp_scale(r[k], power, ring.p), ring.p);
        if (k + 1 < r.size()) power = t_act.apply(power);
    }
    return acc;
}

FpVec FiniteModule::apply_laurent(const LaurentPoly& poly, const FpVec& v) const {
    return scalar(ring.from_laurent(poly), v);
}

void FiniteModule::for_each_element(const std::function<void(const FpVec&)>& fn) const {
    FpVec v(dim, 0);
    while (true) {
        fn(v);
        int i = dim - 1;
        while (i >= 0) {
            if (++v[i] < ring.p) break;
            v[i] = 0;
            --i;
        }
        if (i < 0) break;
    }
}

std::vector<int> FiniteModule::min_poly(const FpVec& v) const {
    // reduce iterates t^j v, tracking the combination over earlier iterates
    std::vector<FpVec> rows;    // reduced iterates (nonzero)
    std::vector<int> row_piv;
    std::vector<FpVec> combos;  // combos[i][j] = coefficient of iterate j
    FpVec iter = v;
    int maxit = dim + 1;
    for (int j = 0; j <= maxit; ++j) {
        FpVec r = iter;
        FpVec combo(static_cast<size_t>(j) + 1, 0);
        combo[j] = 1;
        for (size_t k = 0; k < rows.size(); ++k) {
            int c = r[row_piv[k]];
            if (!c) continue;
            r = fp_sub(r, fp_scale(c, rows[k], ring.p), ring.p);
            for (size_t i = 0; i < combos[k].size(); ++i)
                combo[i] = fp_norm(combo[i] - static_cast<long long>(c) * combos[k][i], ring.p);
        }
        if (fp_is_zero(r)) {
            // monic by construction: combo[j] stayed 1
            return ptrim(combo).empty() ? std::vector<int>{1} : ptrim(combo);
        }
        int piv = 0;
        while (r[piv] == 0) ++piv;
        int inv = fp_inv(r[piv], ring.p);
        rows.push_back(fp_scale(inv, r, ring.p));
        row_piv.push_back(piv);
        combos.push_back(fp_scale(inv, combo, ring.p));
        iter = t_act.apply(iter);
    }
    throw Error("internal: min_poly did not terminate");
}

FiniteModule ring_as_module(const FiniteRing& R) {
    int d = R.degree();
    FiniteModule M;
    M.ring = R;
    M.dim = d;
    M.t_act = FpMat(R.p, d, d);
    for (int s = 0; s + 1 < d; ++s) M.t_act.at(s + 1, s) = 1;
    for (int k = 0; k < d; ++k) M.t_act.at(k, d - 1) = fp_norm(-R.q[k], R.p);
    auto inv = M.t_act.inverse();
    if (!inv) throw Error("internal: companion matrix not invertible");
    M.t_inv = *inv;
    for (int k = 0; k < d; ++k) M.labels.push_back(k == 0 ? "1" : (k == 1 ? "t" : "t^" + std::to_string(k)));
    return M;
}

FiniteModule trivial_module(const FiniteRing& R, int n, const std::string& label_prefix) {
    FiniteModule M;
    M.ring = R;
    M.dim = n;
    M.t_act = FpMat::identity(R.p, n);
    M.t_inv = M.t_act;
    for (int i = 0; i < n; ++i) M.labels.push_back(label_prefix + std::to_string(i + 1));
    return M;
}

FiniteModule product_module(const FiniteModule& a, const FiniteModule& b) {
    if (!(a.ring == b.ring)) throw DomainError("product of modules over different rings");
    FiniteModule M;
    M.ring = a.ring;
    M.dim = a.dim + b.dim;
    M.t_act = FpMat(M.ring.p, M.dim, M.dim);
    M.t_inv = FpMat(M.ring.p, M.dim, M.dim);
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) {
            M.t_act.at(i, j) = a.t_act.at(i, j);
            M.t_inv.at(i, j) = a.t_inv.at(i, j);
        }
    for (int i = 0; i < b.dim; ++i)
        for (int j = 0; j < b.dim; ++j) {
            M.t_act.at(a.dim + i, a.dim + j) = b.t_act.at(i, j);
            M.t_inv.at(a.dim + i, a.dim + j) = b.t_inv.at(i, j);
        }
    M.labels = a.labels;
    for (const auto& l : b.labels) M.labels.push_back(l);
    return M;
}

bool FiniteMap::commutes_with_t() const { return mat * src.t_act == dst.t_act * mat; }

// ---- submodules ----

bool Submodule::contains(const FpVec& v) const {
    if (basis.rows == 0) return fp_is_zero(v);
    return fp_is_zero(reduce_against(basis, pivots, v));
}

Submodule span_of(int p, int ambient_dim, const std::vector<FpVec>& vectors) {
    FpMat m = FpMat::from_rows(p, vectors);
    if (m.rows == 0) m.cols = ambient_dim;
    auto pivots = m.rref();
    FpMat basis(p, static_cast<int>(pivots.size()), ambient_dim);
    for (int i = 0; i < basis.rows; ++i)
        for (int j = 0; j < ambient_dim; ++j) basis.at(i, j) = m.at(i, j);
    return Submodule{basis, pivots};
}

bool is_t_stable(const FiniteModule& M, const Submodule& S) {
    for (int i = 0; i < S.basis.rows; ++i)
        if (!S.contains(M.t_act.apply(S.basis.row(i)))) return false;
    return true;
}

// ---- specialization ----

FpVec Specialization::class_of_expanded(const FpVec& v) const {
    FpVec r = reduce_against(reducer, reducer_pivots, v);
    FpVec out(free_cols.size(), 0);
    for (size_t i = 0; i < free_cols.size(); ++i) out[i] = r[free_cols[i]];
    return out;
}

FpVec Specialization::class_of(const ModuleElement& x) const {
    int d = mod.ring.degree();
    FpVec expanded(gen_pos.size() * static_cast<size_t>(d), 0);
    for (const auto& [gen, poly] : x.coeffs) {
        auto it = gen_pos.find(gen);
        if (it == gen_pos.end()) throw DomainError("element references unknown generator " + gen);
        RElem c = mod.ring.from_laurent(poly);
        for (int k = 0; k < d; ++k)
            expanded[static_cast<size_t>(it->second) * d + k] =
                fp_norm(expanded[static_cast<size_t>(it->second) * d + k] + c[k], mod.ring.p);
    }
    return class_of_expanded(expanded);
}

FiniteMap Specialization::map_to_ring(const std::map<std::string, LaurentPoly>& values) const {
    const FiniteRing& R = mod.ring;
    int d = R.degree();
    FiniteModule target = ring_as_module(R);
    // expanded map on the free module: column (gen j, power s) = t^s * value_j
    FpMat ex(R.p, d, static_cast<int>(gen_pos.size()) * d);
    for (const auto& [gen, j] : gen_pos) {
        auto it = values.find(gen);
        if (it == values.end()) throw DomainError("no value for generator " + gen);
        RElem val = R.from_laurent(it->second);
        for (int s = 0; s < d; ++s) {
            for (int k = 0; k < d; ++k) ex.at(k, j * d + s) = val[k];
            val = R.mul(val, R.t());
        }
    }
    // well-definedness: the map must kill the relation rows
    for (int i = 0; i < reducer.rows; ++i) {
        if (!fp_is_zero(ex.apply(reducer.row(i))))
            throw DomainError("values do not define a map on the quotient (a relation row has nonzero image)");
    }
    FiniteMap f;
    f.src = mod;
    f.dst = target;
    f.mat = FpMat(R.p, d, mod.dim);
    for (int b = 0; b < mod.dim; ++b) {
        FpVec e(ex.cols, 0);
        e[free_cols[b]] = 1;
        FpVec img = ex.apply(e);
        for (int k = 0; k < d; ++k) f.mat.at(k, b) = img[k];
    }
    if (!f.commutes_with_t()) throw Error("internal: ring-valued map does not commute with t");
    return f;
}

FiniteMap Specialization::map_phi_tau(const CrowellData& cd) const {
    if (!cd.reduced) throw DomainError("map_phi_tau needs reduced Crowell data");
    const FiniteRing& R = mod.ring;
    int d = R.degree();
    // the tail lives in Z^{mu-1} with t acting trivially, so its base change
    // to R is (R/(t-1)R)^{mu-1}: zero unless q(1) = 0
    int tail = cd.ztail.empty() ? 0 : static_cast<int>(cd.ztail.begin()->second.size());
    if (!R.q_has_root_one()) tail = 0;
    FiniteModule target = product_module(ring_as_module(R), trivial_module(R, tail));
    FpMat ex(R.p, d + tail, static_cast<int>(gen_pos.size()) * d);
    for (const auto& [gen, j] : gen_pos) {
        RElem val = R.from_laurent(cd.phi.at(gen));
        const auto& z = cd.ztail.at(gen);
        for (int s = 0; s < d; ++s) {
            for (int k = 0; k < d; ++k) ex.at(k, j * d + s) = val[k];
            // the tail is a trivial module: t^s acts as the identity there
            for (int k = 0; k < tail; ++k) ex.at(d + k, j * d + s) = fp_norm(z[k], R.p);
            val = R.mul(val, R.t());
        }
    }
    for (int i = 0; i < reducer.rows; ++i)
        if (!fp_is_zero(ex.apply(reducer.row(i))))
            throw Error("internal: phi_tau does not kill the relations");
    FiniteMap f;
    f.src = mod;
    f.dst = target;
    f.mat = FpMat(R.p, d + tail, mod.dim);
    for (int b = 0; b < mod.dim; ++b) {
        FpVec e(ex.cols, 0);
        e[free_cols[b]] = 1;
        FpVec img = ex.apply(e);
        for (int k = 0; k < d + tail; ++k) f.mat.at(k, b) = img[k];
    }
    if (!f.commutes_with_t()) throw Error("internal: phi_tau map does not commute with t");
    return f;
}

Specialization specialize(const PresentedModule& m, const FiniteRing& R) {
    if (m.num_vars != 1) throw DomainError("specialize needs a one-variable presentation");
    int d = R.degree();
    int g = static_cast<int>(m.gens.size());
    int r = static_cast<int>(m.rows.size());
    FpMat A(R.p, r * d, g * d);
    for (int i = 0; i < r; ++i) {
        std::vector<RElem> coeffs(g);
        for (int j = 0; j < g; ++j) coeffs[j] = R.from_laurent(m.rows[i][j]);
        for (int s = 0; s < d; ++s) {
            for (int j = 0; j < g; ++j)
                for (int k = 0; k < d; ++k) A.at(i * d + s, j * d + k) = coeffs[j][k];
            if (s + 1 < d)
                for (int j = 0; j < g; ++j) coeffs[j] = R.mul(coeffs[j], R.t());
        }
    }
    auto pivots = A.rref();
    Specialization sp;
    for (int j = 0; j < g; ++j) sp.gen_pos[m.gens[j]] = j;
    sp.reducer = FpMat(R.p, static_cast<int>(pivots.size()), g * d);
    for (int i = 0; i < sp.reducer.rows; ++i)
        for (int j = 0; j < g * d; ++j) sp.reducer.at(i, j) = A.at(i, j);
    sp.reducer_pivots = pivots;
    std::vector<bool> is_pivot(static_cast<size_t>(g) * d, false);
    for (int c : pivots) is_pivot[c] = true;
    for (int c = 0; c < g * d; ++c)
        if (!is_pivot[c]) sp.free_cols.push_back(c);

    FiniteModule& M = sp.mod;
    M.ring = R;
    M.dim = static_cast<int>(sp.free_cols.size());
    M.t_act = FpMat(R.p, M.dim, M.dim);
    for (int b = 0; b < M.dim; ++b) {
        int col = sp.free_cols[b];
        int j = col / d, s = col % d;
        FpVec tv(static_cast<size_t>(g) * d, 0);
        if (s + 1 < d) {
            tv[j * d + s + 1] = 1;
        } else {
            for (int k = 0; k < d; ++k) tv[j * d + k] = fp_norm(-R.q[k], R.p);
        }
        FpVec cls = sp.class_of_expanded(tv);
        for (int i = 0; i < M.dim; ++i) M.t_act.at(i, b) = cls[i];
    }
    auto inv = M.t_act.inverse();
    if (!inv) throw Error("internal: t does not act invertibly on the specialized module");
    M.t_inv = *inv;
    for (int c : sp.free_cols) {
        int j = c / d, s = c % d;
        M.labels.push_back(s == 0 ? m.gens[j] : m.gens[j] + "*t^" + std::to_string(s));
    }
    return sp;
}

// ---- submodule operations ----

Submodule kernel(const FiniteMap& f) {
    if (!f.commutes_with_t()) throw DomainError("kernel: map does not commute with the t-action");
    FpMat ns = f.mat.nullspace();
    std::vector<FpVec> rows;
    for (int i = 0; i < ns.rows; ++i) rows.push_back(ns.row(i));
    Submodule S = span_of(f.src.ring.p, f.src.dim, rows);
    if (!is_t_stable(f.src, S)) throw Error("internal: kernel of a t-map is not t-stable");
    return S;
}

Submodule annihilator(const FiniteModule& M, const LaurentPoly& poly) {
    if (poly.num_vars() != 1) throw DomainError("annihilator needs a one-variable polynomial");
    FpMat op(M.ring.p, M.dim, M.dim);
    for (int b = 0; b < M.dim; ++b) {
        FpVec e(M.dim, 0);
        e[b] = 1;
        FpVec img = M.apply_laurent(poly, e);
        for (int i = 0; i < M.dim; ++i) op.at(i, b) = img[i];
    }
    FpMat ns = op.nullspace();
    std::vector<FpVec> rows;
    for (int i = 0; i < ns.rows; ++i) rows.push_back(ns.row(i));
    Submodule S = span_of(M.ring.p, M.dim, rows);
    if (!is_t_stable(M, S)) throw Error("internal: annihilator is not t-stable");
    return S;
}

Submodule ann_in(const FiniteModule& M, const Submodule& N, const LaurentPoly& poly) {
    FiniteMap incl;
    FiniteModule sub = submodule_as_module(M, N, &incl);
    Submodule a = annihilator(sub, poly);
    std::vector<FpVec> rows;
    for (int i = 0; i < a.basis.rows; ++i) rows.push_back(incl.mat.apply(a.basis.row(i)));
    return span_of(M.ring.p, M.dim, rows);
}

Submodule generated_submodule(const FiniteModule& M, const std::vector<FpVec>& gens) {
    std::vector<FpVec> rows = gens;
    Submodule S = span_of(M.ring.p, M.dim, rows);
    while (true) {
        bool grew = false;
        std::vector<FpVec> next;
        for (int i = 0; i < S.basis.rows; ++i) {
            FpVec tv = M.t_act.apply(S.basis.row(i));
            if (!S.contains(tv)) {
                next.push_back(tv);
                grew = true;
            }
        }
        if (!grew) break;
        for (int i = 0; i < S.basis.rows; ++i) next.push_back(S.basis.row(i));
        S = span_of(M.ring.p, M.dim, next);
    }
    return S;
}

Submodule image_of_submodule(const FiniteModule& M, const FpMat& op, const Submodule& S) {
    std::vector<FpVec> rows;
    for (int i = 0; i < S.basis.rows; ++i) rows.push_back(op.apply(S.basis.row(i)));
    return span_of(M.ring.p, M.dim, rows);
}

QuotientModule quotient(const FiniteModule& M, const Submodule& N) {
    if (!is_t_stable(M, N)) throw DomainError("quotient: the submodule is not t-stable");
    std::vector<bool> is_pivot(M.dim, false);
    for (int c : N.pivots) is_pivot[c] = true;
    std::vector<int> free;
    for (int c = 0; c < M.dim; ++c)
        if (!is_pivot[c]) free.push_back(c);
    QuotientModule Q;
    Q.mod.ring = M.ring;
    Q.mod.dim = static_cast<int>(free.size());
    Q.proj = FpMat(M.ring.p, Q.mod.dim, M.dim);
    for (int b = 0; b < M.dim; ++b) {
        FpVec e(M.dim, 0);
        e[b] = 1;
        FpVec r = N.basis.rows ? reduce_against(N.basis, N.pivots, e) : e;
        for (size_t i = 0; i < free.size(); ++i) Q.proj.at(static_cast<int>(i), b) = r[free[i]];
    }
    Q.mod.t_act = FpMat(M.ring.p, Q.mod.dim, Q.mod.dim);
    for (size_t i = 0; i < free.size(); ++i) {
        FpVec e(M.dim, 0);
        e[free[i]] = 1;
        FpVec img = Q.proj.apply(M.t_act.apply(e));
        for (int k = 0; k < Q.mod.dim; ++k) Q.mod.t_act.at(k, static_cast<int>(i)) = img[k];
    }
    auto inv = Q.mod.t_act.inverse();
    if (!inv) throw Error("internal: t not invertible on quotient");
    Q.mod.t_inv = *inv;
    for (int c : free) Q.mod.labels.push_back(M.labels.empty() ? "e" + std::to_string(c) : M.labels[c]);
    return Q;
}

FiniteModule submodule_as_module(const FiniteModule& M, const Submodule& S, FiniteMap* inclusion) {
    if (!is_t_stable(M, S)) throw DomainError("submodule is not t-stable");
    int k = S.dim();
    FiniteModule sub;
    sub.ring = M.ring;
    sub.dim = k;
    sub.t_act = FpMat(M.ring.p, k, k);
    for (int i = 0; i < k; ++i) {
        auto coords = coords_in_rowspace(S.basis, S.pivots, M.t_act.apply(S.basis.row(i)));
        if (!coords) throw Error("internal: t image escaped the submodule");
        for (int j = 0; j < k; ++j) sub.t_act.at(j, i) = (*coords)[j];
    }
    auto inv = sub.t_act.inverse();
    if (!inv) throw Error("internal: t not invertible on submodule");
    sub.t_inv = *inv;
    for (int i = 0; i < k; ++i) sub.labels.push_back("b" + std::to_string(i + 1));
    if (inclusion) {
        inclusion->src = sub;
        inclusion->dst = M;
        inclusion->mat = S.basis.transpose();
        if (!inclusion->commutes_with_t()) throw Error("internal: inclusion does not commute with t");
    }
    return sub;
}

// ---- isomorphism search ----

namespace {

std::string poly_key(const std::vector<int>& v) {
    std::string s;
    for (int c : v) s += std::to_string(c) + ",";
    return s;
}

struct IsoSearcher {
    const FiniteModule& A;
    const FiniteModule& B;
    const IsoConstraints& cons;
    const SearchBudget& budget;
    int64_t nodes = 0;

    std::vector<FpVec> gens;                  // generators of A (forced first)
    std::vector<std::vector<FpVec>> cand;     // candidate images per generator

    // DFS state: domain rows + images, echelonized domain with pivots
    std::vector<FpVec> dom_rows, img_rows;
    std::vector<int> dom_piv;
    std::vector<FpVec> img_ech;
    std::vector<int> img_piv;

    explicit IsoSearcher(const FiniteModule& a, const FiniteModule& b, const IsoConstraints& c,
                         const SearchBudget& bud)
        : A(a), B(b), cons(c), budget(bud) {}

    // adds v -> w and the whole t-orbit of v; first = consistency,
    // second = rows added (rolled back by the caller on failure)
    std::pair<bool, int> extend(const FpVec& v0, const FpVec& w0) {
        int added = 0;
        FpVec v = v0, w = w0;
        while (true) {
            FpVec r = v, s = w;
            for (size_t k = 0; k < dom_rows.size(); ++k) {
                int c = r[dom_piv[k]];
                if (!c) continue;
                r = fp_sub(r, fp_scale(c, dom_rows[k], A.ring.p), A.ring.p);
                s = fp_sub(s, fp_scale(c, img_rows[k], A.ring.p), A.ring.p);
            }
            if (fp_is_zero(r)) {
                if (!fp_is_zero(s)) return {false, added};  // conflicting image
                break;
            }
            // normalize and store
            int piv = 0;
            while (r[piv] == 0) ++piv;
            int inv = fp_inv(r[piv], A.ring.p);
            r = fp_scale(inv, r, A.ring.p);
            s = fp_scale(inv, s, A.ring.p);
            // injectivity: the image must stay independent
            FpVec si = s;
            for (size_t k = 0; k < img_ech.size(); ++k) {
                int c = si[img_piv[k]];
                if (c) si = fp_sub(si, fp_scale(c, img_ech[k], A.ring.p), A.ring.p);
            }
            if (fp_is_zero(si)) return {false, added};  // rank drop
            int ipiv = 0;
            while (si[ipiv] == 0) ++ipiv;
            si = fp_scale(fp_inv(si[ipiv], A.ring.p), si, A.ring.p);
            dom_rows.push_back(r);
            dom_piv.push_back(piv);
            img_rows.push_back(s);
            img_ech.push_back(si);
            img_piv.push_back(ipiv);
            ++added;
            v = A.t_act.apply(v);
            w = B.t_act.apply(w);
        }
        return {true, added};
    }

    void rollback(int added) {
        for (int i = 0; i < added; ++i) {
            dom_rows.pop_back();
            dom_piv.pop_back();
            img_rows.pop_back();
            img_ech.pop_back();
            img_piv.pop_back();
        }
    }

    bool candidate_ok(const FpVec& g, const FpVec& w) const {
        for (const auto& [S, T] : cons.submodules)
            if (S.contains(g) && !T.contains(w)) return false;
        return true;
    }

    std::optional<FpMat> dfs(size_t gi) {
        if (++nodes > budget.max_nodes) throw BudgetExceeded("isomorphism search exceeded the node budget");
        if (static_cast<int>(dom_rows.size()) == A.dim) return finish();
        if (gi >= gens.size()) return std::nullopt;
        // generator may already be spanned; then its image is determined
        {
            FpVec r = gens[gi];
            for (size_t k = 0; k < dom_rows.size(); ++k) {
                int c = r[dom_piv[k]];
                if (c) r = fp_sub(r, fp_scale(c, dom_rows[k], A.ring.p), A.ring.p);
            }
            if (fp_is_zero(r)) return dfs(gi + 1);
        }
        for (const FpVec& w : cand[gi]) {
            if (!candidate_ok(gens[gi], w)) continue;
            auto [ok, added] = extend(gens[gi], w);
            if (ok) {
                auto result = dfs(gi + 1);
                if (result) return result;
            }
            rollback(added);
        }
        return std::nullopt;
    }

    std::optional<FpMat> finish() {
        int n = A.dim;
        FpMat D = FpMat::from_rows(A.ring.p, dom_rows);
        FpMat I = FpMat::from_rows(A.ring.p, img_rows);
        auto Dinv = D.transpose().inverse();
        if (!Dinv) return std::nullopt;
        FpMat F = I.transpose() * (*Dinv);
        // post-hoc verification
        if (F.rank() != n) return std::nullopt;
        if (!(F * A.t_act == B.t_act * F)) return std::nullopt;
        for (const auto& [x, y] : cons.elements)
            if (F.apply(x) != y) return std::nullopt;
        for (const auto& [S, T] : cons.submodules) {
            if (S.dim() != T.dim()) return std::nullopt;
            for (int i = 0; i < S.basis.rows; ++i)
                if (!T.contains(F.apply(S.basis.row(i)))) return std::nullopt;
        }
        return F;
    }
};

}  // namespace

std::optional<FpMat> iso_search(const FiniteModule& A, const FiniteModule& B,
                                const IsoConstraints& constraints, const SearchBudget& budget) {
    if (!(A.ring == B.ring)) throw DomainError("iso_search needs modules over the same ring");
    if (A.card() > static_cast<uint64_t>(budget.max_elements) ||
        B.card() > static_cast<uint64_t>(budget.max_elements))
        throw BudgetExceeded("module larger than the element budget (" +
                             std::to_string(budget.max_elements) + ")");
    if (A.dim != B.dim) return std::nullopt;
    for (const auto& [S, T] : constraints.submodules)
        if (S.dim() != T.dim()) return std::nullopt;
    for (const auto& [x, y] : constraints.elements)
        if (A.min_poly(x) != B.min_poly(y)) return std::nullopt;

    IsoSearcher searcher(A, B, constraints, budget);

    // forced assignments first
    for (const auto& [x, y] : constraints.elements) {
        searcher.gens.push_back(x);
        searcher.cand.push_back({y});
    }
    // greedy generating set over the lex enumeration
    {
        std::vector<FpVec> have;
        for (const auto& [x, y] : constraints.elements) have.push_back(x);
        Submodule S = generated_submodule(A, have);
        if (S.dim() < A.dim) {
            A.for_each_element([&](const FpVec& v) {
                if (S.dim() == A.dim) return;
                if (S.contains(v)) return;
                searcher.gens.push_back(v);
                have.push_back(v);
                S = generated_submodule(A, have);
            });
        }
        // candidate images, grouped by cyclic type
        std::map<std::string, std::vector<FpVec>> by_type;
        bool collected = false;
        for (size_t gi = constraints.elements.size(); gi < searcher.gens.size(); ++gi) {
            if (!collected) {
                B.for_each_element([&](const FpVec& w) { by_type[poly_key(B.min_poly(w))].push_back(w); });
                collected = true;
            }
            searcher.cand.push_back(by_type[poly_key(A.min_poly(searcher.gens[gi]))]);
        }
    }
    return searcher.dfs(0);
}

FiniteModule twist_inverse(const FiniteModule& M) {
    int d = M.ring.degree();
    std::vector<int> rq(d + 1);
    int c = fp_inv(M.ring.q[0], M.ring.p);
    for (int k = 0; k <= d; ++k) rq[k] = fp_norm(static_cast<long long>(M.ring.q[d - k]) * c, M.ring.p);
    FiniteModule R = M;
    R.ring = FiniteRing(M.ring.p, rq);
    R.t_act = M.t_inv;
    R.t_inv = M.t_act;
    return R;
}

std::string module_json(const FiniteModule& M) {
    std::ostringstream out;
    out << "{\"schema\":1,\"p\":" << M.ring.p << ",\"q\":\"" << M.ring.q_str() << "\",\"dim\":" << M.dim
        << ",\"t_action\":[";
    for (int i = 0; i < M.dim; ++i) {
        out << (i ? "," : "") << "[";
        for (int j = 0; j < M.dim; ++j) out << (j ? "," : "") << M.t_act.at(i, j);
        out << "]";
    }
    out << "],\"labels\":[";
    for (int i = 0; i < M.dim; ++i) out << (i ? "," : "") << "\"" << M.labels[i] << "\"";
    out << "]}";
    return out.str();
}

}  // namespace qk
