#include "quandlekit/quandle.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace qk {

QuandleCheck check_axioms(const FiniteQuandle& q) {
    QuandleCheck r;
    int n = q.size();
    for (int x = 0; x < n && r.idempotent; ++x)
        if (q.op(x, x) != x) {
            r.idempotent = false;
            r.detail = "x>x != x at x=" + q.elements[x];
        }
    for (int y = 0; y < n && r.right_bijective; ++y) {
        std::vector<bool> hit(n, false);
        for (int x = 0; x < n; ++x) {
            int z = q.op(x, y);
            if (z < 0 || z >= n || hit[z]) {
                r.right_bijective = false;
                r.detail = "translation by " + q.elements[y] + " is not a bijection";
                break;
            }
            hit[z] = true;
        }
    }
    for (int x = 0; x < n && r.self_distributive; ++x)
        for (int y = 0; y < n && r.self_distributive; ++y)
            for (int z = 0; z < n; ++z)
                if (q.op(q.op(x, y), z) != q.op(q.op(x, z), q.op(y, z))) {
                    r.self_distributive = false;
                    r.detail = "self-distributivity fails at (" + q.elements[x] + "," + q.elements[y] +
                               "," + q.elements[z] + ")";
                    break;
                }
    return r;
}

bool check_medial(const FiniteQuandle& q) {
    int n = q.size();
    for (int w = 0; w < n; ++w)
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z)
                    if (q.op(q.op(w, x), q.op(y, z)) != q.op(q.op(w, y), q.op(x, z))) return false;
    return true;
}

FiniteQuandle trivial_quandle(int n) {
    FiniteQuandle q;
    for (int i = 0; i < n; ++i) {
        q.elements.push_back("e" + std::to_string(i + 1));
        q.table.emplace_back(n, i);
    }
    return q;
}

FiniteQuandle conjugation_quandle_s3() {
    // permutations of {0,1,2} as arrays; x > y = y x y^-1
    std::vector<std::array<int, 3>> all;
    std::array<int, 3> perm = {0, 1, 2};
    do {
        all.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    auto compose = [](const std::array<int, 3>& f, const std::array<int, 3>& g) {
        // (f o g)(i) = f[g[i]]
        std::array<int, 3> r{};
        for (int i = 0; i < 3; ++i) r[i] = f[g[i]];
        return r;
    };
    auto inverse = [](const std::array<int, 3>& f) {
        std::array<int, 3> r{};
        for (int i = 0; i < 3; ++i) r[f[i]] = i;
        return r;
    };
    auto index_of = [&](const std::array<int, 3>& f) {
        for (size_t i = 0; i < all.size(); ++i)
            if (all[i] == f) return static_cast<int>(i);
        throw Error("internal: permutation not found");
    };
    FiniteQuandle q;
    for (const auto& f : all) {
        std::string name = "(" + std::to_string(f[0]) + std::to_string(f[1]) + std::to_string(f[2]) + ")";
        q.elements.push_back(name);
    }
    int n = static_cast<int>(all.size());
    q.table.assign(n, std::vector<int>(n, 0));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            q.table[x][y] = index_of(compose(all[y], compose(all[x], inverse(all[y]))));
    return q;
}

// ---- the coset-union medial quandle ----

namespace {

std::string vec_str(const FpVec& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

// all elements of the span of basis rows, in deterministic order
std::vector<FpVec> span_elements(const Submodule& S, int p, int ambient_dim, int64_t max_elements) {
    int k = S.dim();
    uint64_t total = 1;
    for (int i = 0; i < k; ++i) {
        total *= static_cast<uint64_t>(p);
        if (total > static_cast<uint64_t>(max_elements))
            throw BudgetExceeded("submodule has more than " + std::to_string(max_elements) + " elements");
    }
    std::vector<FpVec> out;
    FpVec digits(k, 0);
    while (true) {
        FpVec v(ambient_dim, 0);
        for (int i = 0; i < k; ++i)
            if (digits[i]) v = fp_add(v, fp_scale(digits[i], S.basis.row(i), p), p);
        out.push_back(v);
        int i = k - 1;
        while (i >= 0) {
            if (++digits[i] < p) break;
            digits[i] = 0;
            --i;
        }
        if (i < 0) break;
    }
    return out;
}

}  // namespace

FiniteQuandle build_medial(const MedialInput& inp, const SearchBudget& budget) {
    const FiniteModule& M = inp.ambient;
    int p = M.ring.p;
    if (inp.m.size() != inp.X.size() || inp.m.empty())
        throw DomainError("build_medial needs one m and one X per block");
    if (!is_t_stable(M, inp.N)) throw ValidationError("N is not t-stable");
    size_t blocks = inp.m.size();
    LaurentPoly one_minus_t = LaurentPoly::constant(1, 1) - LaurentPoly::variable(1, 1);
    for (size_t i = 0; i < blocks; ++i) {
        const Submodule& X = inp.X[i];
        if (!is_t_stable(M, X)) throw ValidationError("X_" + std::to_string(i + 1) + " is not t-stable");
        for (int r = 0; r < X.basis.rows; ++r) {
            if (!inp.N.contains(X.basis.row(r)))
                throw ValidationError("X_" + std::to_string(i + 1) + " is not contained in N");
            if (!fp_is_zero(M.apply_laurent(one_minus_t, X.basis.row(r))))
                throw ValidationError("(1-t)X_" + std::to_string(i + 1) + " != 0");
        }
    }
    for (size_t i = 0; i < blocks; ++i)
        for (size_t j = i + 1; j < blocks; ++j)
            if (!inp.N.contains(fp_sub(inp.m[i], inp.m[j], p)))
                throw ValidationError("m_" + std::to_string(i + 1) + " - m_" + std::to_string(j + 1) +
                                      " is not in N (offending pair " + std::to_string(i + 1) + "," +
                                      std::to_string(j + 1) + ")");

    // quandle size check before any enumeration
    uint64_t total = 0;
    for (size_t i = 0; i < blocks; ++i) {
        uint64_t cosets = 1;
        int free_dim = inp.N.dim() - inp.X[i].dim();
        for (int e = 0; e < free_dim; ++e) cosets *= static_cast<uint64_t>(p);
        total += cosets;
        if (total > static_cast<uint64_t>(budget.max_quandle))
            throw BudgetExceeded("medial quandle larger than " + std::to_string(budget.max_quandle) +
                                 " elements");
    }

    auto N_elems = span_elements(inp.N, p, M.dim, budget.max_elements);

    // canonical coset representative: reduce against the block's X
    auto canon = [&](const FpVec& v, size_t i) {
        return inp.X[i].basis.rows ? reduce_against(inp.X[i].basis, inp.X[i].pivots, v) : v;
    };

    FiniteQuandle q;
    q.block = std::vector<int>{};
    std::map<std::pair<size_t, FpVec>, int> index;
    std::vector<std::pair<size_t, FpVec>> by_index;
    for (size_t i = 0; i < blocks; ++i) {
        std::set<FpVec> reps;
        for (const auto& v : N_elems) reps.insert(canon(v, i));
        for (const auto& r : reps) {
            index[{i, r}] = static_cast<int>(by_index.size());
            by_index.emplace_back(i, r);
            q.elements.push_back("q" + std::to_string(i + 1) + ":" + vec_str(r));
            q.block->push_back(static_cast<int>(i));
        }
    }
    int n = static_cast<int>(by_index.size());
    q.table.assign(n, std::vector<int>(n, -1));
    for (int a = 0; a < n; ++a) {
        auto [i, x] = by_index[a];
        for (int b = 0; b < n; ++b) {
            auto [j, y] = by_index[b];
            FpVec val = fp_sub(inp.m[j], inp.m[i], p);
            val = fp_add(val, M.t_act.apply(x), p);
            val = fp_add(val, M.apply_laurent(one_minus_t, y), p);
            auto it = index.find({i, canon(val, i)});
            if (it == index.end()) throw Error("internal: medial product left its block");
            q.table[a][b] = it->second;
        }
    }
    return q;
}

// ---- shadows of a link ----

LinkShadow link_shadow(const Diagram& d, const FiniteRing& ring) {
    LinkShadow sh;
    sh.diag = d;
    sh.ring = ring;
    sh.sp = specialize(reduced_presentation(d), ring);
    CrowellData cd = crowell_data(d, true);
    sh.phi = sh.sp.map_to_ring(cd.phi);
    std::map<std::string, LaurentPoly> tau_values;
    LaurentPoly t_minus_1 = LaurentPoly::variable(1, 1) - LaurentPoly::constant(1, 1);
    for (const auto& a : d.arcs) tau_values.emplace(a.id, t_minus_1);
    sh.tau_phi = sh.sp.map_to_ring(tau_values);
    sh.ker_phi = kernel(sh.phi);
    for (int i = 1; i <= d.mu; ++i) {
        ModuleElement base;
        base.add(d.base_arc[i - 1], LaurentPoly::constant(1, 1));
        sh.meridian.push_back(sh.sp.class_of(base));
        FpVec chi = sh.sp.class_of(longitude(d, i));
        sh.chi.push_back(chi);
        sh.X.push_back(generated_submodule(sh.sp.mod, {chi}));
    }
    return sh;
}

FiniteQuandle mq_of_link(const Diagram& d, const FiniteRing& ring, const SearchBudget& budget) {
    LinkShadow sh = link_shadow(d, ring);
    MedialInput inp;
    inp.ambient = sh.mod();
    inp.N = sh.ker_phi;
    inp.m = sh.meridian;
    inp.X = sh.X;
    return build_medial(inp, budget);
}

FiniteQuandle thm20_quandle(const LinkShadow& sh, const FpVec& n, const SearchBudget& budget) {
    if (sh.diag.mu != 2) throw DomainError("the two-block construction needs a 2-component link");
    if (!sh.diag.classical) throw DomainError("the two-block construction needs a classical link");
    const FiniteModule& M = sh.mod();
    if (!sh.ker_phi.contains(n)) throw DomainError("n must lie in ker phi");
    LaurentPoly one_minus_t = LaurentPoly::constant(1, 1) - LaurentPoly::variable(1, 1);
    FpVec d_elt = fp_sub(sh.meridian[0], sh.meridian[1], M.ring.p);
    d_elt = fp_add(d_elt, M.apply_laurent(one_minus_t, n), M.ring.p);
    Submodule X = ann_in(M, sh.ker_phi, one_minus_t);
    MedialInput inp;
    inp.ambient = M;
    inp.N = sh.ker_phi;
    inp.m = {d_elt, M.zero()};
    inp.X = {X, X};
    return build_medial(inp, budget);
}

FiniteQuandle thm20_quandle(const Diagram& d, const FiniteRing& ring, const FpVec& n,
                            const SearchBudget& budget) {
    return thm20_quandle(link_shadow(d, ring), n, budget);
}

// ---- Def-6 style operations ----

UElem make_uelem(const LinkShadow& sh, const FpVec& v) { return UElem{v, sh.tau_phi.mat.apply(v)}; }

namespace {

RElem one_plus(const FiniteRing& R, const RElem& phi) { return R.add(R.one(), phi); }

void require_unit(const FiniteRing& R, const RElem& u, const char* what) {
    if (!R.is_unit(u))
        throw DomainError(std::string(what) + ": 1+phi = " + R.elem_str(u) + " is not a unit of " + R.label());
}

}  // namespace

UElem u_op(const FiniteModule& M, const UElem& x, const UElem& y) {
    const FiniteRing& R = M.ring;
    require_unit(R, one_plus(R, x.phi), "u_op");
    require_unit(R, one_plus(R, y.phi), "u_op");
    FpVec v = fp_sub(M.scalar(one_plus(R, y.phi), x.v), M.scalar(x.phi, y.v), R.p);
    return UElem{v, x.phi};
}

UElem group_op(const FiniteModule& M, const UElem& x, const UElem& y) {
    const FiniteRing& R = M.ring;
    require_unit(R, one_plus(R, x.phi), "group_op");
    FpVec v = fp_add(x.v, M.scalar(one_plus(R, x.phi), y.v), R.p);
    RElem phi = R.add(R.add(x.phi, y.phi), R.mul(x.phi, y.phi));
    return UElem{v, phi};
}

UElem group_inv(const FiniteModule& M, const UElem& x) {
    const FiniteRing& R = M.ring;
    RElem u = one_plus(R, x.phi);
    require_unit(R, u, "group_inv");
    RElem uinv = R.inv(u);
    FpVec v = fp_scale(R.p - 1, M.scalar(uinv, x.v), R.p);
    RElem phi = R.sub(uinv, R.one());
    return UElem{v, phi};
}

UElem conj_op(const FiniteModule& M, const UElem& x, const UElem& y) {
    const FiniteRing& R = M.ring;
    RElem ux = one_plus(R, x.phi);
    RElem uy = one_plus(R, y.phi);
    require_unit(R, ux, "conj_op");
    require_unit(R, uy, "conj_op");
    FpVec v = fp_add(y.v, M.scalar(uy, x.v), R.p);
    RElem c = R.mul(R.mul(uy, ux), R.inv(uy));
    v = fp_sub(v, M.scalar(c, y.v), R.p);
    return UElem{v, x.phi};
}

std::vector<UElem> u_shadow_elements(const LinkShadow& sh, const SearchBudget& budget) {
    const FiniteModule& M = sh.mod();
    if (M.card() > static_cast<uint64_t>(budget.max_elements))
        throw BudgetExceeded("module larger than the element budget");
    std::vector<UElem> out;
    M.for_each_element([&](const FpVec& v) {
        UElem e = make_uelem(sh, v);
        if (M.ring.is_unit(one_plus(M.ring, e.phi))) out.push_back(e);
    });
    return out;
}

FiniteQuandle u_quandle_on(const LinkShadow& sh, const std::vector<UElem>& elems) {
    const FiniteModule& M = sh.mod();
    int n = static_cast<int>(elems.size());
    std::map<FpVec, int> index;
    for (int i = 0; i < n; ++i) index[elems[i].v] = i;
    FiniteQuandle q;
    for (const auto& e : elems) q.elements.push_back("(" + vec_str(e.v) + ")");
    q.table.assign(n, std::vector<int>(n, -1));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            UElem z = u_op(M, elems[a], elems[b]);
            auto it = index.find(z.v);
            if (it == index.end()) throw DomainError("element set is not closed under the quandle operation");
            q.table[a][b] = it->second;
        }
    return q;
}

FiniteQuandle qa_shadow_quandle(const LinkShadow& sh, const SearchBudget& budget) {
    const FiniteModule& M = sh.mod();
    std::vector<UElem> elems;
    std::set<FpVec> seen;
    for (const auto& a : sh.diag.arcs) {
        ModuleElement e;
        e.add(a.id, LaurentPoly::constant(1, 1));
        FpVec v = sh.sp.class_of(e);
        if (seen.insert(v).second) elems.push_back(make_uelem(sh, v));
    }
    // close under the operation (fixpoint: new elements feed back in)
    size_t before;
    do {
        before = elems.size();
        for (size_t i = 0; i < elems.size(); ++i) {
            for (size_t j = 0; j < elems.size(); ++j) {
                UElem z = u_op(M, elems[i], elems[j]);
                if (seen.insert(z.v).second) {
                    elems.push_back(z);
                    if (static_cast<int64_t>(elems.size()) > budget.max_quandle)
                        throw BudgetExceeded("generated subquandle larger than the quandle budget");
                }
            }
        }
    } while (elems.size() != before);
    return u_quandle_on(sh, elems);
}

// ---- quandle isomorphism search ----

namespace {

// invariant colors computed for both quandles together, so equal ids mean
// equal invariants across the two tables
struct JointColors {
    std::vector<long long> a;
    std::vector<long long> b;
};

std::vector<std::string> initial_keys(const FiniteQuandle& q) {
    int n = q.size();
    // orbits of the right-translation group
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int a = find(x), b = find(q.op(x, y));
            if (a != b) parent[a] = b;
        }
    std::map<int, int> osize;
    for (int x = 0; x < n; ++x) ++osize[find(x)];
    std::vector<std::string> keys(n);
    for (int x = 0; x < n; ++x) {
        // cycle type of the translation by x
        std::vector<int> lens;
        std::vector<bool> visited(n, false);
        for (int s = 0; s < n; ++s) {
            if (visited[s]) continue;
            int len = 0, cur = s;
            while (!visited[cur]) {
                visited[cur] = true;
                cur = q.op(cur, x);
                ++len;
            }
            lens.push_back(len);
        }
        std::sort(lens.begin(), lens.end());
        std::string key = "o" + std::to_string(osize[find(x)]) + "|";
        for (int l : lens) key += std::to_string(l) + ".";
        keys[x] = key;
    }
    return keys;
}

JointColors joint_colors(const FiniteQuandle& A, const FiniteQuandle& B) {
    JointColors out;
    std::map<std::string, long long> intern;
    auto intern_key = [&](const std::string& s) {
        auto it = intern.find(s);
        if (it == intern.end()) it = intern.emplace(s, static_cast<long long>(intern.size())).first;
        return it->second;
    };
    for (const std::string& k : initial_keys(A)) out.a.push_back(intern_key(k));
    for (const std::string& k : initial_keys(B)) out.b.push_back(intern_key(k));

    int rounds = A.size() + B.size();
    for (int round = 0; round < rounds; ++round) {
        std::map<std::string, long long> next_intern;
        auto refine = [&](const FiniteQuandle& q, const std::vector<long long>& col) {
            int n = q.size();
            std::vector<std::string> keys(n);
            for (int x = 0; x < n; ++x) {
                std::vector<std::string> sig;
                for (int y = 0; y < n; ++y)
                    sig.push_back(std::to_string(col[y]) + ":" + std::to_string(col[q.op(x, y)]) + ":" +
                                  std::to_string(col[q.op(y, x)]));
                std::sort(sig.begin(), sig.end());
                keys[x] = std::to_string(col[x]) + "#";
                for (const auto& s : sig) keys[x] += s + ";";
            }
            return keys;
        };
        std::vector<std::string> ka = refine(A, out.a), kb = refine(B, out.b);
        std::vector<long long> na, nb;
        auto key_id = [&](const std::string& s) {
            auto it = next_intern.find(s);
            if (it == next_intern.end()) it = next_intern.emplace(s, static_cast<long long>(next_intern.size())).first;
            return it->second;
        };
        for (const auto& k : ka) na.push_back(key_id(k));
        for (const auto& k : kb) nb.push_back(key_id(k));
        std::set<long long> before(out.a.begin(), out.a.end());
        before.insert(out.b.begin(), out.b.end());
        std::set<long long> after(na.begin(), na.end());
        after.insert(nb.begin(), nb.end());
        bool stable = after.size() == before.size();
        out.a = std::move(na);
        out.b = std::move(nb);
        if (stable) break;
    }
    return out;
}

struct QuandleIso {
    const FiniteQuandle& A;
    const FiniteQuandle& B;
    const JointColors col;
    int64_t max_nodes;
    int64_t nodes = 0;
    std::vector<int> f, finv;

    QuandleIso(const FiniteQuandle& a, const FiniteQuandle& b, int64_t mn)
        : A(a), B(b), col(joint_colors(a, b)), max_nodes(mn) {
        f.assign(a.size(), -1);
        finv.assign(a.size(), -1);
    }

    bool assign(int x, int y, std::vector<int>& trail) {
        if (f[x] != -1) return f[x] == y;
        if (finv[y] != -1) return false;
        if (col.a[x] != col.b[y]) return false;
        f[x] = y;
        finv[y] = x;
        trail.push_back(x);
        // propagate through the table against every assigned element
        for (int a = 0; a < A.size(); ++a) {
            if (f[a] == -1) continue;
            if (!assign(A.op(x, a), B.op(y, f[a]), trail)) return false;
            if (!assign(A.op(a, x), B.op(f[a], y), trail)) return false;
        }
        return true;
    }

    void undo(std::vector<int>& trail, size_t mark) {
        while (trail.size() > mark) {
            int x = trail.back();
            trail.pop_back();
            finv[f[x]] = -1;
            f[x] = -1;
        }
    }

    bool dfs(std::vector<int>& trail) {
        if (++nodes > max_nodes) throw BudgetExceeded("quandle isomorphism search exceeded the node budget");
        int x = -1;
        for (int i = 0; i < A.size(); ++i)
            if (f[i] == -1) {
                x = i;
                break;
            }
        if (x == -1) return verify();
        for (int y = 0; y < B.size(); ++y) {
            if (finv[y] != -1 || col.a[x] != col.b[y]) continue;
            size_t mark = trail.size();
            if (assign(x, y, trail) && dfs(trail)) return true;
            undo(trail, mark);
        }
        return false;
    }

    bool verify() const {
        for (int x = 0; x < A.size(); ++x)
            for (int y = 0; y < A.size(); ++y)
                if (f[A.op(x, y)] != B.op(f[x], f[y])) return false;
        return true;
    }
};

}  // namespace

std::optional<std::vector<int>> quandle_iso_search(const FiniteQuandle& a, const FiniteQuandle& b,
                                                   const SearchBudget& budget) {
    if (a.size() > budget.max_quandle || b.size() > budget.max_quandle)
        throw BudgetExceeded("quandle larger than the quandle budget (" +
                             std::to_string(budget.max_quandle) + ")");
    if (a.size() != b.size()) return std::nullopt;
    if (a.size() == 0) return std::vector<int>{};
    QuandleIso search(a, b, budget.max_nodes);
    {
        // cheap global invariant: the color multisets must agree
        std::vector<long long> ca = search.col.a, cb = search.col.b;
        std::sort(ca.begin(), ca.end());
        std::sort(cb.begin(), cb.end());
        if (ca != cb) return std::nullopt;
    }
    std::vector<int> trail;
    if (search.dfs(trail)) return search.f;
    return std::nullopt;
}

std::string quandle_json(const FiniteQuandle& q) {
    std::ostringstream out;
    out << "{\"schema\":1,\"size\":" << q.size() << ",\"elements\":[";
    for (int i = 0; i < q.size(); ++i) out << (i ? "," : "") << "\"" << q.elements[i] << "\"";
    out << "],\"table\":[";
    for (int i = 0; i < q.size(); ++i) {
        out << (i ? "," : "") << "[";
        for (int j = 0; j < q.size(); ++j) out << (j ? "," : "") << q.table[i][j];
        out << "]";
    }
    out << "]";
    if (q.block) {
        out << ",\"blocks\":[";
        for (size_t i = 0; i < q.block->size(); ++i) out << (i ? "," : "") << (*q.block)[i];
        out << "]";
    }
    out << "}";
    return out.str();
}

std::string quandle_table(const FiniteQuandle& q) {
    size_t w = 1;
    for (const auto& e : q.elements) w = std::max(w, e.size());
    std::ostringstream out;
    auto pad = [&](const std::string& s) { return s + std::string(w - s.size(), ' '); };
    out << pad(">") << " |";
    for (const auto& e : q.elements) out << " " << pad(e);
    out << "\n";
    out << std::string(w, '-') << "-+" << std::string((w + 1) * q.elements.size(), '-') << "\n";
    for (int i = 0; i < q.size(); ++i) {
        out << pad(q.elements[i]) << " |";
        for (int j = 0; j < q.size(); ++j) out << " " << pad(q.elements[q.table[i][j]]);
        out << "\n";
    }
    return out.str();
}

}  // namespace qk
