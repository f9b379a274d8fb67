#include <random>

#include "doctest.h"
#include "quandlekit/quandle.hpp"

using namespace qk;

namespace {

LaurentPoly t1(int e = 1) { return LaurentPoly::variable(1, 1, e); }
LaurentPoly k1(long long v) { return LaurentPoly::constant(1, v); }

FiniteRing F4() { return FiniteRing(2, {1, 1, 1}); }
FiniteRing F2t1sq() { return FiniteRing(2, {1, 0, 1}); }
FiniteRing F3() { return FiniteRing(3, {1, 1}); }

FiniteQuandle dihedral3() {
    // x > y = 2y - x mod 3
    FiniteQuandle q;
    q.elements = {"0", "1", "2"};
    q.table.assign(3, std::vector<int>(3, 0));
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) q.table[x][y] = ((2 * y - x) % 3 + 3) % 3;
    return q;
}

bool trivial_ops(const FiniteQuandle& q) {
    for (int x = 0; x < q.size(); ++x)
        for (int y = 0; y < q.size(); ++y)
            if (q.op(x, y) != x) return false;
    return true;
}

// every 3x3 operation table that satisfies the quandle axioms
std::vector<FiniteQuandle> all_size3_quandles() {
    std::vector<FiniteQuandle> out;
    std::vector<int> cells(9);
    for (int code = 0; code < 19683; ++code) {
        int c = code;
        for (int i = 0; i < 9; ++i) {
            cells[i] = c % 3;
            c /= 3;
        }
        FiniteQuandle q;
        q.elements = {"0", "1", "2"};
        q.table = {{cells[0], cells[1], cells[2]},
                   {cells[3], cells[4], cells[5]},
                   {cells[6], cells[7], cells[8]}};
        if (check_axioms(q).ok()) out.push_back(q);
    }
    return out;
}

bool brute_force_iso(const FiniteQuandle& a, const FiniteQuandle& b) {
    if (a.size() != b.size()) return false;
    std::vector<int> perm(a.size());
    for (int i = 0; i < a.size(); ++i) perm[i] = i;
    do {
        bool ok = true;
        for (int x = 0; x < a.size() && ok; ++x)
            for (int y = 0; y < a.size() && ok; ++y)
                if (perm[a.op(x, y)] != b.op(perm[x], perm[y])) ok = false;
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

}  // namespace

TEST_CASE("axiom checking") {
    FiniteQuandle triv = trivial_quandle(3);
    CHECK(check_axioms(triv).ok());
    CHECK(check_medial(triv));

    FiniteQuandle dih = dihedral3();
    CHECK(check_axioms(dih).ok());
    CHECK(check_medial(dih));

    FiniteQuandle s3 = conjugation_quandle_s3();
    CHECK(check_axioms(s3).ok());
    CHECK_FALSE(check_medial(s3));  // exhaustive quadruple check

    // break idempotence
    FiniteQuandle bad = trivial_quandle(2);
    bad.table[0][0] = 1;
    CHECK_FALSE(check_axioms(bad).idempotent);
}

TEST_CASE("build_medial on degenerate data") {
    // zero module, one block: a single element
    FiniteModule Z;
    Z.ring = F4();
    Z.dim = 0;
    Z.t_act = FpMat(2, 0, 0);
    Z.t_inv = Z.t_act;
    MedialInput inp;
    inp.ambient = Z;
    inp.N = span_of(2, 0, {});
    inp.m = {FpVec{}};
    inp.X = {span_of(2, 0, {})};
    FiniteQuandle q = build_medial(inp);
    CHECK(q.size() == 1);
    CHECK(check_axioms(q).ok());
}

TEST_CASE("build_medial validates its hypotheses") {
    FiniteModule M = ring_as_module(F4());
    FpVec e0 = {1, 0};
    Submodule zero = span_of(2, 2, {});
    Submodule full = generated_submodule(M, {e0});
    MedialInput inp;
    inp.ambient = M;
    inp.N = zero;
    inp.m = {M.zero(), e0};  // m_1 - m_2 not in N
    inp.X = {zero, zero};
    CHECK_THROWS_WITH_AS(build_medial(inp), doctest::Contains("offending pair"), ValidationError);
    // X not annihilated by 1-t: over F4 the full module is not killed
    MedialInput inp2;
    inp2.ambient = M;
    inp2.N = full;
    inp2.m = {M.zero()};
    inp2.X = {full};
    CHECK_THROWS_WITH_AS(build_medial(inp2), doctest::Contains("(1-t)X"), ValidationError);
}

TEST_CASE("medial quandles of the small links") {
    SUBCASE("hopf+ over F_4 is the 2-element trivial quandle") {
        FiniteQuandle q = mq_of_link(catalog("hopf+"), F4());
        CHECK(q.size() == 2);
        CHECK(trivial_ops(q));
        CHECK(check_medial(q));
    }
    SUBCASE("hopf+ over (t+1)^2 is still 2-element trivial") {
        FiniteQuandle q = mq_of_link(catalog("hopf+"), F2t1sq());
        CHECK(q.size() == 2);
        CHECK(trivial_ops(q));
    }
    SUBCASE("unknot is a point") {
        CHECK(mq_of_link(catalog("unknot"), F4()).size() == 1);
        CHECK(mq_of_link(catalog("vtrefoil"), F4()).size() == 1);
    }
    SUBCASE("trefoil over F_3[t]/(t+1) is the 3-element dihedral quandle") {
        FiniteQuandle q = mq_of_link(catalog("trefoil"), F3());
        CHECK(q.size() == 3);
        CHECK(check_axioms(q).ok());
        CHECK(quandle_iso_search(q, dihedral3()).has_value());
    }
    SUBCASE("solomon blocks have equal sizes") {
        FiniteQuandle q = mq_of_link(catalog("solomon"), F3());
        REQUIRE(q.block.has_value());
        int s1 = 0, s2 = 0;
        for (int b : *q.block) (b == 0 ? s1 : s2)++;
        CHECK(s1 == s2);
        CHECK(s1 > 0);
        CHECK(check_axioms(q).ok());
        CHECK(check_medial(q));
    }
}

TEST_CASE("two-block construction") {
    const Diagram& hopf = catalog("hopf+");
    SUBCASE("hopf+ with n = 0") {
        LinkShadow sh = link_shadow(hopf, F4());
        FiniteQuandle q = thm20_quandle(sh, sh.mod().zero());
        CHECK(q.size() == 2);
        CHECK(trivial_ops(q));
    }
    SUBCASE("matches the medial quandle for every n over a degenerate ring") {
        LinkShadow sh = link_shadow(hopf, F2t1sq());
        FiniteQuandle mq = mq_of_link(hopf, F2t1sq());
        FiniteMap incl;
        FiniteModule N = submodule_as_module(sh.mod(), sh.ker_phi, &incl);
        N.for_each_element([&](const FpVec& nv) {
            FiniteQuandle q = thm20_quandle(sh, incl.mat.apply(nv));
            CHECK(quandle_iso_search(q, mq).has_value());
        });
    }
    SUBCASE("whitehead over F_4") {
        LinkShadow sh = link_shadow(catalog("whitehead"), F4());
        FiniteQuandle q20 = thm20_quandle(sh, sh.mod().zero());
        FiniteQuandle mq = mq_of_link(catalog("whitehead"), F4());
        CHECK(quandle_iso_search(q20, mq).has_value());
    }
    SUBCASE("rejected inputs") {
        CHECK_THROWS_AS(thm20_quandle(catalog("trefoil"), F4(), FpVec{}), DomainError);
        LinkShadow sh = link_shadow(hopf, F4());
        FpVec outside(sh.mod().dim, 0);
        outside[0] = 1;  // phi != 0 there
        if (!sh.ker_phi.contains(outside)) CHECK_THROWS_AS(thm20_quandle(sh, outside), DomainError);
    }
}

TEST_CASE("module-element quandle and group operations") {
    const Diagram& hopf = catalog("hopf+");
    LinkShadow sh = link_shadow(hopf, F4());
    const FiniteModule& M = sh.mod();
    ModuleElement ea, eb;
    ea.add("a", k1(1));
    eb.add("b", k1(1));
    UElem a = make_uelem(sh, sh.sp.class_of(ea));
    UElem b = make_uelem(sh, sh.sp.class_of(eb));
    CHECK(a.phi == M.ring.from_laurent(t1() - k1(1)));  // arc classes sit over t-1
    UElem zero{M.zero(), M.ring.zero()};

    SUBCASE("idempotence and identities") {
        CHECK(u_op(M, a, a) == a);
        CHECK(u_op(M, b, b) == b);
        CHECK(conj_op(M, a, a) == a);
        CHECK(conj_op(M, a, zero) == a);
        CHECK(group_op(M, zero, a) == a);
        UElem prod = group_op(M, a, group_inv(M, a));
        CHECK(prod.v == M.zero());
        CHECK(fp_is_zero(prod.phi));
    }
    SUBCASE("formula specializations") {
        // phi(y) = 0: x > y = x - phi(x) y
        UElem y = zero;
        UElem expect{fp_sub(a.v, M.scalar(a.phi, y.v), 2), a.phi};
        CHECK(u_op(M, a, y) == expect);
        // phi(x) = 0: x > y = (phi(y)+1) x
        UElem got = u_op(M, zero, b);
        CHECK(got.v == M.scalar(M.ring.add(b.phi, M.ring.one()), M.zero()));
        // phi(x) = t-1: x . y = x + t y
        UElem g = group_op(M, a, b);
        CHECK(g.v == fp_add(a.v, M.scalar(M.ring.t(), b.v), 2));
        // 1 + phi is multiplicative along the group law
        RElem lhs = M.ring.add(M.ring.one(), g.phi);
        RElem rhs = M.ring.mul(M.ring.add(M.ring.one(), a.phi), M.ring.add(M.ring.one(), b.phi));
        CHECK(lhs == rhs);
    }
    SUBCASE("hopf+ arc classes give a trivial quandle") {
        // over F_4 the relation (1-t)(a-b) = 0 collapses a and b
        FiniteQuandle qa = qa_shadow_quandle(sh);
        CHECK(qa.size() == 1);
        CHECK(trivial_ops(qa));
        // over (t+1)^2 the arc classes stay distinct but the operation is
        // still trivial: a > b - a = (t-1)(a-b) is exactly the relation
        LinkShadow sh2 = link_shadow(hopf, F2t1sq());
        FiniteQuandle qa2 = qa_shadow_quandle(sh2);
        CHECK(qa2.size() == 2);
        CHECK(trivial_ops(qa2));
    }
    SUBCASE("non-units are rejected") {
        LinkShadow sh3 = link_shadow(hopf, F3());
        const FiniteModule& M3 = sh3.mod();
        ModuleElement twice;
        twice.add("a", k1(2));
        UElem x = make_uelem(sh3, sh3.sp.class_of(twice));
        // phi(x) = 2(t-1) = 2t-2 = t+1 at t=-1 ... 1+phi(x) = 0 mod 3
        CHECK_FALSE(M3.ring.is_unit(M3.ring.add(M3.ring.one(), x.phi)));
        CHECK_THROWS_AS(u_op(M3, x, x), DomainError);
        CHECK_THROWS_AS(group_inv(M3, x), DomainError);
    }
}

TEST_CASE("quandle isomorphism search") {
    FiniteQuandle triv = trivial_quandle(3);
    FiniteQuandle dih = dihedral3();
    SUBCASE("identity on equal tables") {
        auto f = quandle_iso_search(triv, triv);
        REQUIRE(f.has_value());
        CHECK(*f == std::vector<int>{0, 1, 2});
    }
    SUBCASE("trivial vs dihedral: no isomorphism, confirmed by enumeration") {
        CHECK_FALSE(quandle_iso_search(triv, dih).has_value());
        CHECK_FALSE(brute_force_iso(triv, dih));
        // search agrees with brute force across all size-3 quandles
        auto all = all_size3_quandles();
        CHECK(all.size() > 2);
        std::mt19937_64 rng(5);
        for (int trial = 0; trial < 40; ++trial) {
            const FiniteQuandle& a = all[rng() % all.size()];
            const FiniteQuandle& b = all[rng() % all.size()];
            CHECK(quandle_iso_search(a, b).has_value() == brute_force_iso(a, b));
        }
    }
    SUBCASE("relabelled dihedral is found") {
        const int sigma[3] = {1, 0, 2};
        FiniteQuandle relabel = dih;
        for (int x = 0; x < 3; ++x)
            for (int y = 0; y < 3; ++y) relabel.table[sigma[x]][sigma[y]] = sigma[dih.op(x, y)];
        REQUIRE(check_axioms(relabel).ok());
        auto f = quandle_iso_search(dih, relabel);
        REQUIRE(f.has_value());
        // returned map preserves the operation
        for (int x = 0; x < 3; ++x)
            for (int y = 0; y < 3; ++y) CHECK((*f)[dih.op(x, y)] == relabel.op((*f)[x], (*f)[y]));
    }
    SUBCASE("mq shadows of the mirror pair agree") {
        FiniteQuandle qp = mq_of_link(catalog("hopf+"), F4());
        FiniteQuandle qm = mq_of_link(catalog("hopf-"), F4());
        CHECK(quandle_iso_search(qp, qm).has_value());
    }
    SUBCASE("budget") {
        SearchBudget tiny;
        tiny.max_quandle = 2;
        CHECK_THROWS_AS(quandle_iso_search(dih, dih, tiny), BudgetExceeded);
    }
}

TEST_CASE("random coset inputs always build medial quandles") {
    // the defining claim of the construction: any admissible input yields a
    // quandle satisfying all three axioms plus mediality
    std::mt19937_64 rng(60901);
    for (const auto& R : {F4(), F2t1sq(), FiniteRing(3, {1, 1}), FiniteRing(5, {2, 2, 1})}) {
        FiniteModule M = product_module(ring_as_module(R), trivial_module(R, 1));
        auto random_vec = [&]() {
            FpVec v(M.dim);
            for (auto& x : v) x = static_cast<int>(rng() % R.p);
            return v;
        };
        for (int trial = 0; trial < 10; ++trial) {
            Submodule N = generated_submodule(M, {random_vec()});
            Submodule ann = ann_in(M, N, k1(1) - t1());
            int blocks = 1 + static_cast<int>(rng() % 3);
            MedialInput inp;
            inp.ambient = M;
            inp.N = N;
            for (int i = 0; i < blocks; ++i) {
                // X_i: random t-stable subspace of ann(1-t) inside N
                std::vector<FpVec> gens;
                if (ann.dim() > 0 && rng() % 2) {
                    FpVec g(M.dim, 0);
                    for (int r = 0; r < ann.basis.rows; ++r)
                        g = fp_add(g, fp_scale(static_cast<int>(rng() % R.p), ann.basis.row(r), R.p), R.p);
                    gens.push_back(g);
                }
                inp.X.push_back(generated_submodule(M, gens));
                // m_i: common offset plus something in N
                FpVec m = inp.m.empty() ? random_vec() : inp.m[0];
                for (int r = 0; r < N.basis.rows; ++r)
                    m = fp_add(m, fp_scale(static_cast<int>(rng() % R.p), N.basis.row(r), R.p), R.p);
                inp.m.push_back(m);
            }
            SearchBudget roomy;
            roomy.max_quandle = 4096;
            FiniteQuandle q = build_medial(inp, roomy);
            CHECK(check_axioms(q).ok());
            CHECK(check_medial(q));
        }
    }
}

TEST_CASE("quotient projection is t-linear") {
    const Diagram& d = catalog("whitehead");
    for (const auto& R : {F4(), F2t1sq()}) {
        LinkShadow sh = link_shadow(d, R);
        QuotientModule Q = quotient(sh.mod(), sh.ker_phi);
        CHECK(Q.proj * sh.mod().t_act == Q.mod.t_act * Q.proj);
    }
}

TEST_CASE("quandle serialization") {
    FiniteQuandle q = mq_of_link(catalog("hopf+"), F4());
    std::string js = quandle_json(q);
    CHECK(js.find("\"schema\":1") != std::string::npos);
    CHECK(js.find("\"blocks\"") != std::string::npos);
    std::string table = quandle_table(q);
    CHECK(table.find("|") != std::string::npos);
}
