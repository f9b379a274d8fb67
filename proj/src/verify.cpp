#include "quandlekit/verify.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace qk {

int CheckResult::failures(bool strict) const {
    int n = 0;
    for (const auto& i : instances) {
        if (!i.pass && !i.not_applicable) ++n;
        if (strict && i.deviation) ++n;
    }
    return n;
}

int CheckResult::deviations() const {
    int n = 0;
    for (const auto& i : instances)
        if (i.deviation) ++n;
    return n;
}

// Specialization degeneracies observed on the shipped catalog.  Each entry
// is a ring where reduction mod (p, q) genuinely loses part of the integral
// statement (taking t-1 invertible kills the peripheral submodules, and
// non-semisimple q can enlarge annihilators).  They are reported, never
// silently skipped; --strict turns them into failures.
namespace {

struct Deviation {
    const char* check;
    const char* link;  // "*" matches any link
    const char* ring;  // q as printed by FiniteRing::q_str, "*" any
};

const Deviation kKnownDeviations[] = {
    // quotient N/(1-t)N collapses whenever t-1 is invertible in R
    {"lemma19-shadow", "*", "t^2+t+1"},
    {"lemma19-shadow", "*", "t+1"},
    {"lemma19-shadow", "*", "t+3"},
    {"lemma19-shadow", "*", "t+4"},
    // over the rings with q(1) = 0 the specialized longitude can die while
    // the annihilator computed in the shadow survives: the solomon torsion
    // (1+t^2) vanishes mod (t+1)^2, and the whitehead (t-1)-power torsion
    // loses a layer in both such rings
    {"lemma18", "solomon", "t^2+1"},
    {"lemma18", "whitehead", "t^2+1"},
    {"lemma18", "whitehead", "t^2+2*t+2"},
    {"thm20-shadow", "solomon", "t^2+1"},
    {"thm20-shadow", "whitehead", "t^2+1"},
    {"thm20-shadow", "whitehead", "t^2+2*t+2"},
    // ann(1-t) in the whole module outgrows the longitude span wherever t-1
    // is a zero divisor: the free summand contributes its socle
    {"property4-containment", "*", "t^2+1"},
    {"property4-containment", "*", "t^2+2*t+2"},
};

}  // namespace

bool is_known_deviation(const std::string& check, const std::string& link, const std::string& ring) {
    for (const auto& d : kKnownDeviations) {
        if (check != d.check) continue;
        if (std::string(d.link) != "*" && link != d.link) continue;
        // instances carry the full ring label; entries store the modulus
        if (std::string(d.ring) != "*" && ring != d.ring &&
            ring.find("(" + std::string(d.ring) + ")") == std::string::npos)
            continue;
        return true;
    }
    return false;
}

namespace {

struct Ctx {
    VerifyOptions opt;
    std::vector<std::string> links;
    std::vector<FiniteRing> rings;
    std::map<std::string, LinkShadow> shadows;  // keyed by link + '@' + ring

    const LinkShadow& shadow(const std::string& link, const FiniteRing& R) {
        std::string key = link + "@" + std::to_string(R.p) + "/" + R.q_str();
        auto it = shadows.find(key);
        if (it == shadows.end()) it = shadows.emplace(key, link_shadow(catalog(link), R)).first;
        return it->second;
    }

    uint64_t instance_seed(const std::string& check, const std::string& link, const std::string& ring) const {
        uint64_t h = opt.seed;
        for (char c : check + "|" + link + "|" + ring) h = h * 1099511628211ULL + static_cast<unsigned char>(c);
        return h;
    }
};

bool classical_two_component(const Diagram& d) { return d.classical && d.mu == 2; }

LaurentPoly one_minus_t() { return LaurentPoly::constant(1, 1) - LaurentPoly::variable(1, 1); }

CheckInstance make_instance(const std::string& link, const std::string& ring) {
    CheckInstance inst;
    inst.link = link;
    inst.ring = ring;
    return inst;
}

void fail(CheckInstance& inst, const std::string& note) {
    inst.pass = false;
    inst.note = note;
}

// marks a degeneracy: pass with a flag when recorded, hard failure otherwise
void degenerate(CheckInstance& inst, const std::string& check, const std::string& note) {
    if (is_known_deviation(check, inst.link, inst.ring)) {
        inst.deviation = true;
        inst.note = note + " (recorded deviation)";
    } else {
        inst.pass = false;
        inst.note = note + " (unrecorded deviation)";
    }
}

// ---- individual checks ----

CheckResult check_crowell_welldef(Ctx& ctx) {
    CheckResult r{"crowell-welldef", {}};
    for (const auto& link : ctx.links) {
        CheckInstance inst = make_instance(link, "");
        const Diagram& d = catalog(link);
        for (bool reduced : {false, true}) {
            PresentedModule m = reduced ? reduced_presentation(d) : alexander_presentation(d);
            CrowellData cd = crowell_data(d, reduced);
            for (size_t i = 0; i < m.rows.size(); ++i) {
                ModuleElement row;
                row.num_vars = m.num_vars;
                for (size_t j = 0; j < m.gens.size(); ++j) row.add(m.gens[j], m.rows[i][j]);
                if (!cd.phi_of(row).is_zero())
                    fail(inst, std::string(reduced ? "reduced" : "multivariate") + " row " + m.row_labels[i] +
                                   " has nonzero Crowell image");
            }
            // each crossing row augments to zero in every coordinate sum
            for (size_t i = 0; i < m.rows.size(); ++i) {
                Int total = 0;
                for (size_t j = 0; j < m.gens.size(); ++j) total += m.rows[i][j].augment();
                if (total != 0) fail(inst, "row " + m.row_labels[i] + " does not augment to zero");
            }
        }
        r.instances.push_back(inst);
    }
    return r;
}

CheckResult check_alexander_values(Ctx& ctx) {
    CheckResult r{"alexander-values", {}};
    const std::pair<const char*, const char*> expected[] = {
        {"trefoil", "t^2 - t + 1"},
        {"fig8", "t^2 - 3*t + 1"},
        {"unknot", "1"},
        {"hopf+", "t - 1"},
    };
    for (const auto& [link, value] : expected) {
        if (std::find(ctx.links.begin(), ctx.links.end(), link) == ctx.links.end()) continue;
        CheckInstance inst = make_instance(link, "");
        LaurentPoly got = alexander_polynomial(reduced_presentation(catalog(link)));
        LaurentPoly want = normalize_poly(LaurentPoly::parse(value, 1));
        if (got != want) fail(inst, "Delta = " + got.str() + ", expected " + want.str());
        r.instances.push_back(inst);
    }
    return r;
}

CheckResult check_alexander_invariance(Ctx& ctx) {
    CheckResult r{"alexander-invariance", {}};
    auto have = [&](const char* n) {
        return std::find(ctx.links.begin(), ctx.links.end(), n) != ctx.links.end();
    };
    if (have("unknot") && have("unknot-kink")) {
        CheckInstance inst = make_instance("unknot/unknot-kink", "");
        LaurentPoly a = alexander_polynomial(reduced_presentation(catalog("unknot")));
        LaurentPoly b = alexander_polynomial(reduced_presentation(catalog("unknot-kink")));
        if (a != b) fail(inst, a.str() + " vs " + b.str());
        r.instances.push_back(inst);
    }
    if (have("trefoil") && have("trefoil-mirror")) {
        CheckInstance inst = make_instance("trefoil/trefoil-mirror", "");
        LaurentPoly a = alexander_polynomial(reduced_presentation(catalog("trefoil")));
        LaurentPoly b = alexander_polynomial(reduced_presentation(catalog("trefoil-mirror")));
        if (a != normalize_poly(b.reverse_t())) fail(inst, a.str() + " vs reversed " + b.str());
        r.instances.push_back(inst);
    }
    return r;
}

CheckResult check_longitude_phi(Ctx& ctx) {
    CheckResult r{"longitude-phi", {}};
    for (const auto& link : ctx.links) {
        CheckInstance inst = make_instance(link, "");
        const Diagram& d = catalog(link);
        CrowellData cd = crowell_data(d, true);
        for (int i = 1; i <= d.mu; ++i) {
            ModuleElement chi = longitude(d, i);
            if (!cd.phi_of(chi).is_zero()) fail(inst, "phi(chi_" + std::to_string(i) + ") != 0");
        }
        r.instances.push_back(inst);
    }
    return r;
}

CheckResult check_longitude_annihilated(Ctx& ctx) {
    CheckResult r{"longitude-annihilated", {}};
    for (const auto& link : ctx.links) {
        const Diagram& d = catalog(link);
        for (const auto& R : ctx.rings) {
            CheckInstance inst = make_instance(link, R.label());
            const LinkShadow& sh = ctx.shadow(link, R);
            for (int i = 1; i <= d.mu; ++i) {
                ModuleElement scaled = longitude(d, i).scaled(one_minus_t());
                if (!fp_is_zero(sh.sp.class_of(scaled)))
                    fail(inst, "(1-t) chi_" + std::to_string(i) + " is nonzero in the shadow");
            }
            r.instances.push_back(inst);
        }
    }
    return r;
}

CheckResult check_longitude_sum(Ctx& ctx) {
    CheckResult r{"longitude-sum", {}};
    for (const auto& link : ctx.links) {
        const Diagram& d = catalog(link);
        if (!d.classical) {
            CheckInstance inst = make_instance(link, "");
            inst.not_applicable = true;
            inst.note = "virtual link: the longitude sum law is asserted for classical links only";
            r.instances.push_back(inst);
            continue;
        }
        for (const auto& R : ctx.rings) {
            CheckInstance inst = make_instance(link, R.label());
            const LinkShadow& sh = ctx.shadow(link, R);
            ModuleElement total;
            for (int i = 1; i <= d.mu; ++i) total = total + longitude(d, i);
            if (!fp_is_zero(sh.sp.class_of(total))) fail(inst, "sum of longitudes is nonzero in the shadow");
            r.instances.push_back(inst);
        }
    }
    return r;
}

CheckResult check_lemma18(Ctx& ctx) {
    CheckResult r{"lemma18", {}};
    for (const auto& link : ctx.links) {
        const Diagram& d = catalog(link);
        if (!classical_two_component(d)) continue;
        for (const auto& R : ctx.rings) {
            CheckInstance inst = make_instance(link, R.label());
            const LinkShadow& sh = ctx.shadow(link, R);
            FpVec sum = fp_add(sh.chi[0], sh.chi[1], R.p);
            if (!fp_is_zero(sum)) fail(inst, "chi_1 != -chi_2 in the shadow");
            Submodule ann = ann_in(sh.mod(), sh.ker_phi, one_minus_t());
            bool contained = true;
            for (int i = 0; i < sh.X[0].basis.rows; ++i)
                if (!ann.contains(sh.X[0].basis.row(i))) contained = false;
            if (!(sh.X[0] == sh.X[1])) {
                fail(inst, "X_1 != X_2");
            } else if (!contained) {
                fail(inst, "<chi> is not annihilated by 1-t");
            } else if (!(sh.X[0] == ann)) {
                degenerate(inst, r.name,
                           "<chi> has dim " + std::to_string(sh.X[0].dim()) + " but ann(1-t) in ker phi has dim " +
                               std::to_string(ann.dim()));
            }
            r.instances.push_back(inst);
        }
    }
    return r;
}

CheckResult check_property4(Ctx& ctx) {
    CheckResult r{"property4-containment", {}};
    for (const auto& link : ctx.links) {
        const Diagram& d = catalog(link);
        if (!d.classical) continue;
        for (const auto& R : ctx.rings) {
            CheckInstance inst = make_instance(link, R.label());
            const LinkShadow& sh = ctx.shadow(link, R);
            Submodule span = generated_submodule(sh.mod(), sh.chi);
            Submodule ann = annihilator(sh.mod(), one_minus_t());
            bool contained = true;
            for (int i = 0; i < span.basis.rows; ++i)
                if (!ann.contains(span.basis.row(i))) contained = false;
            if (!contained) {
                fail(inst, "longitude span not annihilated by 1-t");
            } else if (!(span == ann)) {
                degenerate(inst, r.name,
                           "longitudes span dim " + std::to_string(span.dim()) + " < ann(1-t) dim " +
                               std::to_string(ann.dim()));
            }
            r.instances.push_back(inst);
        }
    }
    return r;
}

CheckResult check_property5(Ctx& ctx) {
    CheckResult r{"property5-shadow", {}};
    for (const auto& link : ctx.links) {
        const Diagram& d = catalog(link);
        for (const auto& R : ctx.rings) {
            CheckInstance inst = make_instance(link, R.label());
            const LinkShadow& sh = ctx.shadow(link, R);
            CrowellData cd = crowell_data(d, true);
            FiniteMap phi_tau = sh.sp.map_phi_tau(cd);
            Submodule ker_tau = kernel(phi_tau);
            FpMat op = FpMat::identity(R.p, sh.mod().dim) - sh.mod().t_act;
            Submodule image = image_of_submodule(sh.mod(), op, sh.ker_phi);
            bool contained = true;
            for (int i = 0; i < image.basis.rows; ++i)
                if (!ker_tau.contains(image.basis.row(i))) contained = false;
            if (!contained) {
                fail(inst, "(1-t) ker phi not inside ker phi_tau");
            } else if (!(image == ker_tau)) {
                degenerate(inst, r.name,
                           "(1-t) ker phi has dim " + std::to_string(image.dim()) + " < ker phi_tau dim " +
                               std::to_string(ker_tau.dim()));
            }
            r.instances.push_back(inst);
        }
    }
    return r;
}

CheckResult check_lemma19(Ctx& ctx) {
    CheckResult r{"lemma19-shadow", {}};
    for (const auto& link : ctx.links) {
        const Diagram& d = catalog(link);
        if (!classical_two_component(d)) continue;
        for (const auto& R : ctx.rings) {
            CheckInstance inst = make_instance(link, R.label());
            const LinkShadow& sh = ctx.shadow(link, R);
            FiniteMap incl;
            FiniteModule N = submodule_as_module(sh.mod(), sh.ker_phi, &incl);
            FpMat op = FpMat::identity(R.p, N.dim) - N.t_act;
            Submodule full = span_of(R.p, N.dim, [&] {
                std::vector<FpVec> rows;
                for (int i = 0; i < N.dim; ++i) {
                    FpVec e(N.dim, 0);
                    e[i] = 1;
                    rows.push_back(e);
                }
                return rows;
            }());
            Submodule sub = image_of_submodule(N, op, full);
            QuotientModule Q = quotient(N, sub);
            if (Q.mod.dim == 0) {
                degenerate(inst, r.name, "quotient ker/(1-t)ker is zero");
                r.instances.push_back(inst);
                continue;
            }
            if (!(Q.mod.t_act == FpMat::identity(R.p, Q.mod.dim))) fail(inst, "t acts nontrivially on the quotient");
            // class of m1 - m2 must generate
            FpVec diff = fp_sub(sh.meridian[0], sh.meridian[1], R.p);
            auto coords = coords_in_rowspace(sh.ker_phi.basis, sh.ker_phi.pivots, diff);
            if (!coords) {
                fail(inst, "m1 - m2 is not in ker phi");
            } else {
                FpVec cls = Q.proj.apply(*coords);
                Submodule gen = generated_submodule(Q.mod, {cls});
                if (gen.dim() != Q.mod.dim)
                    degenerate(inst, r.name, "m1 - m2 does not generate the quotient (dim " +
                                                 std::to_string(Q.mod.dim) + ")");
            }
            r.instances.push_back(inst);
        }
    }
    return r;
}

CheckResult check_quandle_axioms(Ctx& ctx) {
    CheckResult r{"quandle-axioms", {}};
    for (const auto& link : ctx.links) {
        const Diagram& d = catalog(link);
        for (const auto& R : ctx.rings) {
            CheckInstance inst = make_instance(link, R.label());
            try {
                FiniteQuandle q = mq_of_link(d, R, ctx.opt.budget);
                QuandleCheck c = check_axioms(q);
                if (!c.ok()) fail(inst, "MQ shadow: " + c.detail);
                if (!check_medial(q)) fail(inst, "MQ shadow is not medial");
                if (classical_two_component(d)) {
                    const LinkShadow& sh = ctx.shadow(link, R);
                    FiniteQuandle q20 = thm20_quandle(sh, sh.mod().zero(), ctx.opt.budget);
                    QuandleCheck c20 = check_axioms(q20);
                    if (!c20.ok()) fail(inst, "two-block quandle: " + c20.detail);
                    if (!check_medial(q20)) fail(inst, "two-block quandle is not medial");
                }
            } catch (const BudgetExceeded& e) {
                inst.not_applicable = true;
                inst.note = e.what();
            }
            r.instances.push_back(inst);
        }
    }
    return r;
}

CheckResult check_thm20(Ctx& ctx) {
    CheckResult r{"thm20-shadow", {}};
    for (const auto& link : ctx.links) {
        const Diagram& d = catalog(link);
        if (!classical_two_component(d)) continue;
        for (const auto& R : ctx.rings) {
            CheckInstance inst = make_instance(link, R.label());
            try {
                const LinkShadow& sh = ctx.shadow(link, R);
                // the two-block transport runs along the shadow of the
                // longitude identity <chi> = ann(1-t); where specialization
                // breaks that equality the blocks genuinely differ in size
                Submodule ann = ann_in(sh.mod(), sh.ker_phi, one_minus_t());
                if (!(sh.X[0] == ann)) {
                    degenerate(inst, r.name,
                               "specialized <chi> (dim " + std::to_string(sh.X[0].dim()) +
                                   ") is smaller than ann(1-t) (dim " + std::to_string(ann.dim()) + ")");
                    r.instances.push_back(inst);
                    continue;
                }
                FiniteQuandle mq = mq_of_link(d, R, ctx.opt.budget);
                // sample n in ker phi: everything when small, else 32 seeded picks
                FiniteMap incl;
                FiniteModule N = submodule_as_module(sh.mod(), sh.ker_phi, &incl);
                std::vector<FpVec> samples;
                if (N.card() <= 64) {
                    N.for_each_element([&](const FpVec& nv) { samples.push_back(incl.mat.apply(nv)); });
                } else {
                    std::mt19937_64 rng(ctx.instance_seed(r.name, link, R.label()));
                    for (int k = 0; k < 32; ++k) {
                        FpVec nv(N.dim);
                        for (int i = 0; i < N.dim; ++i) nv[i] = static_cast<int>(rng() % R.p);
                        samples.push_back(incl.mat.apply(nv));
                    }
                }
                int found = 0;
                for (const auto& n : samples) {
                    FiniteQuandle q20 = thm20_quandle(sh, n, ctx.opt.budget);
                    if (quandle_iso_search(q20, mq, ctx.opt.budget))
                        ++found;
                    else
                        fail(inst, "no isomorphism for one sampled n");
                }
                if (inst.pass) inst.note = std::to_string(found) + " of " + std::to_string(samples.size()) + " samples matched";
            } catch (const BudgetExceeded& e) {
                inst.not_applicable = true;
                inst.note = e.what();
            }
            r.instances.push_back(inst);
        }
    }
    return r;
}

CheckResult check_group_laws(Ctx& ctx) {
    CheckResult r{"group-laws", {}};
    for (const auto& link : ctx.links) {
        for (const auto& R : ctx.rings) {
            CheckInstance inst = make_instance(link, R.label());
            const LinkShadow& sh = ctx.shadow(link, R);
            if (sh.mod().card() > 512) {
                inst.not_applicable = true;
                inst.note = "module shadow larger than 512 elements";
                r.instances.push_back(inst);
                continue;
            }
            const FiniteModule& M = sh.mod();
            auto U = u_shadow_elements(sh, ctx.opt.budget);
            UElem zero{M.zero(), R.zero()};
            for (const auto& y : U) {
                UElem g = group_op(M, zero, y);
                if (!(g == y)) fail(inst, "0 . y != y");
                UElem inv = group_inv(M, y);
                UElem prod = group_op(M, y, inv);
                if (!(prod.v == M.zero()) || !fp_is_zero(prod.phi)) fail(inst, "y . y^-1 != 0");
            }
            // associativity on sampled triples
            std::mt19937_64 rng(ctx.instance_seed(r.name, link, R.label()));
            size_t n = U.size();
            uint64_t all = static_cast<uint64_t>(n) * n * n;
            size_t samples = all <= 10000 ? static_cast<size_t>(all) : 10000;
            for (size_t s = 0; s < samples; ++s) {
                const UElem *x, *y, *z;
                if (all <= 10000) {
                    x = &U[s / (n * n)];
                    y = &U[(s / n) % n];
                    z = &U[s % n];
                } else {
                    x = &U[rng() % n];
                    y = &U[rng() % n];
                    z = &U[rng() % n];
                }
                UElem left = group_op(M, group_op(M, *x, *y), *z);
                UElem right = group_op(M, *x, group_op(M, *y, *z));
                if (!(left == right)) {
                    fail(inst, "associativity fails");
                    break;
                }
            }
            if (inst.pass) inst.note = "|U| = " + std::to_string(n);
            r.instances.push_back(inst);
        }
    }
    return r;
}

CheckResult check_cor14(Ctx& ctx) {
    CheckResult r{"cor14-eq-def6", {}};
    for (const auto& link : ctx.links) {
        for (const auto& R : ctx.rings) {
            CheckInstance inst = make_instance(link, R.label());
            const LinkShadow& sh = ctx.shadow(link, R);
            if (sh.mod().card() > 512) {
                inst.not_applicable = true;
                inst.note = "module shadow larger than 512 elements";
                r.instances.push_back(inst);
                continue;
            }
            const FiniteModule& M = sh.mod();
            auto U = u_shadow_elements(sh, ctx.opt.budget);
            for (const auto& x : U) {
                for (const auto& y : U) {
                    UElem a = conj_op(M, x, y);
                    UElem b = u_op(M, x, y);
                    if (!(a == b)) {
                        fail(inst, "conj_op != u_op");
                        break;
                    }
                    UElem c = group_op(M, y, group_op(M, x, group_inv(M, y)));
                    if (!(a.v == c.v)) {
                        fail(inst, "conj_op != y.x.y^-1");
                        break;
                    }
                }
                if (!inst.pass) break;
            }
            if (inst.pass) inst.note = "|U| = " + std::to_string(U.size());
            r.instances.push_back(inst);
        }
    }
    return r;
}

CheckResult check_u_axioms(Ctx& ctx) {
    CheckResult r{"u-quandle-axioms", {}};
    for (const auto& link : ctx.links) {
        for (const auto& R : ctx.rings) {
            CheckInstance inst = make_instance(link, R.label());
            const LinkShadow& sh = ctx.shadow(link, R);
            if (sh.mod().card() > 512) {
                inst.not_applicable = true;
                inst.note = "module shadow larger than 512 elements";
                r.instances.push_back(inst);
                continue;
            }
            auto U = u_shadow_elements(sh, ctx.opt.budget);
            FiniteQuandle q = u_quandle_on(sh, U);
            QuandleCheck c = check_axioms(q);
            if (!c.ok()) fail(inst, c.detail);
            r.instances.push_back(inst);
        }
    }
    return r;
}

CheckResult check_property8(Ctx& ctx) {
    CheckResult r{"property8-translation", {}};
    for (const auto& link : ctx.links) {
        for (const auto& R : ctx.rings) {
            CheckInstance inst = make_instance(link, R.label());
            try {
                const LinkShadow& sh = ctx.shadow(link, R);
                MedialInput inp;
                inp.ambient = sh.mod();
                inp.N = sh.ker_phi;
                inp.m = sh.meridian;
                inp.X = sh.X;
                FiniteQuandle q = build_medial(inp, ctx.opt.budget);
                // translate every m_i by a seeded module element
                std::mt19937_64 rng(ctx.instance_seed(r.name, link, R.label()));
                for (int trial = 0; trial < 3; ++trial) {
                    FpVec shift(sh.mod().dim);
                    for (int i = 0; i < sh.mod().dim; ++i) shift[i] = static_cast<int>(rng() % R.p);
                    MedialInput moved = inp;
                    for (auto& m : moved.m) m = fp_sub(m, shift, R.p);
                    FiniteQuandle q2 = build_medial(moved, ctx.opt.budget);
                    if (!(q == q2)) {
                        fail(inst, "table changed under a common meridian translation");
                        break;
                    }
                }
            } catch (const BudgetExceeded& e) {
                inst.not_applicable = true;
                inst.note = e.what();
            }
            r.instances.push_back(inst);
        }
    }
    return r;
}

CheckResult check_property9(Ctx& ctx) {
    CheckResult r{"property9-iso", {}};
    for (const auto& link : ctx.links) {
        for (const auto& R : ctx.rings) {
            CheckInstance inst = make_instance(link, R.label());
            try {
                const LinkShadow& sh = ctx.shadow(link, R);
                MedialInput inp;
                inp.ambient = sh.mod();
                inp.N = sh.ker_phi;
                inp.m = sh.meridian;
                inp.X = sh.X;
                FiniteQuandle q = build_medial(inp, ctx.opt.budget);
                FiniteMap incl;
                FiniteModule N = submodule_as_module(sh.mod(), sh.ker_phi, &incl);
                std::mt19937_64 rng(ctx.instance_seed(r.name, link, R.label()));
                for (int trial = 0; trial < 3; ++trial) {
                    MedialInput moved = inp;
                    for (auto& m : moved.m) {
                        FpVec nv(N.dim);
                        for (int i = 0; i < N.dim; ++i) nv[i] = static_cast<int>(rng() % R.p);
                        FpVec shift = sh.mod().apply_laurent(one_minus_t(), incl.mat.apply(nv));
                        m = fp_add(m, shift, R.p);
                    }
                    FiniteQuandle q2 = build_medial(moved, ctx.opt.budget);
                    if (!quandle_iso_search(q, q2, ctx.opt.budget)) {
                        fail(inst, "no isomorphism after a (1-t) n_i shift");
                        break;
                    }
                }
            } catch (const BudgetExceeded& e) {
                inst.not_applicable = true;
                inst.note = e.what();
            }
            r.instances.push_back(inst);
        }
    }
    return r;
}

CheckResult check_counterexample(Ctx& ctx) {
    CheckResult r{"counterexample-shadow", {}};
    auto have = [&](const char* n) {
        return std::find(ctx.links.begin(), ctx.links.end(), n) != ctx.links.end();
    };
    if (!have("unknot") || !have("hopf+")) return r;
    auto trivial_ops = [](const FiniteQuandle& q) {
        for (int x = 0; x < q.size(); ++x)
            for (int y = 0; y < q.size(); ++y)
                if (q.op(x, y) != x) return false;
        return true;
    };
    bool dim_differs_somewhere = false;
    std::string dims;
    for (const auto& R : ctx.rings) {
        CheckInstance inst = make_instance("unknot/hopf+", R.label());
        for (const char* link : {"unknot", "hopf+"}) {
            FiniteQuandle mq = mq_of_link(catalog(link), R, ctx.opt.budget);
            if (!trivial_ops(mq)) fail(inst, std::string(link) + " MQ shadow is not trivial");
            FiniteQuandle qa = qa_shadow_quandle(ctx.shadow(link, R), ctx.opt.budget);
            if (!trivial_ops(qa)) fail(inst, std::string(link) + " arc-class quandle is not trivial");
        }
        int du = ctx.shadow("unknot", R).mod().dim;
        int dh = ctx.shadow("hopf+", R).mod().dim;
        if (du != dh) dim_differs_somewhere = true;
        dims += R.q_str() + ":" + std::to_string(du) + "/" + std::to_string(dh) + " ";
        r.instances.push_back(inst);
    }
    CheckInstance agg = make_instance("unknot/hopf+", "all rings");
    if (!dim_differs_somewhere)
        fail(agg, "module shadows have equal dimension in every default ring");
    else
        agg.note = "dims " + dims;
    r.instances.push_back(agg);
    return r;
}

CheckResult check_invariance(Ctx& ctx) {
    CheckResult r{"invariance-smoke", {}};
    auto have = [&](const char* n) {
        return std::find(ctx.links.begin(), ctx.links.end(), n) != ctx.links.end();
    };
    if (!have("unknot") || !have("unknot-kink")) return r;
    for (const auto& R : ctx.rings) {
        CheckInstance inst = make_instance("unknot/unknot-kink", R.label());
        const LinkShadow& a = ctx.shadow("unknot", R);
        const LinkShadow& b = ctx.shadow("unknot-kink", R);
        if (!iso_search(a.mod(), b.mod(), {}, ctx.opt.budget)) fail(inst, "module shadows not isomorphic");
        FiniteQuandle qa = mq_of_link(a.diag, R, ctx.opt.budget);
        FiniteQuandle qb = mq_of_link(b.diag, R, ctx.opt.budget);
        if (!quandle_iso_search(qa, qb, ctx.opt.budget)) fail(inst, "MQ shadows not isomorphic");
        r.instances.push_back(inst);
    }
    return r;
}

}  // namespace

std::vector<std::string> verify_check_names() {
    return {
        "crowell-welldef",   "alexander-values",  "alexander-invariance", "longitude-phi",
        "longitude-annihilated", "longitude-sum", "lemma18",           "property4-containment",
        "property5-shadow",  "lemma19-shadow",    "quandle-axioms",    "thm20-shadow",
        "group-laws",        "cor14-eq-def6",     "u-quandle-axioms",  "property8-translation",
        "property9-iso",     "counterexample-shadow", "invariance-smoke",
    };
}

std::vector<CheckResult> run_verify(const VerifyOptions& opt) {
    Ctx ctx{opt, {}, {}, {}};
    ctx.links = opt.links.empty() ? catalog_names() : opt.links;
    ctx.rings = opt.rings.empty() ? default_rings() : opt.rings;

    std::vector<CheckResult> out;
    auto want = [&](const char* name) { return opt.only_check.empty() || opt.only_check == name; };
    if (want("crowell-welldef")) out.push_back(check_crowell_welldef(ctx));
    if (want("alexander-values")) out.push_back(check_alexander_values(ctx));
    if (want("alexander-invariance")) out.push_back(check_alexander_invariance(ctx));
    if (want("longitude-phi")) out.push_back(check_longitude_phi(ctx));
    if (want("longitude-annihilated")) out.push_back(check_longitude_annihilated(ctx));
    if (want("longitude-sum")) out.push_back(check_longitude_sum(ctx));
    if (want("lemma18")) out.push_back(check_lemma18(ctx));
    if (want("property4-containment")) out.push_back(check_property4(ctx));
    if (want("property5-shadow")) out.push_back(check_property5(ctx));
    if (want("lemma19-shadow")) out.push_back(check_lemma19(ctx));
    if (want("quandle-axioms")) out.push_back(check_quandle_axioms(ctx));
    if (want("thm20-shadow")) out.push_back(check_thm20(ctx));
    if (want("group-laws")) out.push_back(check_group_laws(ctx));
    if (want("cor14-eq-def6")) out.push_back(check_cor14(ctx));
    if (want("u-quandle-axioms")) out.push_back(check_u_axioms(ctx));
    if (want("property8-translation")) out.push_back(check_property8(ctx));
    if (want("property9-iso")) out.push_back(check_property9(ctx));
    if (want("counterexample-shadow")) out.push_back(check_counterexample(ctx));
    if (want("invariance-smoke")) out.push_back(check_invariance(ctx));
    return out;
}

std::string format_check_result(const CheckResult& r, bool strict, bool verbose) {
    std::ostringstream out;
    int fails = r.failures(strict);
    int devs = r.deviations();
    int napp = 0;
    for (const auto& i : r.instances)
        if (i.not_applicable) ++napp;
    out << (fails ? "FAIL " : "PASS ") << r.name << " (" << r.instances.size() << " instances";
    if (devs) out << ", " << devs << " recorded deviations";
    if (napp) out << ", " << napp << " n/a";
    out << ")";
    for (const auto& i : r.instances) {
        bool show = verbose || !i.pass || (strict && i.deviation);
        if (!show) continue;
        out << "\n  " << (i.pass ? (i.deviation ? "dev " : (i.not_applicable ? "n/a " : "ok  ")) : "FAIL")
            << " " << i.link;
        if (!i.ring.empty()) out << " @ " << i.ring;
        if (!i.note.empty()) out << " : " << i.note;
    }
    return out.str();
}

}  // namespace qk
