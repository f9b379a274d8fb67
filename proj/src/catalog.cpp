#include <map>
#include <utility>

#include "quandlekit/linkdiag.hpp"

namespace qk {

// Built-in diagrams.  The knot and link entries were traced from standard
// braid closures: trefoil = closure of s1^3, fig8 = closure of (s1 s2^-1)^2,
// solomon = closure of s1^4, whitehead = closure of s1 s2^-1 s1 s2^-1 s1.
// Arc names follow each component in traversal order.

namespace {

struct CatalogEntry {
    const char* name;
    const char* text;
};

const CatalogEntry kCatalog[] = {
    {"unknot",
     "link unknot\n"
     "components 1\n"
     "arc a 1\n"
     "base 1 a\n"},

    {"unknot-kink",
     "# unknot with one positive curl\n"
     "link unknot-kink\n"
     "components 1\n"
     "arc x 1\n"
     "crossing c over=x b1=x b2=x sign=+\n"
     "order 1 c\n"
     "base 1 x\n"},

    {"hopf+",
     "# positive Hopf link, linking number +1\n"
     "link hopf+\n"
     "components 2\n"
     "arc a 1\n"
     "arc b 2\n"
     "crossing c1 over=a b1=b b2=b sign=+\n"
     "crossing c2 over=b b1=a b2=a sign=+\n"
     "order 1 c2\n"
     "order 2 c1\n"
     "base 1 a\n"
     "base 2 b\n"},

    {"hopf-",
     "# negative Hopf link, linking number -1\n"
     "link hopf-\n"
     "components 2\n"
     "arc a 1\n"
     "arc b 2\n"
     "crossing c1 over=b b1=a b2=a sign=-\n"
     "crossing c2 over=a b1=b b2=b sign=-\n"
     "order 1 c1\n"
     "order 2 c2\n"
     "base 1 a\n"
     "base 2 b\n"},

    {"trefoil",
     "# right-handed trefoil, all crossings positive\n"
     "link trefoil\n"
     "components 1\n"
     "arc x1 1\n"
     "arc x2 1\n"
     "arc x3 1\n"
     "crossing c1 over=x1 b1=x2 b2=x3 sign=+\n"
     "crossing c2 over=x2 b1=x3 b2=x1 sign=+\n"
     "crossing c3 over=x3 b1=x1 b2=x2 sign=+\n"
     "order 1 c3 c1 c2\n"
     "base 1 x1\n"},

    {"trefoil-mirror",
     "# left-handed trefoil, all crossings negative\n"
     "link trefoil-mirror\n"
     "components 1\n"
     "arc x1 1\n"
     "arc x2 1\n"
     "arc x3 1\n"
     "crossing c1 over=x1 b1=x3 b2=x2 sign=-\n"
     "crossing c2 over=x2 b1=x1 b2=x3 sign=-\n"
     "crossing c3 over=x3 b1=x2 b2=x1 sign=-\n"
     "order 1 c3 c1 c2\n"
     "base 1 x1\n"},

    {"fig8",
     "# figure-eight knot\n"
     "link fig8\n"
     "components 1\n"
     "arc x1 1\n"
     "arc x2 1\n"
     "arc x3 1\n"
     "arc x4 1\n"
     "crossing c1 over=x1 b1=x2 b2=x3 sign=+\n"
     "crossing c2 over=x4 b1=x2 b2=x1 sign=-\n"
     "crossing c3 over=x3 b1=x4 b2=x1 sign=+\n"
     "crossing c4 over=x2 b1=x4 b2=x3 sign=-\n"
     "order 1 c2 c1 c4 c3\n"
     "base 1 x1\n"},

    {"solomon",
     "# (2,4) torus link, linking number +2\n"
     "link solomon\n"
     "components 2\n"
     "arc a1 1\n"
     "arc a2 1\n"
     "arc b1 2\n"
     "arc b2 2\n"
     "crossing c1 over=a1 b1=b1 b2=b2 sign=+\n"
     "crossing c2 over=b2 b1=a1 b2=a2 sign=+\n"
     "crossing c3 over=a2 b1=b2 b2=b1 sign=+\n"
     "crossing c4 over=b1 b1=a2 b2=a1 sign=+\n"
     "order 1 c2 c4\n"
     "order 2 c1 c3\n"
     "base 1 a1\n"
     "base 2 b1\n"},

    {"whitehead",
     "# Whitehead link, linking number 0\n"
     "link whitehead\n"
     "components 2\n"
     "arc u1 1\n"
     "arc u2 1\n"
     "arc v1 2\n"
     "arc v2 2\n"
     "arc v3 2\n"
     "crossing c1 over=u1 b1=v1 b2=v2 sign=+\n"
     "crossing c2 over=v3 b1=u2 b2=u1 sign=-\n"
     "crossing c3 over=v2 b1=v3 b2=v1 sign=+\n"
     "crossing c4 over=u2 b1=v3 b2=v2 sign=-\n"
     "crossing c5 over=v1 b1=u2 b2=u1 sign=+\n"
     "order 1 c2 c5\n"
     "order 2 c1 c4 c3\n"
     "base 1 u1\n"
     "base 2 v1\n"},

    {"vtrefoil",
     "# virtual trefoil: two classical crossings, one virtual (not stored)\n"
     "link vtrefoil\n"
     "components 1\n"
     "virtual\n"
     "arc s1 1\n"
     "arc s2 1\n"
     "crossing c1 over=s1 b1=s1 b2=s2 sign=+\n"
     "crossing c2 over=s1 b1=s2 b2=s1 sign=+\n"
     "order 1 c1 c2\n"
     "base 1 s1\n"},
};

const std::map<std::string, Diagram>& catalog_map() {
    static const std::map<std::string, Diagram> m = [] {
        std::map<std::string, Diagram> out;
        for (const auto& e : kCatalog) out.emplace(e.name, parse_diagram(e.text));
        return out;
    }();
    return m;
}

}  // namespace

std::vector<std::string> catalog_names() {
    std::vector<std::string> names;
    for (const auto& e : kCatalog) names.push_back(e.name);
    return names;
}

bool catalog_has(const std::string& name) {
    for (const auto& e : kCatalog)
        if (name == e.name) return true;
    return false;
}

const Diagram& catalog(const std::string& name) {
    auto& m = catalog_map();
    auto it = m.find(name);
    if (it == m.end()) throw DomainError("no catalog entry named '" + name + "'");
    return it->second;
}

std::string catalog_source(const std::string& name) {
    for (const auto& e : kCatalog)
        if (name == e.name) return e.text;
    throw DomainError("no catalog entry named '" + name + "'");
}

}  // namespace qk
