#include "doctest.h"

#include "cubix/enriched.hpp"
#include "cubix/error.hpp"
#include "cubix/format.hpp"

using namespace cubix;

TEST_CASE("presheaf round trips are isomorphic (and in fact identical)") {
    std::vector<PshPtr> corpus = {
        cubical_representable(Flavor::reduced, 2, 2),
        cubical_representable(Flavor::connections, 1, 3),
        cubical_boundary(Flavor::connections, 2, 2).object,
        cubical_cap(Flavor::reduced, 2, 1, 0, 2).object,
        simplex(2, 2),
        simplicial_horn(2, 1, 2).object,
        nerve_of_category(FinCategory::square(), 2),
    };
    for (const PshPtr& x : corpus) {
        const std::string text = presheaf_to_json(*x);
        PshPtr back = presheaf_from_json(text);
        CHECK(presheaf_to_json(*back) == text);
        CHECK(find_isomorphism(x, back).has_value());
    }
}

TEST_CASE("emission is deterministic") {
    PshPtr a = cubical_boundary(Flavor::connections, 2, 2).object;
    PshPtr b = cubical_boundary(Flavor::connections, 2, 2).object;
    CHECK(presheaf_to_json(*a) == presheaf_to_json(*b));
}

TEST_CASE("maps round trip") {
    auto bd = cubical_boundary(Flavor::reduced, 2, 2);
    const std::string text = map_to_json(bd.inclusion);
    PresheafMap back = map_from_json(text);
    back.validate();
    CHECK(map_to_json(back) == text);
    CHECK(is_mono(back));
}

TEST_CASE("chain complexes round trip") {
    ChainRealization lr(cubical_boundary(Flavor::connections, 2, 2).object, Ring::Z());
    const std::string text = chain_to_json(*lr.object());
    ChPtr back = chain_from_json(text);
    CHECK(chain_to_json(*back) == text);
    CHECK(homology_to_text(*back) == "H0=Z H1=Z");

    ChPtr f2 = c1_power(Ring::Fp(2), 1);
    ChPtr back2 = chain_from_json(chain_to_json(*f2));
    CHECK(back2->ring() == Ring::Fp(2));
}

TEST_CASE("categories round trip through the cellwise composition format") {
    for (CatPtr c : {discrete_enrich(FinCategory::chain(1), Flavor::connections, 1), W(2, 1)}) {
        const std::string text = category_to_json(*c);
        CatPtr back = category_from_json(text);
        CHECK(category_to_json(*back) == text);
        CHECK(back->objects() == c->objects());
        // nerves agree
        CHECK(find_isomorphism(hc_nerve(back, 2), hc_nerve(c, 2)).has_value());
    }
}

TEST_CASE("ill-formed files are rejected with the right error kinds") {
    CHECK_THROWS_AS(presheaf_from_json("{"), Error);
    CHECK_THROWS_AS(presheaf_from_json("{}"), Error);
    CHECK_THROWS_AS(presheaf_from_json(R"({"format_version":2,"kind":"cubical"})"), Error);
    try {
        presheaf_from_json(R"({"format_version":1,"kind":"nonsense"})");
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == errc::parse);
    }
    // a structurally broken presheaf: an action violating the identities
    PshPtr edge = cubical_representable(Flavor::reduced, 1, 1);
    std::string text = presheaf_to_json(*edge);
    // swap the two vertex images of the nondegenerate edge's faces
    const auto pos = text.find("\"image\"");
    REQUIRE(pos != std::string::npos);
    // corrupt: point both faces of "id" at the same vertex but leave the
    // degeneracies, which breaks a simplicial-style identity only if
    // inconsistent; easiest reliable corruption: rename a cell reference
    std::string broken = text;
    const auto p2 = broken.find("d0@0");
    REQUIRE(p2 != std::string::npos);
    broken.replace(p2, 4, "d1@0");
    bool threw = false;
    try {
        presheaf_from_json(broken);
    } catch (const Error&) {
        threw = true;
    }
    CHECK(threw);
}

TEST_CASE("homology text formats") {
    // torus: H0=Z H1=Z^2 H2=Z
    auto bd = cubical_boundary(Flavor::connections, 2, 2);
    DayTensor torus(bd.object, bd.object);
    ChainRealization lr(torus.object(), Ring::Z());
    CHECK(homology_to_text(*lr.object()) == "H0=Z H1=Z^2 H2=Z");
    // torsion formatting
    Matrix d(1, 1);
    d.at(0, 0) = 2;
    FinChainComplex doubled(Ring::Z(), {{"v"}, {"e"}}, {d});
    CHECK(homology_to_text(doubled) == "H0=Z/2 H1=0");
}
