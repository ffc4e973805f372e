#include "doctest.h"

#include <cstdio>
#include <string>

#include "cubix.h"

namespace {

struct Str {
    char* s = nullptr;
    ~Str() { cubix_string_free(s); }
    std::string get() const { return s ? s : ""; }
};

struct Obj {
    cubix_object* o = nullptr;
    ~Obj() { cubix_object_free(o); }
};

} // namespace

TEST_CASE("word normalization through the C surface") {
    Str normal, table;
    int src = -1, tgt = -1;
    REQUIRE(cubix_word_normalize('c', "g@0 . d0@0", -1, &normal.s, &table.s, &src, &tgt)
            == CUBIX_OK);
    CHECK(normal.get() == "id");
    CHECK(src == 1);
    CHECK(tgt == 1);

    CHECK(cubix_word_normalize('r', "g@0", -1, &normal.s, &table.s, &src, &tgt)
          == CUBIX_ERR_SEMANTIC);
    CHECK(cubix_word_normalize('q', "id", -1, &normal.s, &table.s, &src, &tgt)
          == CUBIX_ERR_PARSE);
    CHECK(std::string(cubix_last_error()).size() > 0);
}

TEST_CASE("hom set counts and guards") {
    uint64_t count = 0;
    REQUIRE(cubix_homset_count('c', 2, 1, &count) == CUBIX_OK);
    CHECK(count == 5);
    CHECK(cubix_homset_count('c', 9, 9, &count) == CUBIX_ERR_GUARD);
}

TEST_CASE("objects, serialization and operations") {
    Obj box1, box2, tensor_obj;
    REQUIRE(cubix_build_box('r', 1, 2, &box1.o) == CUBIX_OK);
    REQUIRE(cubix_build_box('r', 2, 2, &box2.o) == CUBIX_OK);
    REQUIRE(cubix_tensor(box1.o, box1.o, &tensor_obj.o) == CUBIX_OK);
    int iso = 0;
    REQUIRE(cubix_iso(tensor_obj.o, box2.o, &iso) == CUBIX_OK);
    CHECK(iso == 1);

    Str json;
    REQUIRE(cubix_object_to_json(box1.o, &json.s) == CUBIX_OK);
    Obj back;
    REQUIRE(cubix_object_from_json(json.s, &back.o) == CUBIX_OK);
    Str json2;
    REQUIRE(cubix_object_to_json(back.o, &json2.s) == CUBIX_OK);
    CHECK(json.get() == json2.get());

    Str kind;
    REQUIRE(cubix_object_kind(box1.o, &kind.s) == CUBIX_OK);
    CHECK(kind.get() == "cubical");
}

TEST_CASE("homology and fills through the C surface") {
    Obj bd;
    REQUIRE(cubix_build_boundary('c', 2, 2, &bd.o) == CUBIX_OK);
    Str h;
    REQUIRE(cubix_homology(bd.o, 0, &h.s) == CUBIX_OK);
    CHECK(h.get() == "H0=Z H1=Z");

    uint64_t total = 0, unfillable = 0;
    REQUIRE(cubix_cap_fill(bd.o, 2, 0, 0, &total, &unfillable) == CUBIX_OK);
    CHECK(total > 0);
    CHECK(unfillable > 0);

    Obj pt;
    REQUIRE(cubix_build_simplex(0, 2, &pt.o) == CUBIX_OK);
    CHECK(cubix_horn_fill(pt.o, 2, 1, &total, &unfillable) == CUBIX_OK);
    CHECK(unfillable == 0);
}

TEST_CASE("nerves through the C surface") {
    Obj w2, nerve, classical;
    REQUIRE(cubix_build_w_category(2, 1, &w2.o) == CUBIX_OK);
    REQUIRE(cubix_nerve(w2.o, 2, &nerve.o) == CUBIX_OK);
    Str kind;
    REQUIRE(cubix_object_kind(nerve.o, &kind.s) == CUBIX_OK);
    CHECK(kind.get() == "simplicial");

    Obj disc, dnerve, n2;
    REQUIRE(cubix_build_discrete_category("[2]", 'c', 2, &disc.o) == CUBIX_OK);
    REQUIRE(cubix_nerve(disc.o, 2, &dnerve.o) == CUBIX_OK);
    REQUIRE(cubix_build_nerve_of_chain(2, 2, &n2.o) == CUBIX_OK);
    int iso = 0;
    REQUIRE(cubix_iso(dnerve.o, n2.o, &iso) == CUBIX_OK);
    CHECK(iso == 1);

    Obj dg;
    REQUIRE(cubix_nerve_dg("arrow", 2, 2, &dg.o) == CUBIX_OK);
    CHECK(cubix_nerve_dg("nonsense", 2, 2, &dg.o) == CUBIX_ERR_PARSE);
    CHECK(cubix_nerve_dg("arrow", 4, 2, &dg.o) == CUBIX_ERR_SEMANTIC); // 4 is not prime
}

TEST_CASE("null arguments are rejected, not crashed on") {
    CHECK(cubix_word_normalize('c', nullptr, -1, nullptr, nullptr, nullptr, nullptr)
          == CUBIX_ERR_SEMANTIC);
    CHECK(cubix_object_save(nullptr, "/tmp/x") == CUBIX_ERR_SEMANTIC);
    Str s;
    CHECK(cubix_object_kind(nullptr, &s.s) == CUBIX_ERR_SEMANTIC);
}
