#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <utility>

#include "fixtures.hpp"
#include "hdakit/precubical.hpp"

using namespace hdakit;

TEST_CASE("the two-square complex is a precubical set") {
  PrecubicalSet cx = fixtures::two_squares();
  REQUIRE(validate_precubical(cx).empty());
  CHECK(cx.max_dim() == 2);
  CHECK(cx.cells_of_dim(0).size() == 6);
  CHECK(cx.cells_of_dim(1).size() == 7);
  CHECK(cx.cells_of_dim(2).size() == 2);
  CHECK(cx.face("x", 2, 0) == "q");
  CHECK(cx.face("y", 1, 1) == "u");
  CHECK(cx.alphabet() == std::set<Label>{"a"});

  auto ups = cx.up_steps("s");
  REQUIRE(ups.size() == 1);
  CHECK(ups[0] == std::pair<CellId, int>{"y", 2});
  CHECK(cx.up_steps("b").size() == 2);  // s and v start here
  CHECK(cx.up_steps("x").empty());
}

TEST_CASE("cube fixtures validate") {
  REQUIRE(validate_precubical(fixtures::cube_complex({"a", "b", "c"})).empty());
  CHECK(fixtures::filled_square().cells().size() == 9);
  PrecubicalSet hollow = fixtures::hollow_square();
  CHECK(hollow.cells().size() == 8);
  REQUIRE(validate_precubical(hollow).empty());
  CHECK(hollow.up_steps("0*").empty());
}

TEST_CASE("validation pinpoints broken complexes") {
  SECTION("dangling face reference") {
    PrecubicalSet cx;
    cx.add_cell(Cell{"v", {}, {}, {}});
    cx.add_cell(Cell{"e", CanonicalObject{{"a"}}, {"v"}, {"w"}});
    auto bad = validate_precubical(cx);
    REQUIRE(bad.size() == 1);
    CHECK(bad[0].find("w") != std::string::npos);
  }
  SECTION("face list of the wrong length") {
    PrecubicalSet cx;
    cx.add_cell(Cell{"v", {}, {}, {}});
    cx.add_cell(Cell{"e", CanonicalObject{{"a"}}, {"v"}, {}});
    auto bad = validate_precubical(cx);
    REQUIRE(bad.size() == 1);
    CHECK(bad[0].find("length") != std::string::npos);
  }
  SECTION("face labels must drop exactly the indexed event") {
    // a square whose two lower faces are swapped
    PrecubicalSet cx;
    for (const char* vtx : {"00", "01", "10", "11"}) cx.add_cell(Cell{vtx, {}, {}, {}});
    cx.add_cell(Cell{"bot", CanonicalObject{{"a"}}, {"00"}, {"10"}});
    cx.add_cell(Cell{"top", CanonicalObject{{"a"}}, {"01"}, {"11"}});
    cx.add_cell(Cell{"lft", CanonicalObject{{"b"}}, {"00"}, {"01"}});
    cx.add_cell(Cell{"rgt", CanonicalObject{{"b"}}, {"10"}, {"11"}});
    cx.add_cell(Cell{"sq", CanonicalObject{{"a", "b"}}, {"bot", "lft"}, {"rgt", "top"}});
    bool mentions_labels = false;
    for (const auto& msg : validate_precubical(cx))
      mentions_labels |= msg.find("incompatible") != std::string::npos;
    CHECK(mentions_labels);
  }
  SECTION("corner mismatch breaks the cubical identity") {
    PrecubicalSet cx;
    for (const char* vtx : {"00", "01", "10", "11", "01b", "11b"})
      cx.add_cell(Cell{vtx, {}, {}, {}});
    cx.add_cell(Cell{"bot", CanonicalObject{{"a"}}, {"00"}, {"10"}});
    cx.add_cell(Cell{"lft", CanonicalObject{{"b"}}, {"00"}, {"01"}});
    cx.add_cell(Cell{"rgt", CanonicalObject{{"b"}}, {"10"}, {"11"}});
    // detached top edge: labels fit, corners do not
    cx.add_cell(Cell{"far", CanonicalObject{{"a"}}, {"01b"}, {"11b"}});
    cx.add_cell(Cell{"sq", CanonicalObject{{"a", "b"}}, {"lft", "bot"}, {"rgt", "far"}});
    bool mentions_identity = false;
    for (const auto& msg : validate_precubical(cx))
      mentions_identity |= msg.find("cubical identity") != std::string::npos;
    CHECK(mentions_identity);
  }
  SECTION("the initial cell of an HDA is a vertex") {
    HDA h;
    h.complex = fixtures::filled_square();
    h.initial = "00";
    CHECK(validate_hda(h).empty());
    h.initial = "*0";
    CHECK_FALSE(validate_hda(h).empty());
    h.initial = "nope";
    CHECK_FALSE(validate_hda(h).empty());
  }
}

TEST_CASE("symmetric faces move along the base permutation") {
  SComplex sx = symmetrize(fixtures::filled_square());
  Permutation swap({2, 1});
  SCell top{Permutation::identity(2), "**"};
  SCell swapped = sx.action(swap, top);

  CHECK(sx.labels(top) == CanonicalObject{{"a", "b"}});
  CHECK(sx.labels(swapped) == CanonicalObject{{"b", "a"}});

  // If swap fixed the top cell, the two lower edges of the square would
  // have to coincide.  They do not, and the faces keep them apart.
  SCell f1 = sx.face(top, 1, 0);
  SCell f2 = sx.face(swapped, 1, 0);
  CHECK(f1 == SCell{Permutation::identity(1), "0*"});
  CHECK(f2 == SCell{Permutation::identity(1), "*0"});
  CHECK_FALSE(f1 == f2);
}

TEST_CASE("the symmetrisation is a symmetric precubical set") {
  SComplex sx = symmetrize(fixtures::cube_complex({"a", "b", "c"}));
  auto scells = sx.all_scells();
  CHECK(scells.size() == 38);  // 8 + 12 + 6*2 + 1*6

  for (const SCell& s : scells) {
    const int n = sx.dim(s);
    for (int i = 1; i <= n; ++i)
      for (int k = 0; k <= 1; ++k)
        CHECK(sx.labels(sx.face(s, i, k)) == face_object(sx.labels(s), i));
    for (int j = 2; j <= n; ++j)
      for (int i = 1; i < j; ++i)
        for (int k = 0; k <= 1; ++k)
          for (int l = 0; l <= 1; ++l)
            CHECK(sx.face(sx.face(s, j, l), i, k) == sx.face(sx.face(s, i, k), j - 1, l));
    for (const Permutation& tau : all_permutations(n))
      for (int i = 1; i <= n; ++i)
        for (int k = 0; k <= 1; ++k)
          CHECK(sx.face(sx.action(tau, s), i, k) ==
                sx.action(induced_face_permutation(tau, i),
                          sx.face(s, tau.inverse()(i), k)));
  }
}

TEST_CASE("up-steps list every scell one level up") {
  SComplex sx = symmetrize(fixtures::cube_complex({"a", "b", "c"}));
  auto scells = sx.all_scells();
  for (const SCell& s : scells) {
    const int n = sx.dim(s);
    std::set<std::pair<SCell, int>> expect;
    for (const SCell& z : scells) {
      if (sx.dim(z) != n + 1) continue;
      for (int i = 1; i <= n + 1; ++i)
        if (sx.face(z, i, 0) == s) expect.insert({z, i});
    }
    auto got = sx.up_steps(s);
    CHECK(std::set<std::pair<SCell, int>>(got.begin(), got.end()) == expect);
    CHECK(got.size() == expect.size());  // no duplicates either
  }
}

TEST_CASE("forgetting the symmetry gives a plain precubical set") {
  PrecubicalSet m = forget_symmetry(symmetrize(fixtures::two_squares()));
  REQUIRE(validate_precubical(m).empty());
  CHECK(m.cells().size() == 17);  // 6 + 7 + 2 * 2!
  REQUIRE(m.has("[2,1].x"));
  CHECK(m.face("[2,1].x", 1, 0) == "[1].q");
  CHECK(m.labels("[2,1].x") == CanonicalObject{{"a", "a"}});
  CHECK(m.alphabet() == std::set<Label>{"a"});

  PrecubicalSet big = forget_symmetry(symmetrize(fixtures::cube_complex({"a", "b", "c"})));
  REQUIRE(validate_precubical(big).empty());
  CHECK(big.cells().size() == 38);
  CHECK_THROWS_AS(forget_symmetry(symmetrize(fixtures::cube_complex({"a", "b", "c"})), 2),
                  Error);

  HDA h = forget_symmetry(symmetrize(fixtures::filled_square()), "00");
  CHECK(h.initial == "[].00");
  CHECK(validate_hda(h).empty());
}
