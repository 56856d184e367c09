#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <deque>
#include <set>

#include "fixtures.hpp"
#include "hdakit/path.hpp"

using namespace hdakit;

namespace {

// breadth-first path enumeration up to a step bound
template <typename C>
std::vector<Path<C>> paths_from(const C& cx, const typename C::CellRef& start, int bound) {
  std::vector<Path<C>> out{point_path<C>(start)};
  size_t head = 0;
  while (head < out.size()) {
    Path<C> cur = out[head++];
    if (cur.length() == bound) continue;
    for (auto& q : extensions(cx, cur)) out.push_back(std::move(q));
  }
  return out;
}

}  // namespace

TEST_CASE("paths validate stepwise") {
  PrecubicalSet cx = fixtures::two_squares();
  XPath p{{"a", "p", "x", "t", "d"}, {{0, 1}, {0, 1}, {1, 1}, {1, 1}}};
  CHECK(validate_path(cx, p).empty());
  CHECK(validate_path(cx, p, true).empty());
  CHECK(format_path(cx, p) == "a +1 p +1 x -1 t -1 d");

  XPath wrong_index = p;
  wrong_index.steps[1] = {0, 2};  // the second lower face of x is q, not p
  CHECK_FALSE(validate_path(cx, wrong_index).empty());
  XPath wrong_cell = p;
  wrong_cell.cells[3] = "s";
  CHECK_FALSE(validate_path(cx, wrong_cell).empty());
  XPath not_initial{{"p", "x"}, {{0, 1}}};
  CHECK(validate_path(cx, not_initial).empty());
  CHECK_FALSE(validate_path(cx, not_initial, true).empty());
  CellId want = "b";
  CHECK_FALSE(validate_path(cx, p, true, &want).empty());

  // the b-edge-to-a-edge crossing of a filled square
  PrecubicalSet sq = fixtures::filled_square();
  XPath cross{{"0*", "**", "*1"}, {{0, 1}, {1, 2}}};
  CHECK(validate_path(sq, cross).empty());
  // with the step indices swapped the face equations fail
  XPath garbled{{"0*", "**", "*1"}, {{0, 2}, {1, 1}}};
  CHECK(validate_path(sq, garbled).size() == 2);
}

TEST_CASE("symmetric paths validate through sface") {
  PrecubicalSet sq = fixtures::filled_square();
  SComplex sx = symmetrize(sq);
  XPath cross{{"0*", "**", "*1"}, {{0, 1}, {1, 2}}};
  SPath lift = canonical_lift(sq, cross);
  CHECK(validate_path(sx, lift).empty());
  CHECK(underlying_path(lift) == cross);

  // breaking permutation coherence breaks the step condition
  SPath skew = lift;
  skew.cells[1] = SCell{Permutation({2, 1}), "**"};
  CHECK_FALSE(validate_path(sx, skew).empty());
}

TEST_CASE("concatenation and prefixes") {
  PrecubicalSet cx = fixtures::two_squares();
  XPath p{{"a", "p"}, {{0, 1}}};
  XPath q{{"p", "x", "t"}, {{0, 1}, {1, 1}}};
  XPath r{{"t", "d", "u"}, {{1, 1}, {0, 1}}};

  XPath pq = concat(p, q);
  CHECK(validate_path(cx, pq).empty());
  CHECK(pq.length() == 3);
  CHECK(concat(concat(p, q), r) == concat(p, concat(q, r)));
  CHECK(concat(p, point_path<PrecubicalSet>("p")) == p);
  CHECK(concat(point_path<PrecubicalSet>("a"), p) == p);
  CHECK_THROWS_AS(concat(q, p), Error);

  auto pre = prefixes(pq);
  REQUIRE(pre.size() == 4);
  CHECK(pre.front() == point_path<PrecubicalSet>("a"));
  CHECK(pre.back() == pq);
  for (const auto& pr : pre) CHECK(validate_path(cx, pr).empty());
  CHECK(prefixes(point_path<PrecubicalSet>("a")).size() == 1);
}

TEST_CASE("the four adjacency rules on a solid cube") {
  PrecubicalSet cx = fixtures::cube_complex({"a", "b", "c"});

  SECTION("rule 1 swaps two starts") {
    XPath p{{"000", "*00", "**0"}, {{0, 1}, {0, 2}}};
    REQUIRE(validate_path(cx, p).empty());
    auto rep = adjacent_replace(cx, p, 1);
    REQUIRE(rep);
    CHECK(rep->second == 1);
    CHECK(rep->first == XPath{{"000", "0*0", "**0"}, {{0, 1}, {0, 1}}});
    CHECK(validate_path(cx, rep->first).empty());
    auto back = adjacent_replace(cx, rep->first, 1);
    REQUIRE(back);
    CHECK(back->second == 1);
    CHECK(back->first == p);
  }
  SECTION("rule 2 swaps two terminations") {
    XPath p{{"**1", "1*1", "111"}, {{1, 1}, {1, 1}}};
    REQUIRE(validate_path(cx, p).empty());
    auto rep = adjacent_replace(cx, p, 1);
    REQUIRE(rep);
    CHECK(rep->second == 2);
    CHECK(rep->first == XPath{{"**1", "*11", "111"}, {{1, 2}, {1, 1}}});
    CHECK(validate_path(cx, rep->first).empty());
    auto back = adjacent_replace(cx, rep->first, 1);
    REQUIRE(back);
    CHECK(back->first == p);
  }
  SECTION("rules 3 and 4 move a termination before a start") {
    PrecubicalSet sq = fixtures::filled_square();
    XPath r3{{"0*", "**", "*1"}, {{0, 1}, {1, 2}}};
    auto rep3 = adjacent_replace(sq, r3, 1);
    REQUIRE(rep3);
    CHECK(rep3->second == 3);
    CHECK(rep3->first == XPath{{"0*", "01", "*1"}, {{1, 1}, {0, 1}}});
    CHECK(validate_path(sq, rep3->first).empty());

    XPath r4{{"*0", "**", "1*"}, {{0, 2}, {1, 1}}};
    auto rep4 = adjacent_replace(sq, r4, 1);
    REQUIRE(rep4);
    CHECK(rep4->second == 4);
    CHECK(rep4->first == XPath{{"*0", "10", "1*"}, {{1, 1}, {0, 1}}});
    CHECK(validate_path(sq, rep4->first).empty());
  }
  SECTION("the stuck pattern and the filler-search pattern are absent") {
    PrecubicalSet sq = fixtures::filled_square();
    XPath stuck{{"0*", "**", "1*"}, {{0, 1}, {1, 1}}};
    REQUIRE(validate_path(sq, stuck).empty());
    CHECK_FALSE(adjacent_replace(sq, stuck, 1));
    XPath downup{{"*0", "10", "1*"}, {{1, 1}, {0, 1}}};
    REQUIRE(validate_path(sq, downup).empty());
    CHECK_FALSE(adjacent_replace(sq, downup, 1));
    CHECK_THROWS_AS(adjacent_replace(sq, stuck, 2), Error);
  }
}

TEST_CASE("replacements preserve endpoints, length, and validity") {
  PrecubicalSet cx = fixtures::cube_complex({"a", "b", "c"});
  int replaced = 0;
  for (const XPath& p : paths_from(cx, CellId("000"), 4)) {
    for (int l = 1; l < p.length(); ++l) {
      auto rep = adjacent_replace(cx, p, l);
      const Step a = p.steps[static_cast<size_t>(l) - 1];
      const Step b = p.steps[static_cast<size_t>(l)];
      if (!rep) {
        const bool stuck = a.polarity == 0 && b.polarity == 1 && a.index == b.index;
        const bool downup = a.polarity == 1 && b.polarity == 0;
        CHECK((stuck || downup));
        continue;
      }
      ++replaced;
      const XPath& q = rep->first;
      CHECK(validate_path(cx, q).empty());
      CHECK(q.start() == p.start());
      CHECK(q.end() == p.end());
      CHECK(q.length() == p.length());
      if (a.polarity == b.polarity) {
        auto back = adjacent_replace(cx, q, l);
        REQUIRE(back);
        CHECK(back->first == p);
        CHECK(back->second == rep->second);
      }
    }
  }
  CHECK(replaced > 100);
}

TEST_CASE("congruence classes") {
  PrecubicalSet sq = fixtures::filled_square();
  XPath diag{{"00", "*0", "**"}, {{0, 1}, {0, 2}}};
  auto cls = congruence_class(sq, diag);
  REQUIRE(cls.size() == 2);
  CHECK(std::count(cls.begin(), cls.end(),
                   XPath{{"00", "0*", "**"}, {{0, 1}, {0, 1}}}) == 1);
  for (const XPath& q : cls) {
    auto back = congruence_class(sq, q);
    CHECK(std::set<XPath>(back.begin(), back.end()) ==
          std::set<XPath>(cls.begin(), cls.end()));
  }
  CHECK_THROWS_AS(congruence_class(sq, diag, 1), Error);

  // around the hollow square nothing commutes
  PrecubicalSet hollow = fixtures::hollow_square();
  XPath inter{{"00", "*0", "10", "1*", "11"}, {{0, 1}, {1, 1}, {0, 1}, {1, 1}}};
  REQUIRE(validate_path(hollow, inter).empty());
  CHECK(congruence_class(hollow, inter).size() == 1);

  // a swap away from a segment leaves its replaceability alone
  PrecubicalSet cube = fixtures::cube_complex({"a", "b", "c"});
  for (const XPath& p : paths_from(cube, CellId("000"), 5)) {
    for (int l = 1; l < p.length(); ++l) {
      const bool here = adjacent_replace(cube, p, l).has_value();
      for (int m = 1; m < p.length(); ++m) {
        if (std::abs(m - l) < 2) continue;
        if (p.steps[size_t(m) - 1].polarity != p.steps[size_t(m)].polarity) continue;
        auto q = adjacent_replace(cube, p, m);
        REQUIRE(q);
        CHECK(adjacent_replace(cube, q->first, l).has_value() == here);
      }
    }
  }

  // but a swap overlapping the segment can unstick it: exchanging the two
  // starts moves the termination's partner from step 2 to step 1, so the
  // replaceability of a position is not a congruence invariant
  XPath stuck{{"000", "*00", "**0", "*10"}, {{0, 1}, {0, 2}, {1, 2}}};
  REQUIRE(validate_path(cube, stuck).empty());
  CHECK_FALSE(adjacent_replace(cube, stuck, 2));
  auto swapped = adjacent_replace(cube, stuck, 1);
  REQUIRE(swapped);
  CHECK(swapped->first == XPath{{"000", "0*0", "**0", "*10"}, {{0, 1}, {0, 1}, {1, 2}}});
  auto cls2 = congruence_class(cube, stuck);
  CHECK(std::count(cls2.begin(), cls2.end(), swapped->first) == 1);
  CHECK(adjacent_replace(cube, swapped->first, 2).has_value());
}

TEST_CASE("the square crossing admits exactly two liftings") {
  PrecubicalSet sq = fixtures::filled_square();
  XPath cross{{"0*", "**", "*1"}, {{0, 1}, {1, 2}}};
  auto lifts = all_liftings(sq, cross);
  REQUIRE(lifts.size() == 2);

  SComplex sx = symmetrize(sq);
  std::set<SCell> mids;
  for (const SPath& l : lifts) {
    CHECK(validate_path(sx, l).empty());
    CHECK(underlying_path(l) == cross);
    mids.insert(l.cells[1]);
  }
  CHECK(mids == std::set<SCell>{SCell{Permutation::identity(2), "**"},
                                SCell{Permutation({2, 1}), "**"}});
  CHECK(std::count(lifts.begin(), lifts.end(), canonical_lift(sq, cross)) == 1);

  // the copy through the transposed square swaps both step indices
  SPath other = lifts[0] == canonical_lift(sq, cross) ? lifts[1] : lifts[0];
  CHECK(other.steps == std::vector<Step>{{0, 2}, {1, 1}});
}

TEST_CASE("liftings of the glued-cube path") {
  PrecubicalSet cx = fixtures::glued_cubes();
  REQUIRE(validate_precubical(cx).empty());
  CHECK(cx.cells().size() == 45);

  XPath alpha{{"x:***", "x:**1", "z:***"}, {{1, 3}, {0, 3}}};
  REQUIRE(validate_path(cx, alpha).empty());

  auto lifts = all_liftings(cx, alpha);
  SComplex sx = symmetrize(cx);
  std::set<SPath> found(lifts.begin(), lifts.end());
  CHECK(found.size() == lifts.size());
  for (const SPath& l : lifts) {
    CHECK(validate_path(sx, l).empty());
    CHECK(underlying_path(l) == alpha);
  }

  // brute force: all length-2 paths in SX over the start cell whose
  // underlying path is alpha
  std::set<SPath> brute;
  for (const Permutation& t0 : all_permutations(3)) {
    for (const SPath& q : paths_from(sx, SCell{t0, "x:***"}, 2))
      if (q.length() == 2 && underlying_path(q) == alpha) brute.insert(q);
  }
  CHECK(found == brute);

  // tau_0 ranges over S_3 and the up-step picks one of three slots
  CHECK(lifts.size() == 18);

  // the whole-path action of (12) is one of them
  Permutation swap12({2, 1, 3});
  SPath beta{{SCell{swap12, "x:***"}, SCell{Permutation({2, 1}), "x:**1"},
              SCell{swap12, "z:***"}},
             {{1, 3}, {0, 3}}};
  CHECK(found.count(beta) == 1);

  // and so is the coherent variant that relabels the faces to index 1
  SPath beta_prime{{SCell{Permutation({3, 2, 1}), "x:***"},
                    SCell{Permutation({2, 1}), "x:**1"},
                    SCell{Permutation({3, 2, 1}), "z:***"}},
                   {{1, 1}, {0, 1}}};
  CHECK(found.count(beta_prime) == 1);
}

TEST_CASE("liftings in low dimensions are unique") {
  PrecubicalSet cx = fixtures::two_squares();
  XPath p{{"a", "p", "b", "s", "d"}, {{0, 1}, {1, 1}, {0, 1}, {1, 1}}};
  REQUIRE(validate_path(cx, p).empty());
  auto lifts = all_liftings(cx, p);
  REQUIRE(lifts.size() == 1);
  CHECK(lifts[0] == canonical_lift(cx, p));
}

TEST_CASE("every lifting projects back onto its base path") {
  PrecubicalSet cx = fixtures::two_squares();
  SComplex sx = symmetrize(cx);
  for (const XPath& p : paths_from(cx, CellId("a"), 4)) {
    auto lifts = all_liftings(cx, p);
    CHECK(std::count(lifts.begin(), lifts.end(), canonical_lift(cx, p)) == 1);
    for (const SPath& l : lifts) {
      CHECK(underlying_path(l) == p);
      CHECK(validate_path(sx, l).empty());
    }
  }
}
