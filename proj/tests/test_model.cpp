#include <catch_amalgamated.hpp>

#include "gzz/model.hpp"
#include "gzz/oracle.hpp"

using namespace gzz;

namespace {

GzzHamiltonian running_example() { return GzzHamiltonian::create({2.0}, {1.0}, {{1, 1, 3.0}}); }

}  // namespace

TEST_CASE("signed index linearization follows +1, -1, +2, -2, ...", "[model]") {
  CHECK(SignedIndex::plus(1).linear() == 1);
  CHECK(SignedIndex::minus(1).linear() == 2);
  CHECK(SignedIndex::plus(3).linear() == 5);
  CHECK(SignedIndex::minus(3).linear() == 6);
  for (int p = 1; p <= 12; ++p) CHECK(SignedIndex::from_linear(p).linear() == p);
  CHECK(SignedIndex::from_linear(4) == SignedIndex::minus(2));
  CHECK(SignedIndex::minus(2).label() == "-2");
}

TEST_CASE("validate reports Jordan pairs, zeros and degeneracies", "[model]") {
  SECTION("distinct nonzero diagonal") {
    auto r = validate(running_example());
    CHECK(r.jordan_pairs.empty());
    CHECK(r.invertible());
    CHECK(r.degenerate.empty());
  }
  SECTION("coupled equal eigenvalues form a Jordan pair") {
    auto r = validate(GzzHamiltonian::create({1.0}, {1.0}, {{1, 1, 3.0}}));
    REQUIRE(r.jordan_pairs.size() == 1);
    CHECK(r.jordan_pairs[0] == std::pair{1, 1});
  }
  SECTION("degeneracy without coupling is diagonalizable") {
    auto r = validate(GzzHamiltonian::create({1.0}, {1.0}, {}));
    CHECK(r.jordan_pairs.empty());
    REQUIRE(r.degenerate.size() == 1);
    CHECK(r.degenerate[0] == std::pair{1, 2});
  }
  SECTION("zero diagonal is reported") {
    auto r = validate(GzzHamiltonian::create({2.0, 0.0}, {1.0, 4.0}, {}));
    CHECK_FALSE(r.invertible());
    CHECK(r.zero_diagonal == std::vector<int>{3});
  }
  SECTION("Jordan tolerance is relative for large entries") {
    const double big = 1e6;
    auto r = validate(GzzHamiltonian::create({big}, {big * (1 + 1e-13)}, {{1, 1, 1.0}}));
    CHECK(r.jordan_pairs.size() == 1);
    auto s = validate(GzzHamiltonian::create({big}, {big * (1 + 1e-10)}, {{1, 1, 1.0}}));
    CHECK(s.jordan_pairs.empty());
  }
  SECTION("zig-zag Jordan pairs are adjacent a_k == a_{k+1} with c_k != 0") {
    auto z = ZigZagHamiltonian::create(ZigZagVariant::ZZ, {2, 2, 3}, {1, 0});
    CHECK(validate(z).jordan_pairs == std::vector<std::pair<int, int>>{{1, 2}});
    auto w = ZigZagHamiltonian::create(ZigZagVariant::ZZ, {2, 2, 3}, {0, 1});
    CHECK(validate(w).jordan_pairs.empty());
  }
}

TEST_CASE("to_dense places entries per the displayed matrices", "[model]") {
  SECTION("GZZ m=1") {
    CHECK(to_dense(running_example()) == DenseMatrix{{2, 3}, {0, 1}});
  }
  SECTION("ZZ M=3") {
    auto z = ZigZagHamiltonian::create(ZigZagVariant::ZZ, {1, 2, 3}, {4, 5});
    CHECK(to_dense(z) == DenseMatrix{{1, 0, 0}, {4, 2, 5}, {0, 0, 3}});
  }
  SECTION("TZ is the transpose of ZZ") {
    auto zz = ZigZagHamiltonian::create(ZigZagVariant::ZZ, {1, 2, 3, 4, 5}, {6, 7, 8, 9});
    auto tz = ZigZagHamiltonian::create(ZigZagVariant::TZ, {1, 2, 3, 4, 5}, {6, 7, 8, 9});
    CHECK(to_dense(tz) == to_dense(zz).transposed());
    const auto d = to_dense(tz);
    CHECK(d(0, 1) == 6);  // c1 at (1,2)
    CHECK(d(2, 1) == 7);  // c2 at (3,2)
    CHECK(d(2, 3) == 8);  // c3 at (3,4)
    CHECK(d(4, 3) == 9);  // c4 at (5,4)
  }
  SECTION("GZZ without couplings is diagonal") {
    auto h = GzzHamiltonian::create({1, 3}, {2, 4}, {});
    CHECK(to_dense(h) == DenseMatrix{{1, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 3, 0}, {0, 0, 0, 4}});
  }
  SECTION("coupling n_ij lands at (2i-1, 2j)") {
    auto h = GzzHamiltonian::create({1, 1, 1}, {2, 2, 2}, {{2, 3, 7.0}, {3, 1, -1.0}});
    auto d = to_dense(h);
    CHECK(d(2, 5) == 7.0);
    CHECK(d(4, 1) == -1.0);
  }
}

TEST_CASE("construction validates and canonicalizes couplings", "[model]") {
  auto h = GzzHamiltonian::create({1, 2}, {3, 4}, {{2, 1, 5.0}, {1, 2, 0.0}, {1, 1, 6.0}});
  REQUIRE(h.couplings().size() == 2);
  CHECK(h.couplings()[0] == Coupling{1, 1, 6.0});
  CHECK(h.couplings()[1] == Coupling{2, 1, 5.0});
  CHECK(h.coupling(1, 2) == 0.0);
  CHECK(h.coupling(2, 1) == 5.0);

  CHECK_THROWS_AS(GzzHamiltonian::create({1}, {1, 2}, {}), ModelError);
  CHECK_THROWS_AS(GzzHamiltonian::create({1}, {2}, {{1, 2, 1.0}}), ModelError);
  CHECK_THROWS_AS(GzzHamiltonian::create({1}, {2}, {{1, 1, 1.0}, {1, 1, 2.0}}), ModelError);
  CHECK_THROWS_AS(GzzHamiltonian::create({NAN}, {2}, {}), ModelError);
  CHECK_THROWS_AS(ZigZagHamiltonian::create(ZigZagVariant::ZZ, {1, 2}, {1, 2}), ModelError);
  CHECK_THROWS_AS(WeightVector::create({1.0, 0.0}), InvalidWeight);
  CHECK_THROWS_AS(WeightVector::create({1.0, -2.0}), InvalidWeight);
}

TEST_CASE("dense round trip and N^2 = 0", "[model]") {
  auto h = GzzHamiltonian::create({1.5, -2, 0.25}, {3, 0.5, -1},
                                  {{1, 1, 1.0}, {1, 3, -2.0}, {2, 2, 0.5}, {3, 1, 4.0}, {3, 3, 1.0}});
  CHECK(gzz_from_dense(to_dense(h)) == h);

  auto n = to_dense(GzzHamiltonian::create({0, 0, 0}, {0, 0, 0}, h.couplings()));
  CHECK(max_abs(oracle::dense_mul(n, n)) == 0.0);

  DenseMatrix bad = to_dense(h);
  bad(1, 0) = 1.0;  // (-1, +1) is outside the class
  CHECK_THROWS_AS(gzz_from_dense(bad), ModelError);
}
