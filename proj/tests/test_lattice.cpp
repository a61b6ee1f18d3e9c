#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <scatterlab/lattice.hpp>

#include <random>

using namespace scatterlab;

namespace {

FixedData rank2(Int d1, Int d2) {
  return from_exchange_matrix({{0, -d1}, {d2, 0}}, {d1, d2});
}

FixedData b3() {
  return from_exchange_matrix({{0, -1, 0}, {1, 0, -1}, {0, 2, 0}}, {1, 1, 2});
}

NVec random_nvec(std::mt19937& rng, int r, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  NVec n(r);
  bool nz = false;
  for (int i = 0; i < r; ++i) {
    n[i] = d(rng);
    nz |= n[i] != 0;
  }
  if (!nz) n[0] = 1;
  return n;
}

}  // namespace

TEST_CASE("exchange matrix round trip and validation") {
  FixedData fd = b3();
  CHECK(fd.b_int(0, 1) == -1);
  CHECK(fd.b_int(2, 1) == 2);
  CHECK(fd.omega[2][1] == 1);
  CHECK(fd.omega[1][2] == -1);
  // delta that does not skew-symmetrize B is rejected
  CHECK_THROWS_AS(from_exchange_matrix({{0, -1, 0}, {1, 0, -1}, {0, 2, 0}}, {1, 1, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(from_exchange_matrix({{0, 1}, {1, 0}}, {1, 1}), std::invalid_argument);
}

TEST_CASE("pairing, skew form and p*") {
  FixedData fd = rank2(1, 2);  // B = [[0,-1],[2,0]]
  NVec e1{1, 0}, e2{0, 1};
  CHECK(skew(fd, e2, e1) == 1);
  CHECK(skew(fd, e1, e2) == -1);
  MVec p1 = p_star(fd, e1);
  CHECK(p1 == MVec{Rat(0), Rat(2)});
  // <n', p*(n)> = {n', n} on a grid of small vectors
  for (Int a = -2; a <= 2; ++a)
    for (Int b = -2; b <= 2; ++b)
      for (Int c = -2; c <= 2; ++c)
        for (Int d = -2; d <= 2; ++d) {
          NVec n{a, b}, np{c, d};
          CHECK(pairing(fd, np, p_star(fd, n)) == skew(fd, np, n));
        }
}

TEST_CASE("extended pairing sees only the M-part") {
  FixedData fd = b3();
  NVec n{1, 2, 0};
  MTilde mt = p1_star(fd, NVec{0, 1, 1});
  CHECK(pairing1(fd, n, mt) == skew(fd, n, NVec{0, 1, 1}));
  MTilde pure_n{MVec{Rat(0), Rat(0), Rat(0)}, NVec{5, -3, 2}};
  CHECK(pairing1(fd, n, pure_n) == 0);
}

TEST_CASE("normalization factor") {
  FixedData fd = rank2(2, 2);  // delta = (2,2)
  CHECK(delta_of(fd, NVec{1, 0}) == 2);
  CHECK(delta_of(fd, NVec{1, 1}) == 2);
  CHECK(delta_of(fd, NVec{2, 2}) == 1);
  CHECK(delta_of(fd, NVec{3, 6}) == Rat(2, 3));
  FixedData fd3 = b3();
  CHECK(delta_of(fd3, NVec{0, 0, 1}) == 2);
  CHECK(delta_of(fd3, NVec{0, 1, 1}) == 2);
  CHECK(delta_of(fd3, NVec{0, 1, 2}) == 1);
  CHECK_THROWS_AS(delta_of(fd3, NVec{0, 0, 0}), std::invalid_argument);
  // d * n lands in the scaled sublattice and no smaller multiple does
  std::mt19937 rng(7);
  for (int it = 0; it < 200; ++it) {
    NVec n = random_nvec(rng, 3, -4, 4);
    Rat d = delta_of(fd3, n);
    for (int i = 0; i < 3; ++i) CHECK(is_integer(d * n[i] / fd3.delta[i]));
  }
}

TEST_CASE("seed mutation matrices") {
  FixedData fd = b3();
  auto A = mutation_matrix_n(fd, 1);
  // row 1 carries [b_1j]_+ off-diagonal and -1 on the diagonal
  CHECK(A[1][0] == 1);
  CHECK(A[1][1] == -1);
  CHECK(A[1][2] == 0);
  CHECK(A[0][0] == 1);
  // involution
  for (int k = 0; k < 3; ++k) {
    std::mt19937 rng(11 + k);
    for (int it = 0; it < 50; ++it) {
      NVec n = random_nvec(rng, 3, -5, 5);
      CHECK(coordinate_change(fd, k, coordinate_change(fd, k, n)) == n);
    }
  }
}

TEST_CASE("mutated seed matches matrix mutation") {
  // b'_ij = -b_ij if k in {i,j}, else b_ij + [b_ik]_+ [b_kj]_+ - [-b_ik]_+ [-b_kj]_+
  for (auto base : {b3(), rank2(1, 3), rank2(2, 2)}) {
    for (int k = 0; k < base.rank; ++k) {
      Seed s{base, "t"};
      Seed m = mutate_seed(s, k);
      for (int i = 0; i < base.rank; ++i)
        for (int j = 0; j < base.rank; ++j) {
          Int bij = base.b_int(i, j);
          Int want;
          if (i == k || j == k) {
            want = -bij;
          } else {
            Int bik = base.b_int(i, k), bkj = base.b_int(k, j);
            want = bij + std::max<Int>(bik, 0) * std::max<Int>(bkj, 0) -
                   std::max<Int>(-bik, 0) * std::max<Int>(-bkj, 0);
          }
          CHECK(m.data.b_int(i, j) == want);
        }
      CHECK(m.data.delta == base.delta);
      CHECK(m.id == "t/mu" + std::to_string(k));
    }
  }
}

TEST_CASE("linear reflections and duality") {
  FixedData fd = b3();
  std::mt19937 rng(23);
  for (int k = 0; k < 3; ++k) {
    for (int it = 0; it < 100; ++it) {
      NVec n = random_nvec(rng, 3, -5, 5);
      MVec z(3);
      std::uniform_int_distribution<int> d(-6, 6);
      for (int i = 0; i < 3; ++i) {
        z[i] = Rat(d(rng), 1 + (it % 3));
        z[i].canonicalize();
      }
      // <S_k*(n), S_k(z)> = <n, z>
      CHECK(pairing(fd, s_k_star(fd, k, n), s_k(fd, k, z)) == pairing(fd, n, z));
      // p* intertwines: S_k(p*(n)) = p*(S_k*(n))
      CHECK(s_k(fd, k, p_star(fd, n)) == p_star(fd, s_k_star(fd, k, n)));
      // inverses
      CHECK(s_k_inv(fd, k, s_k(fd, k, z)) == z);
      CHECK(s_k_star_inv(fd, k, s_k_star(fd, k, n)) == n);
      CHECK(t_k_inv(fd, k, t_k(fd, k, z)) == z);
      // normalization factor is reflection-invariant
      if (!is_zero(n)) CHECK(delta_of(fd, s_k_star(fd, k, n)) == delta_of(fd, n));
    }
  }
}

TEST_CASE("m-side coordinate change is dual to the n-side one") {
  FixedData fd = b3();
  std::mt19937 rng(31);
  for (int k = 0; k < 3; ++k) {
    for (int it = 0; it < 100; ++it) {
      NVec n = random_nvec(rng, 3, -5, 5);
      MVec z(3);
      std::uniform_int_distribution<int> d(-6, 6);
      for (int i = 0; i < 3; ++i) z[i] = d(rng);
      // pairing computed in the mutated seed's coordinates is unchanged
      Seed m = mutate_seed(Seed{fd, "t"}, k);
      Rat lhs = pairing(m.data, coordinate_change(fd, k, n), coordinate_change_m(fd, k, z));
      CHECK(lhs == pairing(fd, n, z));
      CHECK(coordinate_change_m(fd, k, coordinate_change_m(fd, k, z)) == z);
    }
  }
}

TEST_CASE("rescaling") {
  FixedData fd = rank2(2, 2);
  FixedData half = rescale(fd, Rat(2));  // delta -> (1,1), omega doubled
  CHECK(half.delta == std::vector<Int>{1, 1});
  CHECK(half.omega[1][0] == 2 * fd.omega[1][0]);
  // normalized exponent delta(n) * <n, .> is invariant: check delta scales inversely
  CHECK(delta_of(half, NVec{1, 0}) * 2 == delta_of(fd, NVec{1, 0}) * 1);
  CHECK_THROWS_AS(rescale(fd, Rat(3)), std::invalid_argument);
  CHECK_THROWS_AS(rescale(fd, Rat(-1)), std::invalid_argument);
  FixedData back = rescale(half, Rat(1, 2));
  CHECK(back.omega == fd.omega);
  CHECK(back.delta == fd.delta);
}

TEST_CASE("primitive parts") {
  CHECK(content(NVec{4, 6}) == 2);
  CHECK(primitive_part(NVec{4, 6}) == NVec{2, 3});
  CHECK(primitive_part(NVec{0, -4, 2}) == NVec{0, -2, 1});
  CHECK(deg(NVec{1, 2, 3}) == 6);
  CHECK(in_n_plus(NVec{0, 1}));
  CHECK(!in_n_plus(NVec{0, 0}));
  CHECK(!in_n_plus(NVec{1, -1}));
}
