#include <gtest/gtest.h>

#include <chrono>
#include <random>

#include <universe/universe.hpp>

#include "oracles.hpp"

using namespace universe;

namespace {

CubicalComplex from_cells(unsigned dim, unsigned res, const std::vector<bool>& cells) {
  CubicalComplex c(dim, res, true);
  std::vector<CubicalComplex::Index> off;
  for (std::size_t f = 0; f < cells.size(); ++f)
    if (!cells[f]) off.push_back(c.unflat(f));
  return deactivate(c, off);
}

std::vector<bool> random_cells(std::mt19937& rng, std::size_t n, double p) {
  std::bernoulli_distribution on(p);
  std::vector<bool> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = on(rng);
  return v;
}

std::vector<bool> cells_of(const CubicalComplex& c) {
  std::vector<bool> v(c.cell_count());
  for (std::size_t f = 0; f < v.size(); ++f) v[f] = c.active_flat(f);
  return v;
}

// labels agree up to renaming, colors included
void expect_same_partition(const ComponentLabeling& l, const oracle::Analysis& a) {
  ASSERT_EQ(l.label.size(), a.label.size());
  std::map<int, int> fwd, back;
  for (std::size_t f = 0; f < l.label.size(); ++f) {
    int x = l.label[f], y = a.label[f];
    auto [it, fresh] = fwd.emplace(x, y);
    ASSERT_EQ(it->second, y) << "cell " << f;
    auto [jt, fresh2] = back.emplace(y, x);
    ASSERT_EQ(jt->second, x) << "cell " << f;
    EXPECT_EQ(l.color[static_cast<std::size_t>(x)] == Color::White, a.is_white[static_cast<std::size_t>(y)]);
  }
  EXPECT_EQ(fwd.size(), l.component_count());
}

struct Summary {
  std::size_t white, black, edges;
  std::string canonical;
};

Summary summarize(const CubicalComplex& c) {
  auto l = unite(c);
  auto r = aggregate_adjacency(l);
  return {l.white_count(), l.black_count(), r.edges.size(), is_tree(r) ? component_tree(r).canonical() : ""};
}

void expect_matches_oracle(const CubicalComplex& c) {
  auto a = oracle::analyze(static_cast<int>(c.dim()), static_cast<int>(c.side()), cells_of(c));
  auto l = unite(c);
  expect_same_partition(l, a);
  auto r = aggregate_adjacency(l);
  EXPECT_EQ(l.white_count(), static_cast<std::size_t>(a.white));
  EXPECT_EQ(l.black_count(), static_cast<std::size_t>(a.black));
  EXPECT_EQ(r.edges.size(), a.edges.size());
  EXPECT_EQ(is_tree(r), !a.canonical.empty());
  if (is_tree(r)) {
    EXPECT_EQ(component_tree(r).canonical(), a.canonical);
  }
}

CubicalComplex sample(const std::string& name) { return load_continuum_text(read_file(std::string(SAMPLES_DIR) + "/grids/" + name)); }

}  // namespace

TEST(Continuum, UnitAndSubdivide) {
  auto u = CubicalComplex::unit(3);
  EXPECT_EQ(u.cell_count(), 1u);
  auto s = subdivide(subdivide(u));
  EXPECT_EQ(s.side(), 4);
  EXPECT_EQ(s.active_count(), 64u);
  EXPECT_EQ(summarize(s).canonical, "B(W())");
  EXPECT_THROW(u.flat({1, 1}), Error);
  EXPECT_THROW(CubicalComplex(0, 1), Error);
}

TEST(Continuum, Fixtures) {
  EXPECT_EQ(summarize(sample("all_active.txt")).canonical, "B(W())");
  EXPECT_EQ(summarize(sample("annulus.txt")).canonical, "B(W(B()))");
  auto d = summarize(sample("diagonal_touch.txt"));
  EXPECT_EQ(d.white, 2u);  // corners do not connect
  EXPECT_EQ(d.canonical, "B(W()W())");
  auto cube = summarize(sample("cube_diagonal.json"));
  EXPECT_EQ(cube.white, 2u);
  EXPECT_EQ(cube.black, 1u);
  for (auto name : {"all_active.txt", "annulus.txt", "diagonal_touch.txt", "pair_a.txt", "pair_b.txt", "cube_diagonal.json"})
    expect_matches_oracle(sample(name));
}

TEST(Continuum, EqualCountsNotSimilar) {
  auto a = sample("pair_a.txt"), b = sample("pair_b.txt");
  auto sa = summarize(a), sb = summarize(b);
  EXPECT_EQ(sa.white, sb.white);
  EXPECT_EQ(sa.black, sb.black);
  EXPECT_EQ(a.active_count() > 0, true);
  EXPECT_FALSE(similar(a, b));
  EXPECT_TRUE(similar(a, a));
}

TEST(Continuum, EmptyGridIsJustTheBorder) {
  CubicalComplex c(2, 2, false);
  auto s = summarize(c);
  EXPECT_EQ(s.white, 0u);
  EXPECT_EQ(s.black, 1u);
  EXPECT_EQ(s.canonical, "B()");
}

TEST(Continuum, NonTreeFallsBackToIsomorphism) {
  // four white arms around a black centre: the centre and the frame both touch every arm
  auto c = parse_grid(".#..\n#.#.\n.#..\n....\n");
  auto r = aggregate_adjacency(unite(c));
  EXPECT_FALSE(is_tree(r));
  EXPECT_THROW(component_tree(r), Error);
  expect_matches_oracle(c);
  auto shifted = parse_grid("....\n..#.\n.#.#\n..#.\n");
  EXPECT_TRUE(similar(c, shifted));
  EXPECT_FALSE(similar(c, parse_grid("#...\n....\n....\n....\n")));
  // same counts, different wiring: one arm pulled away from the centre
  auto moved = parse_grid(".#.#\n#.#.\n....\n....\n");
  EXPECT_FALSE(similar(c, moved));
}

TEST(Continuum, RandomGridsMatchFloodFill) {
  std::mt19937 rng(5);
  for (int t = 0; t < 60; ++t) {
    unsigned res = 1 + rng() % 4;
    double p = 0.2 + 0.15 * (t % 5);
    std::size_t side = std::size_t{1} << res;
    auto c = from_cells(2, res, random_cells(rng, side * side, p));
    SCOPED_TRACE(grid_to_text(c));
    expect_matches_oracle(c);
  }
  for (int t = 0; t < 20; ++t) {
    unsigned res = 1 + rng() % 2;
    std::size_t side = std::size_t{1} << res;
    expect_matches_oracle(from_cells(3, res, random_cells(rng, side * side * side, 0.5)));
  }
}

TEST(Continuum, SubdivisionPreservesTheRelation) {
  std::mt19937 rng(11);
  for (int t = 0; t < 25; ++t) {
    unsigned dim = t < 20 ? 2 : 3;
    unsigned res = dim == 2 ? 1 + rng() % 3 : 1;
    std::size_t n = 1;
    for (unsigned a = 0; a < dim; ++a) n <<= res;
    auto c = from_cells(dim, res, random_cells(rng, n, 0.5));
    auto s = subdivide(c);
    EXPECT_EQ(s.active_count(), c.active_count() << dim);
    auto x = summarize(c), y = summarize(s);
    EXPECT_EQ(x.white, y.white);
    EXPECT_EQ(x.black, y.black);
    EXPECT_EQ(x.edges, y.edges);
    EXPECT_EQ(x.canonical, y.canonical);
    EXPECT_TRUE(similar(c, s));
  }
}

TEST(Continuum, SimilarityIsInvariantUnderMirroring) {
  std::mt19937 rng(3);
  for (int t = 0; t < 30; ++t) {
    auto cells = random_cells(rng, 64, 0.55);
    std::vector<bool> mirrored(64);
    for (int r = 0; r < 8; ++r)
      for (int col = 0; col < 8; ++col) mirrored[r * 8 + col] = cells[r * 8 + (7 - col)];
    EXPECT_TRUE(similar(from_cells(2, 3, cells), from_cells(2, 3, mirrored)));
  }
}

TEST(Continuum, LargeGridIsFast) {
  std::mt19937 rng(8);
  auto a = from_cells(2, 6, random_cells(rng, 64 * 64, 0.5));
  auto b = from_cells(2, 6, random_cells(rng, 64 * 64, 0.5));
  auto t0 = std::chrono::steady_clock::now();
  auto sa = summarize(a);
  bool s = similar(a, b);
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  (void)s;
  EXPECT_GT(sa.white + sa.black, 1u);
  EXPECT_LT(ms, 2000.0);
  expect_matches_oracle(a);
}
