#include <doctest.h>

#include <algorithm>
#include <random>

#include "qmsr/errors.hpp"
#include "qmsr/msr.hpp"

using namespace qmsr;

TEST_CASE("filter drops the single most extreme value on each side") {
  const NeighborView view{{1, 9}, {2, 1}, {3, 5}, {4, 6}};
  CHECK(msr_filter(5, view, 1) == NeighborView{{3, 5}, {4, 6}});
}

TEST_CASE("values equal to own are never filtered") {
  const NeighborView view{{1, 5}, {2, 5}};
  CHECK(msr_filter(5, view, 2) == view);
}

TEST_CASE("fewer than f extreme values are all dropped") {
  CHECK(msr_filter(5, {{1, 6}}, 2).empty());
}

TEST_CASE("ties among extremes drop the higher id first") {
  const NeighborView view{{2, 9}, {7, 9}, {3, 9}};
  CHECK(msr_filter(0, view, 1) == NeighborView{{2, 9}, {3, 9}});
  CHECK(msr_filter(0, view, 2) == NeighborView{{2, 9}});
  const NeighborView low{{4, -1}, {6, -1}};
  CHECK(msr_filter(0, low, 1) == NeighborView{{4, -1}});
}

TEST_CASE("f = 0 keeps everything") {
  const NeighborView view{{1, 100}, {2, -100}};
  CHECK(msr_filter(0, view, 0) == view);
}

TEST_CASE("duplicate ids are rejected") {
  CHECK_THROWS_AS(msr_filter(0, {{1, 1}, {1, 2}}, 1), InputError);
  CHECK_THROWS_AS(msr_filter(0, {}, -1), InputError);
}

TEST_CASE("uniform weights") {
  CHECK(compute_weights(0).self_weight() == 1.0);
  const auto w = compute_weights(3);
  CHECK(w.neighbor_weights().size() == 3);
  CHECK(w.self_weight() == doctest::Approx(0.25));
  for (int m = 0; m < 12; ++m) {
    const auto a = compute_weights(m);
    double sum = a.self_weight();
    for (double x : a.neighbor_weights()) sum += x;
    CHECK(sum == doctest::Approx(1.0));
    CHECK(a.self_weight() >= 1.0 / (m + 1) - 1e-15);
  }
  CHECK_THROWS_AS(compute_weights(-1), InputError);
}

TEST_CASE("normal_update examples") {
  RandomStream rng(1);
  CHECK(normal_update(7, {}, 1, QuantizerKind::kProbabilistic, rng) == 7);
  for (auto kind : {QuantizerKind::kProbabilistic, QuantizerKind::kFloor, QuantizerKind::kCeil})
    CHECK(normal_update(0, {{1, 2}}, 0, kind, rng) == 1);
  const NeighborView view{{1, 9}, {2, 1}, {3, 5}, {4, 6}};
  CHECK(normal_update(5, view, 1, QuantizerKind::kCeil, rng) == 6);
  CHECK(normal_update(5, view, 1, QuantizerKind::kFloor, rng) == 5);
}

TEST_CASE("filter and update properties on random views") {
  std::mt19937_64 gen(99);
  std::uniform_int_distribution<Value> value(-10, 10);
  std::uniform_int_distribution<int> size(0, 8), fdist(0, 3);
  RandomStream rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    const Value own = value(gen);
    const int f = fdist(gen);
    NeighborView view;
    const int m = size(gen);
    for (int j = 1; j <= m; ++j) view.push_back({j, value(gen)});
    const auto kept = msr_filter(own, view, f);

    int removed_above = 0, removed_below = 0;
    std::size_t cursor = 0;
    for (const auto& o : view) {
      if (cursor < kept.size() && kept[cursor] == o) {
        ++cursor;
        continue;
      }
      CHECK(o.value != own);
      (o.value > own ? removed_above : removed_below) += 1;
    }
    CHECK(cursor == kept.size());
    CHECK(removed_above <= f);
    CHECK(removed_below <= f);
    const int above = static_cast<int>(std::count_if(view.begin(), view.end(), [&](auto& o) { return o.value > own; }));
    const int below = static_cast<int>(std::count_if(view.begin(), view.end(), [&](auto& o) { return o.value < own; }));
    CHECK(removed_above == std::min(f, above));
    CHECK(removed_below == std::min(f, below));

    Value lo = own, hi = own;
    for (const auto& o : kept) {
      lo = std::min(lo, o.value);
      hi = std::max(hi, o.value);
    }
    for (auto kind : {QuantizerKind::kProbabilistic, QuantizerKind::kFloor, QuantizerKind::kCeil}) {
      const Value next = normal_update(own, view, f, kind, rng);
      CHECK(next >= lo);
      CHECK(next <= hi);
    }
  }
}

TEST_CASE("at most f outliers cannot pull the update outside the honest range") {
  std::mt19937_64 gen(5);
  std::uniform_int_distribution<Value> honest(0, 10), wild(-1000, 1000);
  RandomStream rng(8);
  for (int trial = 0; trial < 1000; ++trial) {
    const int f = 1 + trial % 2;
    const Value own = honest(gen);
    NeighborView view;
    Value lo = own, hi = own;
    for (int j = 1; j <= 4; ++j) {
      const Value v = honest(gen);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      view.push_back({j, v});
    }
    for (int j = 0; j < f; ++j) view.push_back({10 + j, wild(gen)});
    const Value next = normal_update(own, view, f, QuantizerKind::kProbabilistic, rng);
    CHECK(next >= lo);
    CHECK(next <= hi);
  }
}
