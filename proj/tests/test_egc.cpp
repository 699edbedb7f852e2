#include <doctest.h>

#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <tuple>

#include "fbic/egc.hpp"
#include "fbic/ldm.hpp"

using namespace fbic;
using namespace fbic::egc;

namespace {

using Key = std::tuple<int, int, int, int>;
using KeyFn = std::function<Key(int u, int x1, int x2)>;

// Entropy of a function of (U, X1, X2) by enumerating the joint law.
double entropy_of(const DetChannelSpec& s, const CondDistU& d, const KeyFn& key) {
  std::map<Key, double> mass;
  for (int u = 0; u < d.u_size; ++u) {
    for (int a = 0; a < s.x1_size; ++a) {
      for (int b = 0; b < s.x2_size; ++b) {
        const double p = d.p_u[u] * d.p_x1_given_u[u * s.x1_size + a] * d.p_x2_given_u[u * s.x2_size + b];
        if (p > 0) mass[key(u, a, b)] += p;
      }
    }
  }
  double h = 0;
  for (const auto& [k, p] : mass) h -= p * std::log2(p);
  return h;
}

// All four terms restated with H(A | B) = H(A, B) - H(B).
EgcObjective objective_oracle(const DetChannelSpec& s, const CondDistU& d) {
  auto y1 = [&](int, int a, int b) { return s.f1_at(a, s.g2[b]); };
  auto y2 = [&](int, int a, int b) { return s.f2_at(b, s.g1[a]); };
  auto v1 = [&](int, int a, int) { return s.g1[a]; };
  auto v2 = [&](int, int, int b) { return s.g2[b]; };
  auto H = [&](const KeyFn& k) { return entropy_of(s, d, k); };

  const double h_u = H([](int u, int, int) { return Key{u, 0, 0, 0}; });
  const double h_y1 = H([&](int u, int a, int b) { return Key{y1(u, a, b), 0, 0, 0}; });
  const double h_y2 = H([&](int u, int a, int b) { return Key{y2(u, a, b), 0, 0, 0}; });
  const double h_y1_u = H([&](int u, int a, int b) { return Key{y1(u, a, b), u, 0, 0}; });
  const double h_y1_given_u = h_y1_u - h_u;
  const double i_u_y1 = h_y1 - h_y1_given_u;

  auto cond = [&](const KeyFn& joint, const KeyFn& given) { return H(joint) - H(given); };
  const double h_y1_v2_u = cond([&](int u, int a, int b) { return Key{y1(u, a, b), v2(u, a, b), u, 0}; },
                                [&](int u, int a, int b) { return Key{v2(u, a, b), u, 0, 0}; });
  const double h_y2_x2_u = cond([&](int u, int a, int b) { return Key{y2(u, a, b), b, u, 0}; },
                                [](int u, int, int b) { return Key{b, u, 0, 0}; });
  const double h_y1_v1v2_u =
      cond([&](int u, int a, int b) { return Key{y1(u, a, b), v1(u, a, b), v2(u, a, b), u}; },
           [&](int u, int a, int b) { return Key{v1(u, a, b), v2(u, a, b), u, 0}; });
  const double h_y1_v1_u = cond([&](int u, int a, int b) { return Key{y1(u, a, b), v1(u, a, b), u, 0}; },
                                [&](int u, int a, int b) { return Key{v1(u, a, b), u, 0, 0}; });

  EgcObjective o;
  o.t1 = i_u_y1 + h_y1_v2_u;
  o.t2 = h_y2_x2_u + h_y1_v1v2_u;
  o.t3 = 0.5 * (h_y2 + h_y1_v1v2_u);
  o.t4 = i_u_y1 + h_y1_v1_u;
  o.min = std::min({o.t1, o.t2, o.t3, o.t4});
  return o;
}

std::vector<double> random_simplex(std::mt19937_64& rng, int n, bool sparse) {
  std::gamma_distribution<double> g(sparse ? 0.3 : 1.0);
  std::vector<double> v(static_cast<std::size_t>(n));
  double s = 0;
  for (auto& x : v) s += (x = g(rng) + 1e-300);
  for (auto& x : v) x /= s;
  return v;
}

CondDistU random_dist(const DetChannelSpec& spec, int u_size, std::mt19937_64& rng) {
  CondDistU d;
  d.u_size = u_size;
  d.p_u = random_simplex(rng, u_size, false);
  for (int u = 0; u < u_size; ++u) {
    const auto a = random_simplex(rng, spec.x1_size, u % 2 == 1);
    const auto b = random_simplex(rng, spec.x2_size, u % 2 == 0);
    d.p_x1_given_u.insert(d.p_x1_given_u.end(), a.begin(), a.end());
    d.p_x2_given_u.insert(d.p_x2_given_u.end(), b.begin(), b.end());
  }
  return d;
}

CondDistU point_mass(const DetChannelSpec& spec, std::vector<double> p_u, const std::vector<std::pair<int, int>>& xs) {
  CondDistU d;
  d.u_size = static_cast<int>(p_u.size());
  d.p_u = std::move(p_u);
  d.p_x1_given_u.assign(static_cast<std::size_t>(d.u_size * spec.x1_size), 0.0);
  d.p_x2_given_u.assign(static_cast<std::size_t>(d.u_size * spec.x2_size), 0.0);
  for (int u = 0; u < d.u_size; ++u) {
    d.p_x1_given_u[u * spec.x1_size + xs[u].first] = 1.0;
    d.p_x2_given_u[u * spec.x2_size + xs[u].second] = 1.0;
  }
  return d;
}

// A small non-linear channel: |X| = 3, V = X mod 2, Y = (x + 2 v) mod 4 style table.
DetChannelSpec toy_channel() {
  DetChannelSpec s;
  s.x1_size = s.x2_size = 3;
  s.v1_size = s.v2_size = 2;
  s.y1_size = s.y2_size = 4;
  s.g1 = s.g2 = {0, 1, 1};
  s.f1 = s.f2 = {0, 2, 1, 3, 3, 0};
  s.validate();
  return s;
}

double h2(double p) { return -p * std::log2(p) - (1 - p) * std::log2(1 - p); }

}  // namespace

TEST_CASE("linear deterministic instances") {
  const auto s10 = ldm_to_egc(DetParams(1, 0));
  CHECK(s10.x1_size == 2);
  CHECK(s10.v2_size == 1);
  CHECK(s10.y1_size == 2);
  CHECK(s10.f1_at(0, 0) == 0);
  CHECK(s10.f1_at(1, 0) == 1);

  const auto s11 = ldm_to_egc(DetParams(1, 1));
  for (int x = 0; x < 2; ++x) {
    for (int v = 0; v < 2; ++v) CHECK(s11.f1_at(x, v) == (x ^ v));
  }

  const auto s21 = ldm_to_egc(DetParams(2, 1));
  CHECK(s21.y1_size == 4);
  // Exhaustive table check: f1(x1, .) is one-to-one for every x1.
  for (int x = 0; x < 4; ++x) CHECK(s21.f1_at(x, 0) != s21.f1_at(x, 1));
  std::mt19937_64 rng(1);
  const auto e = injectivity_entropies(s21, random_dist(s21, 1, rng));
  CHECK(e.h_y1_given_x1 == doctest::Approx(e.h_v2).epsilon(1e-12));

  CHECK_THROWS_AS(ldm_to_egc(DetParams(4, 1)), DomainError);
}

TEST_CASE("objective examples") {
  const auto s = ldm_to_egc(DetParams(1, 1));
  CondDistU uniform{1, {1.0}, {0.5, 0.5}, {0.5, 0.5}};
  CHECK(egc_objective(s, uniform).t3 == doctest::Approx(0.5).epsilon(1e-14));

  const auto zero = egc_objective(s, point_mass(s, {1.0}, {{1, 0}}));
  CHECK(zero.t1 == 0.0);
  CHECK(zero.t2 == 0.0);
  CHECK(zero.t3 == 0.0);
  CHECK(zero.t4 == 0.0);

  // U picks (x1, x2) = (0, 0) or (1, 0): Y1 = x1 and Y2 = x1 reveal U and
  // everything is deterministic given U.
  const auto mix = egc_objective(s, point_mass(s, {0.3, 0.7}, {{0, 0}, {1, 0}}));
  CHECK(mix.t1 == doctest::Approx(h2(0.3)).epsilon(1e-12));
  CHECK(mix.t1 <= 1.0);
  CHECK(mix.t2 == doctest::Approx(0.0));
  CHECK(mix.t3 == doctest::Approx(h2(0.3) / 2).epsilon(1e-12));
  CHECK(mix.t4 == doctest::Approx(h2(0.3)).epsilon(1e-12));
  CHECK(mix.min == doctest::Approx(0.0));
}

TEST_CASE("objective agrees with direct enumeration") {
  std::mt19937_64 rng(42);
  for (const auto& spec : {ldm_to_egc(DetParams(2, 1)), ldm_to_egc(DetParams(1, 2)), toy_channel()}) {
    for (int t = 0; t < 20; ++t) {
      const int u = 1 + static_cast<int>(rng() % static_cast<unsigned>(spec.max_auxiliary_size()));
      const auto d = random_dist(spec, u, rng);
      const auto got = egc_objective(spec, d);
      const auto want = objective_oracle(spec, d);
      CHECK(got.t1 == doctest::Approx(want.t1).epsilon(1e-10));
      CHECK(got.t2 == doctest::Approx(want.t2).epsilon(1e-10));
      CHECK(got.t3 == doctest::Approx(want.t3).epsilon(1e-10));
      CHECK(got.t4 == doctest::Approx(want.t4).epsilon(1e-10));
    }
  }
}

TEST_CASE("with a single auxiliary symbol the mutual information terms vanish") {
  std::mt19937_64 rng(3);
  const auto s = toy_channel();
  const auto d = random_dist(s, 1, rng);
  const auto o = egc_objective(s, d);
  auto y1 = [&](int a, int b) { return s.f1_at(a, s.g2[b]); };
  const double h_y1_v2 = entropy_of(s, d, [&](int, int a, int b) { return Key{y1(a, b), s.g2[b], 0, 0}; }) -
                         entropy_of(s, d, [&](int, int, int b) { return Key{s.g2[b], 0, 0, 0}; });
  const double h_y1_v1 = entropy_of(s, d, [&](int, int a, int b) { return Key{y1(a, b), s.g1[a], 0, 0}; }) -
                         entropy_of(s, d, [&](int, int a, int) { return Key{s.g1[a], 0, 0, 0}; });
  CHECK(o.t1 == doctest::Approx(h_y1_v2).epsilon(1e-12));
  CHECK(o.t4 == doctest::Approx(h_y1_v1).epsilon(1e-12));
}

TEST_CASE("relabeling U leaves the objective unchanged") {
  std::mt19937_64 rng(8);
  const auto s = ldm_to_egc(DetParams(2, 1));
  for (int t = 0; t < 20; ++t) {
    const auto d = random_dist(s, 3, rng);
    CondDistU r = d;
    const int perm[3] = {2, 0, 1};
    for (int u = 0; u < 3; ++u) {
      r.p_u[perm[u]] = d.p_u[u];
      for (int x = 0; x < s.x1_size; ++x) r.p_x1_given_u[perm[u] * s.x1_size + x] = d.p_x1_given_u[u * s.x1_size + x];
      for (int x = 0; x < s.x2_size; ++x) r.p_x2_given_u[perm[u] * s.x2_size + x] = d.p_x2_given_u[u * s.x2_size + x];
    }
    const auto a = egc_objective(s, d);
    const auto b = egc_objective(s, r);
    CHECK(a.min == doctest::Approx(b.min).epsilon(1e-12));
    CHECK(a.t1 == doctest::Approx(b.t1).epsilon(1e-12));
    CHECK(a.t3 == doctest::Approx(b.t3).epsilon(1e-12));
  }
}

TEST_CASE("injectivity gives H(Y1|X1) = H(V2) for random inputs") {
  std::mt19937_64 rng(100);
  for (const auto& spec : {toy_channel(), ldm_to_egc(DetParams(2, 2)), ldm_to_egc(DetParams(1, 3))}) {
    for (int t = 0; t < 100; ++t) {
      const auto e = injectivity_entropies(spec, random_dist(spec, 1, rng));
      CHECK(std::abs(e.h_y1_given_x1 - e.h_v2) <= 1e-12);
      CHECK(std::abs(e.h_y2_given_x2 - e.h_v1) <= 1e-12);
    }
  }
}

TEST_CASE("spec validation names the offending cells") {
  auto s = toy_channel();
  s.f1[1] = 0;  // f1(x1=0, v2=1) collides with f1(x1=0, v2=0)
  try {
    s.validate();
    FAIL("expected an injectivity error");
  } catch (const InputError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("f1(x1=0, v2=0)") != std::string::npos);
    CHECK(msg.find("f1(x1=0, v2=1)") != std::string::npos);
  }

  auto bad_range = toy_channel();
  bad_range.g2[2] = 5;
  CHECK_THROWS_AS(bad_range.validate(), InputError);
}

TEST_CASE("distribution validation") {
  const auto s = ldm_to_egc(DetParams(1, 1));
  CondDistU ok{1, {1.0}, {0.5, 0.5}, {0.25, 0.75}};
  CHECK_NOTHROW(ok.validate(s));
  CondDistU off{1, {1.0}, {0.5, 0.5 + 1e-9}, {0.25, 0.75}};
  CHECK_THROWS_AS(off.validate(s), InputError);
  CondDistU negative{1, {1.0}, {1.5, -0.5}, {0.25, 0.75}};
  CHECK_THROWS_AS(negative.validate(s), InputError);
  CondDistU too_big{5, {0.2, 0.2, 0.2, 0.2, 0.2}, std::vector<double>(10, 0.5), std::vector<double>(10, 0.5)};
  CHECK_THROWS_AS(too_big.validate(s), InputError);
}

TEST_CASE("search reaches the deterministic capacity") {
  SearchConfig cfg;
  cfg.restarts = 200;
  CHECK(egc_capacity_search(ldm_to_egc(DetParams(1, 0)), cfg).value == doctest::Approx(1.0).epsilon(0.05));
  CHECK(std::abs(egc_capacity_search(ldm_to_egc(DetParams(1, 1)), cfg).value - 0.5) <= 0.05);
  const auto r12 = egc_capacity_search(ldm_to_egc(DetParams(1, 2)), cfg);
  CHECK(std::abs(r12.value - 1.0) <= 0.1);
  CHECK(r12.value_by_u_size.size() == 4);
  CHECK_NOTHROW(r12.best.validate(ldm_to_egc(DetParams(1, 2))));
}

TEST_CASE("search never exceeds the deterministic capacity") {
  SearchConfig cfg;
  cfg.restarts = 20;
  for (int n = 0; n <= 2; ++n) {
    for (int m = 0; m <= 2; ++m) {
      const double cap = boost::rational_cast<double>(ldm::capacity(DetParams(n, m)));
      const auto r = egc_capacity_search(ldm_to_egc(DetParams(n, m)), cfg);
      CHECK(r.value <= cap + 1e-9);
      CHECK(r.value == doctest::Approx(egc_objective(ldm_to_egc(DetParams(n, m)), r.best).min));
    }
  }
}

TEST_CASE("more restarts never lower the result") {
  const auto s = ldm_to_egc(DetParams(2, 1));
  double previous = -1.0;
  for (int restarts : {1, 4, 16}) {
    SearchConfig cfg;
    cfg.restarts = restarts;
    cfg.iterations = 300;
    const double v = egc_capacity_search(s, cfg).value;
    CHECK(v >= previous);
    previous = v;
  }
}

TEST_CASE("search size guard") {
  DetChannelSpec big;
  big.x1_size = big.x2_size = 65;
  big.v1_size = big.v2_size = 1;
  big.y1_size = big.y2_size = 65;
  big.g1.assign(65, 0);
  big.g2.assign(65, 0);
  for (int x = 0; x < 65; ++x) {
    big.f1.push_back(x);
    big.f2.push_back(x);
  }
  CHECK_THROWS_AS(egc_capacity_search(big, SearchConfig{}), DomainError);
}

TEST_CASE("spec text format round-trips") {
  const auto s = toy_channel();
  std::stringstream text;
  write_spec(text, s);
  const auto back = read_spec(text);
  CHECK(back.g1 == s.g1);
  CHECK(back.f1 == s.f1);
  CHECK(back.f2 == s.f2);
  CHECK(back.y2_size == s.y2_size);

  std::istringstream dup("egc 1 1 1 1 1 1\ng1 0 0\ng1 0 0\n");
  CHECK_THROWS_AS(read_spec(dup), InputError);
  std::istringstream missing("egc 1 1 1 1 1 1\ng1 0 0\ng2 0 0\nf1 0 0 0\n");
  CHECK_THROWS_AS(read_spec(missing), InputError);
  std::istringstream unknown("egc 1 1 1 1 1 1\nh1 0 0\n");
  CHECK_THROWS_AS(read_spec(unknown), InputError);
  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(read_spec(empty), InputError);
}
