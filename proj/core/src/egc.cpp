#include "fbic/egc.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <span>
#include <string>

#include "fbic/ldm.hpp"

namespace fbic::egc {

int DetChannelSpec::max_auxiliary_size() const { return std::min({v1_size * v2_size, y1_size, y2_size}); }

namespace {

std::string cell(const char* table, const char* a, int i, const char* b = nullptr, int j = 0) {
  std::string s = std::string(table) + "(" + a + "=" + std::to_string(i);
  if (b != nullptr) s += std::string(", ") + b + "=" + std::to_string(j);
  return s + ")";
}

void check_range(int value, int size, const std::string& where, const char* what) {
  if (value < 0 || value >= size) {
    throw InputError(where + " = " + std::to_string(value) + " is outside " + what + " alphabet of size " +
                     std::to_string(size));
  }
}

// v -> f(x, v) must be one-to-one for each fixed x.
void check_injective(const std::vector<int>& f, int x_size, int v_size, const char* table, const char* x_name,
                     const char* v_name, const char* y_name) {
  for (int x = 0; x < x_size; ++x) {
    for (int a = 0; a < v_size; ++a) {
      for (int b = a + 1; b < v_size; ++b) {
        const int ya = f[static_cast<std::size_t>(x * v_size + a)];
        const int yb = f[static_cast<std::size_t>(x * v_size + b)];
        if (ya == yb) {
          throw InputError(std::string(table) + " is not injective in " + v_name + " at " + x_name + "=" +
                           std::to_string(x) + ": " + cell(table, x_name, x, v_name, a) + " and " +
                           cell(table, x_name, x, v_name, b) + " both give " + y_name + "=" +
                           std::to_string(ya));
        }
      }
    }
  }
}

}  // namespace

void DetChannelSpec::validate() const {
  for (int s : {x1_size, x2_size, v1_size, v2_size, y1_size, y2_size}) {
    if (s < 1) throw InputError("every alphabet needs at least one symbol");
  }
  auto expect = [](const std::vector<int>& t, std::size_t n, const char* name) {
    if (t.size() != n) {
      throw InputError(std::string(name) + " has " + std::to_string(t.size()) + " entries, expected " +
                       std::to_string(n));
    }
  };
  expect(g1, static_cast<std::size_t>(x1_size), "g1");
  expect(g2, static_cast<std::size_t>(x2_size), "g2");
  expect(f1, static_cast<std::size_t>(x1_size * v2_size), "f1");
  expect(f2, static_cast<std::size_t>(x2_size * v1_size), "f2");
  for (int x = 0; x < x1_size; ++x) check_range(g1[static_cast<std::size_t>(x)], v1_size, cell("g1", "x1", x), "the V1");
  for (int x = 0; x < x2_size; ++x) check_range(g2[static_cast<std::size_t>(x)], v2_size, cell("g2", "x2", x), "the V2");
  for (int x = 0; x < x1_size; ++x) {
    for (int v = 0; v < v2_size; ++v) check_range(f1_at(x, v), y1_size, cell("f1", "x1", x, "v2", v), "the Y1");
  }
  for (int x = 0; x < x2_size; ++x) {
    for (int v = 0; v < v1_size; ++v) check_range(f2_at(x, v), y2_size, cell("f2", "x2", x, "v1", v), "the Y2");
  }
  check_injective(f1, x1_size, v2_size, "f1", "x1", "v2", "y1");
  check_injective(f2, x2_size, v1_size, "f2", "x2", "v1", "y2");
}

void CondDistU::validate(const DetChannelSpec& spec) const {
  if (u_size < 1) throw InputError("|U| must be at least 1");
  if (u_size > spec.max_auxiliary_size()) {
    throw InputError("|U| = " + std::to_string(u_size) + " exceeds the cardinality bound " +
                     std::to_string(spec.max_auxiliary_size()));
  }
  auto check_rows = [](const std::vector<double>& t, int rows, int cols, const char* name) {
    if (t.size() != static_cast<std::size_t>(rows * cols)) {
      throw InputError(std::string(name) + " has " + std::to_string(t.size()) + " entries, expected " +
                       std::to_string(rows * cols));
    }
    for (int r = 0; r < rows; ++r) {
      double sum = 0.0;
      for (int c = 0; c < cols; ++c) {
        const double p = t[static_cast<std::size_t>(r * cols + c)];
        if (!(p >= 0.0)) {
          throw InputError(std::string(name) + " row " + std::to_string(r) + " has a negative entry");
        }
        sum += p;
      }
      if (std::abs(sum - 1.0) > 1e-12) {
        throw InputError(std::string(name) + " row " + std::to_string(r) + " sums to " + std::to_string(sum));
      }
    }
  };
  check_rows(p_u, 1, u_size, "p_u");
  check_rows(p_x1_given_u, u_size, spec.x1_size, "p_x1_given_u");
  check_rows(p_x2_given_u, u_size, spec.x2_size, "p_x2_given_u");
}

namespace {

double entropy(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log2(v);
  }
  return h;
}

double conditional(double joint, double given) {
  const double h = joint - given;
  return h < 0.0 && h > -1e-12 ? 0.0 : h;
}

// Marginal accumulators over the joint p(u, x1, x2), reused across
// evaluations during the search.
class Workspace {
 public:
  explicit Workspace(const DetChannelSpec& spec) : spec_(spec) {}

  EgcObjective evaluate(const CondDistU& d) {
    const DetChannelSpec& s = spec_;
    const int nu = d.u_size;
    u_.assign(static_cast<std::size_t>(nu), 0.0);
    y1_.assign(static_cast<std::size_t>(s.y1_size), 0.0);
    y2_.assign(static_cast<std::size_t>(s.y2_size), 0.0);
    u_y1_.assign(static_cast<std::size_t>(nu * s.y1_size), 0.0);
    y1_v2_u_.assign(static_cast<std::size_t>(nu * s.v2_size * s.y1_size), 0.0);
    v2_u_.assign(static_cast<std::size_t>(nu * s.v2_size), 0.0);
    y2_x2_u_.assign(static_cast<std::size_t>(nu * s.x2_size * s.y2_size), 0.0);
    x2_u_.assign(static_cast<std::size_t>(nu * s.x2_size), 0.0);
    y1_v1_v2_u_.assign(static_cast<std::size_t>(nu * s.v1_size * s.v2_size * s.y1_size), 0.0);
    v1_v2_u_.assign(static_cast<std::size_t>(nu * s.v1_size * s.v2_size), 0.0);
    y1_v1_u_.assign(static_cast<std::size_t>(nu * s.v1_size * s.y1_size), 0.0);
    v1_u_.assign(static_cast<std::size_t>(nu * s.v1_size), 0.0);

    for (int u = 0; u < nu; ++u) {
      const double pu = d.p_u[static_cast<std::size_t>(u)];
      if (pu <= 0.0) continue;
      u_[static_cast<std::size_t>(u)] += pu;
      for (int x1 = 0; x1 < s.x1_size; ++x1) {
        const double p1 = pu * d.p_x1_given_u[static_cast<std::size_t>(u * s.x1_size + x1)];
        if (p1 <= 0.0) continue;
        const int v1 = s.g1[static_cast<std::size_t>(x1)];
        for (int x2 = 0; x2 < s.x2_size; ++x2) {
          const double p = p1 * d.p_x2_given_u[static_cast<std::size_t>(u * s.x2_size + x2)];
          if (p <= 0.0) continue;
          const int v2 = s.g2[static_cast<std::size_t>(x2)];
          const int y1 = s.f1_at(x1, v2);
          const int y2 = s.f2_at(x2, v1);
          const int v1u = u * s.v1_size + v1;
          const int v12u = v1u * s.v2_size + v2;
          at(y1_, y1) += p;
          at(y2_, y2) += p;
          at(u_y1_, u * s.y1_size + y1) += p;
          at(v2_u_, u * s.v2_size + v2) += p;
          at(y1_v2_u_, (u * s.v2_size + v2) * s.y1_size + y1) += p;
          at(x2_u_, u * s.x2_size + x2) += p;
          at(y2_x2_u_, (u * s.x2_size + x2) * s.y2_size + y2) += p;
          at(v1_v2_u_, v12u) += p;
          at(y1_v1_v2_u_, v12u * s.y1_size + y1) += p;
          at(v1_u_, v1u) += p;
          at(y1_v1_u_, v1u * s.y1_size + y1) += p;
        }
      }
    }

    const double h_u = entropy(u_);
    const double h_y1 = entropy(y1_);
    const double i_u_y1 = std::max(0.0, h_y1 + h_u - entropy(u_y1_));
    const double h_y1_v2u = conditional(entropy(y1_v2_u_), entropy(v2_u_));
    const double h_y2_x2u = conditional(entropy(y2_x2_u_), entropy(x2_u_));
    const double h_y1_v1v2u = conditional(entropy(y1_v1_v2_u_), entropy(v1_v2_u_));
    const double h_y1_v1u = conditional(entropy(y1_v1_u_), entropy(v1_u_));
    const double h_y2 = entropy(y2_);

    EgcObjective o;
    o.t1 = i_u_y1 + h_y1_v2u;
    o.t2 = h_y2_x2u + h_y1_v1v2u;
    o.t3 = 0.5 * (h_y2 + h_y1_v1v2u);
    o.t4 = i_u_y1 + h_y1_v1u;
    o.min = std::min({o.t1, o.t2, o.t3, o.t4});
    return o;
  }

 private:
  static double& at(std::vector<double>& v, int i) { return v[static_cast<std::size_t>(i)]; }

  const DetChannelSpec& spec_;
  std::vector<double> u_, y1_, y2_, u_y1_, y1_v2_u_, v2_u_, y2_x2_u_, x2_u_, y1_v1_v2_u_, v1_v2_u_, y1_v1_u_,
      v1_u_;
};

}  // namespace

EgcObjective egc_objective(const DetChannelSpec& spec, const CondDistU& dist) {
  spec.validate();
  dist.validate(spec);
  return Workspace(spec).evaluate(dist);
}

ConditionalEntropies injectivity_entropies(const DetChannelSpec& spec, const CondDistU& dist) {
  spec.validate();
  dist.validate(spec);
  std::vector<double> x1(static_cast<std::size_t>(spec.x1_size)), x2(static_cast<std::size_t>(spec.x2_size));
  std::vector<double> v1(static_cast<std::size_t>(spec.v1_size)), v2(static_cast<std::size_t>(spec.v2_size));
  std::vector<double> y1x1(static_cast<std::size_t>(spec.x1_size * spec.y1_size));
  std::vector<double> y2x2(static_cast<std::size_t>(spec.x2_size * spec.y2_size));
  for (int u = 0; u < dist.u_size; ++u) {
    for (int a = 0; a < spec.x1_size; ++a) {
      for (int b = 0; b < spec.x2_size; ++b) {
        const double p = dist.p_u[static_cast<std::size_t>(u)] *
                         dist.p_x1_given_u[static_cast<std::size_t>(u * spec.x1_size + a)] *
                         dist.p_x2_given_u[static_cast<std::size_t>(u * spec.x2_size + b)];
        const int va = spec.g1[static_cast<std::size_t>(a)];
        const int vb = spec.g2[static_cast<std::size_t>(b)];
        x1[static_cast<std::size_t>(a)] += p;
        x2[static_cast<std::size_t>(b)] += p;
        v1[static_cast<std::size_t>(va)] += p;
        v2[static_cast<std::size_t>(vb)] += p;
        y1x1[static_cast<std::size_t>(a * spec.y1_size + spec.f1_at(a, vb))] += p;
        y2x2[static_cast<std::size_t>(b * spec.y2_size + spec.f2_at(b, va))] += p;
      }
    }
  }
  return {conditional(entropy(y1x1), entropy(x1)), entropy(v2), conditional(entropy(y2x2), entropy(x2)),
          entropy(v1)};
}

namespace {

// Euclidean projection onto the probability simplex (sort-based).
void project_to_simplex(std::span<double> v) {
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    cumulative += sorted[i];
    const double t = (cumulative - 1.0) / static_cast<double>(i + 1);
    if (sorted[i] - t > 0.0) theta = t;
  }
  for (double& x : v) x = std::max(0.0, x - theta);
  const double sum = std::accumulate(v.begin(), v.end(), 0.0);
  for (double& x : v) x /= sum;
}

// Row r of the flattened parameter set: 0 is p_u, then |U| rows of
// p(x1|u), then |U| rows of p(x2|u).
std::span<double> row(CondDistU& d, const DetChannelSpec& s, int r) {
  if (r == 0) return {d.p_u.data(), d.p_u.size()};
  if (r <= d.u_size) {
    return {d.p_x1_given_u.data() + static_cast<std::ptrdiff_t>((r - 1) * s.x1_size),
            static_cast<std::size_t>(s.x1_size)};
  }
  return {d.p_x2_given_u.data() + static_cast<std::ptrdiff_t>((r - 1 - d.u_size) * s.x2_size),
          static_cast<std::size_t>(s.x2_size)};
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t x = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

CondDistU random_start(const DetChannelSpec& s, int u_size, std::mt19937_64& rng, double concentration) {
  std::gamma_distribution<double> gamma(concentration, 1.0);
  CondDistU d;
  d.u_size = u_size;
  d.p_u.resize(static_cast<std::size_t>(u_size));
  d.p_x1_given_u.resize(static_cast<std::size_t>(u_size * s.x1_size));
  d.p_x2_given_u.resize(static_cast<std::size_t>(u_size * s.x2_size));
  for (int r = 0; r < 1 + 2 * u_size; ++r) {
    auto v = row(d, s, r);
    double sum = 0.0;
    for (double& x : v) sum += (x = gamma(rng) + 1e-12);
    for (double& x : v) x /= sum;
  }
  return d;
}

}  // namespace

SearchResult egc_capacity_search(const DetChannelSpec& spec, const SearchConfig& config) {
  spec.validate();
  const int max_u = spec.max_auxiliary_size();
  const long states = static_cast<long>(max_u) * spec.x1_size * spec.x2_size;
  if (states > kMaxJointStates) {
    throw DomainError("search needs |U| |X1| |X2| <= " + std::to_string(kMaxJointStates) + ", this channel has " +
                      std::to_string(max_u) + " * " + std::to_string(spec.x1_size) + " * " +
                      std::to_string(spec.x2_size) + " = " + std::to_string(states));
  }
  if (config.restarts < 1 || config.iterations < 0) {
    throw InputError("search needs at least one restart and a nonnegative iteration count");
  }

  Workspace ws(spec);
  SearchResult result;
  result.value = -1.0;
  for (int k = 1; k <= max_u; ++k) {
    double best_k = -1.0;
    const int rows = 1 + 2 * k;
    for (int restart = 0; restart < config.restarts; ++restart) {
      std::mt19937_64 rng(mix(mix(config.seed, static_cast<std::uint64_t>(k)), static_cast<std::uint64_t>(restart)));
      CondDistU current = random_start(spec, k, rng, restart % 2 == 0 ? 1.0 : 0.3);
      EgcObjective current_obj = ws.evaluate(current);
      double step = 0.25;
      std::normal_distribution<double> normal(0.0, 1.0);
      std::uniform_int_distribution<int> pick_row(0, rows - 1);
      std::bernoulli_distribution all_rows(0.3);

      for (int it = 0; it < config.iterations && step >= config.tolerance; ++it) {
        CondDistU candidate = current;
        const bool every = all_rows(rng);
        const int only = pick_row(rng);
        for (int r = 0; r < rows; ++r) {
          if (!every && r != only) continue;
          auto v = row(candidate, spec, r);
          for (double& x : v) x += step * normal(rng);
          project_to_simplex(v);
        }
        const EgcObjective obj = ws.evaluate(candidate);
        if (obj.min > current_obj.min) {
          current = std::move(candidate);
          current_obj = obj;
          step = std::min(0.5, step * 1.5);
        } else {
          if (obj.min == current_obj.min) {
            current = std::move(candidate);
            current_obj = obj;
          }
          step *= 0.93;
        }
      }

      if (current_obj.min > best_k) best_k = current_obj.min;
      if (current_obj.min > result.value) {
        result.value = current_obj.min;
        result.best = current;
        result.terms = current_obj;
      }
    }
    result.value_by_u_size.push_back(best_k);
  }
  return result;
}

DetChannelSpec ldm_to_egc(const DetParams& p) {
  if (p.n() > 3 || p.m() > 3) {
    throw DomainError("ldm_to_egc supports n, m <= 3 (alphabets up to 8 symbols), got n=" + std::to_string(p.n()) +
                      ", m=" + std::to_string(p.m()));
  }
  const int q = p.q();
  const int words = 1 << q;
  const int images = 1 << p.m();
  auto bits = [q](int value) {
    ldm::BitVec b(static_cast<std::size_t>(q));
    for (int i = 0; i < q; ++i) b[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((value >> (q - 1 - i)) & 1);
    return b;
  };
  auto value = [](const ldm::BitVec& b) {
    int v = 0;
    for (std::uint8_t bit : b) v = (v << 1) | bit;
    return v;
  };

  DetChannelSpec s;
  s.x1_size = s.x2_size = words;
  s.v1_size = s.v2_size = images;
  s.y1_size = s.y2_size = words;
  s.g1.resize(static_cast<std::size_t>(words));
  s.f1.resize(static_cast<std::size_t>(words * images));
  // Any x2 with the given top m levels realizes that interference image.
  std::vector<int> representative(static_cast<std::size_t>(images), -1);
  for (int x = 0; x < words; ++x) {
    const int v = value(ldm::interference_image(bits(x), p));
    s.g1[static_cast<std::size_t>(x)] = v;
    if (representative[static_cast<std::size_t>(v)] < 0) representative[static_cast<std::size_t>(v)] = x;
  }
  for (int x1 = 0; x1 < words; ++x1) {
    for (int v2 = 0; v2 < images; ++v2) {
      const auto out = ldm::transfer(bits(x1), bits(representative[static_cast<std::size_t>(v2)]), p);
      s.f1[static_cast<std::size_t>(x1 * images + v2)] = value(out.y1);
    }
  }
  s.g2 = s.g1;
  s.f2 = s.f1;
  s.validate();
  return s;
}

}  // namespace fbic::egc
