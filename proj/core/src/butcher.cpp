#include "specrk/butcher.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <initializer_list>

#include "specrk/error.hpp"

namespace specrk {

namespace {

struct Rational {
  std::int64_t num;
  std::int64_t den = 1;
  // Both parts are exact doubles (|x| < 2^53), so one division rounds correctly.
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

std::vector<double> to_doubles(std::initializer_list<Rational> r) {
  std::vector<double> out;
  for (const Rational& x : r) out.push_back(x.value());
  return out;
}

ButcherPair build(std::string name, int order, int embedded_order,
                  std::initializer_list<std::initializer_list<Rational>> rows,
                  std::initializer_list<Rational> b, std::initializer_list<Rational> b_hat,
                  std::initializer_list<Rational> c) {
  ButcherPair p;
  p.name = std::move(name);
  p.stages = static_cast<int>(b.size());
  p.order = order;
  p.embedded_order = embedded_order;
  p.a.assign(static_cast<std::size_t>(p.stages * p.stages), 0.0);
  int i = 1;
  for (const auto& row : rows) {
    int j = 0;
    for (const Rational& x : row) p.a[static_cast<std::size_t>(i * p.stages + j++)] = x.value();
    ++i;
  }
  p.b = to_doubles(b);
  p.b_hat = to_doubles(b_hat);
  p.c = to_doubles(c);
  return p;
}

}  // namespace

bool ButcherPair::is_fsal() const {
  const int last = stages - 1;
  if (stages < 2 || b[static_cast<std::size_t>(last)] != 0.0 || c[static_cast<std::size_t>(last)] != 1.0) {
    return false;
  }
  for (int j = 0; j < last; ++j) {
    if (A(last, j) != b[static_cast<std::size_t>(j)]) return false;
  }
  return true;
}

ButcherPair make_rk4() {
  return build("rk4", 4, 0,
               {{{1, 2}}, {{0}, {1, 2}}, {{0}, {0}, {1}}},
               {{1, 6}, {1, 3}, {1, 3}, {1, 6}}, {},
               {{0}, {1, 2}, {1, 2}, {1}});
}

ButcherPair make_dp5() {
  return build("dp5", 5, 4,
               {{{1, 5}},
                {{3, 40}, {9, 40}},
                {{44, 45}, {-56, 15}, {32, 9}},
                {{19372, 6561}, {-25360, 2187}, {64448, 6561}, {-212, 729}},
                {{9017, 3168}, {-355, 33}, {46732, 5247}, {49, 176}, {-5103, 18656}},
                {{35, 384}, {0}, {500, 1113}, {125, 192}, {-2187, 6784}, {11, 84}}},
               {{35, 384}, {0}, {500, 1113}, {125, 192}, {-2187, 6784}, {11, 84}, {0}},
               {{5179, 57600}, {0}, {7571, 16695}, {393, 640}, {-92097, 339200}, {187, 2100},
                {1, 40}},
               {{0}, {1, 5}, {3, 10}, {4, 5}, {8, 9}, {1}, {1}});
}

ButcherPair make_bs5() {
  return build(
      "bs5", 5, 4,
      {{{1, 6}},
       {{2, 27}, {4, 27}},
       {{183, 1372}, {-162, 343}, {1053, 1372}},
       {{68, 297}, {-4, 11}, {42, 143}, {1960, 3861}},
       {{597, 22528}, {81, 352}, {63099, 585728}, {58653, 366080}, {4617, 20480}},
       {{174197, 959244}, {-30942, 79937}, {8152137, 19744439}, {666106, 1039181},
        {-29421, 29068}, {482048, 414219}},
       {{587, 8064}, {0}, {4440339, 15491840}, {24353, 124800}, {387, 44800}, {2152, 5985},
        {7267, 94080}}},
      {{587, 8064}, {0}, {4440339, 15491840}, {24353, 124800}, {387, 44800}, {2152, 5985},
       {7267, 94080}, {0}},
      {{2479, 34992}, {0}, {123, 416}, {612941, 3411720}, {43, 1440}, {2272, 6561},
       {79937, 1113912}, {3293, 556956}},
      {{0}, {1, 6}, {2, 9}, {3, 7}, {2, 3}, {3, 4}, {1}, {1}});
}

ButcherPair make_kcl5() {
  // Eight-stage 5(4) three-register pair of Kennedy, Carpenter and Lewis,
  // given in register form: first and second subdiagonals plus b; every entry
  // further left in a row repeats b.
  const Rational sub1[7] = {{141236061735, 3636543850841},  {7367658691349, 25881828075080},
                            {6185269491390, 13597512850793}, {2669739616339, 18583622645114},
                            {42158992267337, 9664249073111}, {970532350048, 4459675494195},
                            {1415616989537, 7108576874996}};
  const Rational sub2[6] = {{-343061178215, 2523150225462},   {-4057757969325, 18246604264081},
                            {1415180642415, 13311741862438},  {-93461894168145, 25333855312294},
                            {7285104933991, 14106269434317},  {-4825949463597, 16828400578907}};
  const Rational b[8] = {{514862045033, 4637360145389}, {0}, {0}, {0},
                         {2561084526938, 7959061818733}, {4857652849, 7350455163355},
                         {1059943012790, 2822036905401}, {2987336121747, 15645656703944}};
  const Rational b_hat[8] = {{1269299456316, 16631323494719}, {0},
                             {2153976949307, 22364028786708}, {2303038467735, 18680122447354},
                             {7354111305649, 15643939971922}, {768474111281, 10081205039574},
                             {3439095334143, 10786306938509}, {-3808726110015, 23644487528593}};
  ButcherPair p;
  p.name = "kcl5";
  p.stages = 8;
  p.order = 5;
  p.embedded_order = 4;
  p.a.assign(64, 0.0);
  for (int i = 1; i < 8; ++i) {
    p.a[static_cast<std::size_t>(i * 8 + i - 1)] = sub1[i - 1].value();
    if (i >= 2) p.a[static_cast<std::size_t>(i * 8 + i - 2)] = sub2[i - 2].value();
    for (int j = 0; j < i - 2; ++j) p.a[static_cast<std::size_t>(i * 8 + j)] = b[j].value();
  }
  for (int i = 0; i < 8; ++i) {
    p.b.push_back(b[i].value());
    p.b_hat.push_back(b_hat[i].value());
    double c = 0.0;
    for (int j = 0; j < i; ++j) c += p.A(i, j);
    p.c.push_back(c);
  }
  return p;
}

ButcherPair make_pair(const std::string& name) {
  if (name == "rk4") return make_rk4();
  if (name == "dp5") return make_dp5();
  if (name == "bs5") return make_bs5();
  if (name == "kcl5") return make_kcl5();
  fail(ErrorCategory::invalid_argument, "unknown Runge-Kutta method '" + name + "'");
}

namespace {

struct Tree {
  int order;
  double gamma;
  std::vector<int> children;  // indices into the tree list, non-decreasing
};

std::vector<Tree> rooted_trees(int max_order) {
  std::vector<Tree> trees{{1, 1.0, {}}};
  for (int n = 2; n <= max_order; ++n) {
    const int existing = static_cast<int>(trees.size());
    std::vector<int> stack;
    // Multisets of existing trees whose orders sum to n - 1.
    std::function<void(int, int)> extend = [&](int remaining, int min_index) {
      if (remaining == 0) {
        double gamma = n;
        for (int c : stack) gamma *= trees[static_cast<std::size_t>(c)].gamma;
        trees.push_back({n, gamma, stack});
        return;
      }
      for (int t = min_index; t < existing; ++t) {
        const int o = trees[static_cast<std::size_t>(t)].order;
        if (o > remaining) continue;
        stack.push_back(t);
        extend(remaining - o, t);
        stack.pop_back();
      }
    };
    extend(n - 1, 0);
  }
  return trees;
}

std::vector<double> residuals(const ButcherPair& p, const std::vector<double>& weights,
                              const std::vector<Tree>& trees, int order) {
  const auto s = static_cast<std::size_t>(p.stages);
  std::vector<std::vector<double>> phi;  // stage values of each tree
  std::vector<double> worst(static_cast<std::size_t>(order), 0.0);
  for (const Tree& t : trees) {
    std::vector<double> v(s, 1.0);
    for (int c : t.children) {
      const auto& child = phi[static_cast<std::size_t>(c)];
      for (std::size_t i = 0; i < s; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < i; ++j) acc += p.A(static_cast<int>(i), static_cast<int>(j)) * child[j];
        v[i] *= acc;
      }
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < s; ++i) sum += weights[i] * v[i];
    auto& w = worst[static_cast<std::size_t>(t.order - 1)];
    w = std::max(w, std::abs(sum - 1.0 / t.gamma));
    phi.push_back(std::move(v));
  }
  return worst;
}

}  // namespace

OrderResiduals verify_order_conditions(const ButcherPair& pair, int order) {
  if (order > 5) fail(ErrorCategory::unsupported_order, "order conditions are tabulated up to order 5");
  if (order < 1) fail(ErrorCategory::invalid_argument, "order must be at least 1");
  const auto trees = rooted_trees(order);
  OrderResiduals out;
  out.main = residuals(pair, pair.b, trees, order);
  if (pair.has_embedded()) out.embedded = residuals(pair, pair.b_hat, trees, order);
  return out;
}

}  // namespace specrk
