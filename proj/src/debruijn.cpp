#include "zimin/debruijn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "zimin/error.hpp"
#include "zimin/pattern.hpp"
#include "zimin/pool.hpp"

namespace zimin {

namespace {

bool is_z2_instance(std::span<const Letter> w) { return w.size() >= 3 && is_zimin_instance(w, 2); }

template <class Pred>
std::vector<Word> z2_words(unsigned q, std::size_t max_len, Pred keep) {
  if (q < 2) fail(Errc::invalid_argument, "alphabet size must be >= 2");
  std::vector<Word> out;
  for (std::size_t m = 3; m <= max_len; ++m)
    for_each_word(q, m, [&](std::span<const Letter> w) {
      if (is_z2_instance(w) && keep(w)) out.emplace_back(std::vector<Letter>(w.begin(), w.end()));
    });
  return out;
}

}  // namespace

std::vector<Word> z2_bifixfree_instances(unsigned q, std::size_t max_len) {
  return z2_words(q, max_len, [](std::span<const Letter> w) {
    for (std::size_t b = 3; b < w.size(); ++b)
      if (std::equal(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(b), w.end() - static_cast<std::ptrdiff_t>(b)) &&
          is_z2_instance(w.first(b)))
        return false;
    return true;
  });
}

std::vector<Word> minimal_z2_instances(unsigned q, std::size_t max_len) {
  return z2_words(q, max_len, [](std::span<const Letter> w) {
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t j = i + 3; j <= w.size(); ++j)
        if (j - i < w.size() && is_z2_instance(w.subspan(i, j - i))) return false;
    return true;
  });
}

std::size_t DeBruijnModel::successor(std::size_t node, unsigned letter) const {
  return (node * q + letter) % nodes();
}

Word DeBruijnModel::node_word(std::size_t node) const {
  std::vector<Letter> w(k);
  for (std::size_t i = k; i-- > 0;) {
    w[i] = static_cast<Letter>(node % q);
    node /= q;
  }
  return Word(std::move(w), q);
}

DeBruijnModel make_debruijn_model(unsigned k, unsigned q, InstanceSet set) {
  if (q < 2) fail(Errc::invalid_argument, "alphabet size must be >= 2");
  if (k < 3) fail(Errc::invalid_argument, "dimension must be >= 3");
  std::uint64_t n = checked_pow(q, k);
  if (n > 4096) fail(Errc::out_of_range, "de Bruijn graph too large");
  DeBruijnModel m;
  m.k = k;
  m.q = q;
  m.instances = set == InstanceSet::minimal ? minimal_z2_instances(q, k) : z2_bifixfree_instances(q, k);
  std::sort(m.instances.begin(), m.instances.end(), [](const Word& a, const Word& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  m.node_instances.resize(n);
  for (std::size_t node = 0; node < n; ++node) {
    Word w = m.node_word(node);
    for (std::size_t v = 0; v < m.instances.size(); ++v) {
      const Word& V = m.instances[v];
      if (std::equal(V.begin(), V.end(), w.end() - static_cast<std::ptrdiff_t>(V.size())))
        m.node_instances[node].push_back(v);
    }
  }
  return m;
}

namespace {

template <class T>
bool is_zero(const T& x) {
  return x == 0;
}

template <class T>
T magnitude(const T& x) {
  using std::abs;
  return abs(x);
}

// Solves A X = B in place (B has several columns); returns false when singular.
template <class T>
bool gauss_solve(std::vector<std::vector<T>>& A, std::vector<std::vector<T>>& B) {
  const std::size_t n = A.size();
  const std::size_t cols = B.empty() ? 0 : B[0].size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    if constexpr (std::is_floating_point_v<T>) {
      T best = 0;
      for (std::size_t r = c; r < n; ++r)
        if (magnitude(A[r][c]) > best) {
          best = magnitude(A[r][c]);
          piv = r;
        }
      if (best < 1e-300) piv = n;
    } else {
      for (std::size_t r = c; r < n && piv == n; ++r)
        if (!is_zero(A[r][c])) piv = r;
    }
    if (piv == n) return false;
    std::swap(A[c], A[piv]);
    std::swap(B[c], B[piv]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || is_zero(A[r][c])) continue;
      T f = A[r][c] / A[c][c];
      for (std::size_t j = c; j < n; ++j) A[r][j] -= f * A[c][j];
      for (std::size_t j = 0; j < cols; ++j) B[r][j] -= f * B[c][j];
    }
  }
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j < cols; ++j) B[r][j] /= A[r][r];
  return true;
}

template <class T>
std::vector<std::vector<T>> transitions(const DeBruijnModel& m, const std::vector<T>& p) {
  const std::size_t n = m.nodes();
  if (p.size() != n * m.params_per_node())
    fail(Errc::invalid_argument, "expected " + std::to_string(n * m.params_per_node()) + " probabilities");
  std::vector<std::vector<T>> P(n, std::vector<T>(m.q, T(0)));
  for (std::size_t i = 0; i < n; ++i) {
    if (m.q == 2) {
      if (p[i] < 0 || p[i] > 1) fail(Errc::invalid_argument, "probability outside [0,1]");
      P[i][0] = T(1) - p[i];
      P[i][1] = p[i];
      continue;
    }
    T total = 0;
    for (unsigned c = 0; c < m.q; ++c) {
      if (p[i * m.q + c] < 0) fail(Errc::invalid_argument, "negative weight");
      total += p[i * m.q + c];
    }
    for (unsigned c = 0; c < m.q; ++c) P[i][c] = is_zero(total) ? T(1) / T(m.q) : T(p[i * m.q + c] / total);
  }
  return P;
}

template <class T>
StationarySolution<T> solve_stationary(const DeBruijnModel& m, const std::vector<T>& p) {
  const std::size_t n = m.nodes();
  auto P = transitions(m, p);
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::size_t> stack{s};
    reach[s][s] = 1;
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      for (unsigned c = 0; c < m.q; ++c) {
        if (is_zero(P[u][c])) continue;
        std::size_t v = m.successor(u, c);
        if (!reach[s][v]) {
          reach[s][v] = 1;
          stack.push_back(v);
        }
      }
    }
  }
  // closed class: every node reachable from u reaches u back
  std::vector<int> cls(n, -1);
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t u = 0; u < n; ++u) {
    if (cls[u] >= 0) continue;
    bool closed = true;
    for (std::size_t v = 0; v < n && closed; ++v)
      if (reach[u][v] && !reach[v][u]) closed = false;
    if (!closed) continue;
    std::vector<std::size_t> members;
    for (std::size_t v = 0; v < n; ++v)
      if (reach[u][v]) {
        members.push_back(v);
        cls[v] = static_cast<int>(classes.size());
      }
    classes.push_back(std::move(members));
  }
  std::vector<std::size_t> transient;
  for (std::size_t u = 0; u < n; ++u)
    if (cls[u] < 0) transient.push_back(u);

  std::vector<T> weight(classes.size(), T(0));
  for (std::size_t c = 0; c < classes.size(); ++c) weight[c] = T(static_cast<long>(classes[c].size()));
  if (!transient.empty()) {
    std::vector<std::size_t> pos(n, n);
    for (std::size_t i = 0; i < transient.size(); ++i) pos[transient[i]] = i;
    const std::size_t t = transient.size();
    std::vector<std::vector<T>> A(t, std::vector<T>(t, T(0)));
    std::vector<std::vector<T>> B(t, std::vector<T>(classes.size(), T(0)));
    for (std::size_t i = 0; i < t; ++i) {
      A[i][i] = 1;
      std::size_t u = transient[i];
      for (unsigned c = 0; c < m.q; ++c) {
        std::size_t v = m.successor(u, c);
        if (cls[v] >= 0) B[i][static_cast<std::size_t>(cls[v])] += P[u][c];
        else A[i][pos[v]] -= P[u][c];
      }
    }
    if (!gauss_solve(A, B)) fail(Errc::singular_system, "absorption system is singular");
    for (std::size_t i = 0; i < t; ++i)
      for (std::size_t c = 0; c < classes.size(); ++c) weight[c] += B[i][c];
  }

  StationarySolution<T> s;
  s.p = p;
  s.q_dist.assign(n, T(0));
  s.closed_classes = classes.size();
  s.reducible = classes.size() != 1 || !transient.empty();
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const auto& C = classes[c];
    const std::size_t sz = C.size();
    std::vector<std::size_t> pos(n, n);
    for (std::size_t i = 0; i < sz; ++i) pos[C[i]] = i;
    // pi_j - sum_i pi_i P(i,j) = 0, first row replaced by normalization
    std::vector<std::vector<T>> A(sz, std::vector<T>(sz, T(0)));
    std::vector<std::vector<T>> B(sz, std::vector<T>(1, T(0)));
    for (std::size_t j = 0; j < sz; ++j) A[j][j] = 1;
    for (std::size_t i = 0; i < sz; ++i)
      for (unsigned a = 0; a < m.q; ++a) {
        std::size_t v = m.successor(C[i], a);
        if (pos[v] < n) A[pos[v]][i] -= P[C[i]][a];
      }
    for (std::size_t i = 0; i < sz; ++i) A[0][i] = 1;
    B[0][0] = 1;
    if (!gauss_solve(A, B)) fail(Errc::singular_system, "stationary system is singular");
    for (std::size_t i = 0; i < sz; ++i) s.q_dist[C[i]] += weight[c] * B[i][0] / T(static_cast<long>(n));
  }

  s.r.assign(m.instances.size(), T(0));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v : m.node_instances[u]) s.r[v] += s.q_dist[u];
  s.d = T(0);
  for (const T& x : s.r) s.d += x * x;
  return s;
}

}  // namespace

StationaryFloat stationary(const DeBruijnModel& model, const std::vector<double>& p) {
  return solve_stationary<double>(model, p);
}

StationaryExact stationary_exact(const DeBruijnModel& model, const std::vector<Rational>& p) {
  auto s = solve_stationary<Rational>(model, p);
  auto P = transitions(model, p);
  Rational total = 0;
  std::vector<Rational> next(model.nodes(), Rational(0));
  for (std::size_t u = 0; u < model.nodes(); ++u) {
    total += s.q_dist[u];
    for (unsigned c = 0; c < model.q; ++c) next[model.successor(u, c)] += s.q_dist[u] * P[u][c];
  }
  if (total != 1 || next != s.q_dist) fail(Errc::assertion, "stationary distribution fails the balance equations");
  return s;
}

StationaryExact verify_candidate(const DeBruijnModel& model, const std::vector<std::optional<Rational>>& p) {
  std::vector<Rational> full;
  full.reserve(p.size());
  for (const auto& x : p) full.push_back(x ? *x : (model.q == 2 ? Rational(1, 2) : Rational(1)));
  return stationary_exact(model, full);
}

std::vector<std::optional<Rational>> parse_probability_tuple(std::string_view text) {
  std::vector<std::optional<Rational>> out;
  std::string t(text);
  for (std::string_view dash : {"–", "—", "−"}) {
    for (auto pos = t.find(dash); pos != std::string::npos; pos = t.find(dash)) t.replace(pos, dash.size(), "-");
  }
  std::size_t start = 0;
  while (start <= t.size()) {
    auto comma = t.find(',', start);
    std::string item = t.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
    if (item.empty()) fail(Errc::parse_error, "empty entry in probability tuple");
    if (item == "-" || item == "--") out.push_back(std::nullopt);
    else {
      Rational v = parse_rational(item);
      if (v < 0 || v > 1) fail(Errc::out_of_range, "probability " + item + " outside [0,1]");
      out.push_back(v);
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

namespace {

struct RestartResult {
  std::vector<double> x;
  double f = 0;
};

RestartResult local_search(const DeBruijnModel& model, std::mt19937_64& rng, double tol) {
  const std::size_t dim = model.nodes() * model.params_per_node();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> x(dim);
  for (auto& v : x) v = unit(rng);
  auto eval = [&](const std::vector<double>& y) { return stationary(model, y).d; };
  double fx = eval(x);

  double step = 0.25;
  while (step > tol) {
    bool improved = false;
    for (std::size_t i = 0; i < dim; ++i) {
      for (double target : {x[i] + step, x[i] - step, 0.0, 1.0}) {
        double v = std::clamp(target, 0.0, 1.0);
        if (v == x[i]) continue;
        double old = x[i];
        x[i] = v;
        double fy = eval(x);
        if (fy < fx - 1e-15) {
          fx = fy;
          improved = true;
          break;
        }
        x[i] = old;
      }
    }
    if (!improved) step /= 2;
  }

  // Nelder-Mead polish inside the unit box
  std::vector<std::vector<double>> simplex(dim + 1, x);
  std::vector<double> fs(dim + 1, fx);
  for (std::size_t i = 0; i < dim; ++i) {
    simplex[i + 1][i] = x[i] > 0.5 ? x[i] - 0.05 : x[i] + 0.05;
    fs[i + 1] = eval(simplex[i + 1]);
  }
  auto clamp_all = [](std::vector<double>& y) {
    for (auto& v : y) v = std::clamp(v, 0.0, 1.0);
  };
  for (std::size_t iter = 0; iter < 200 * dim; ++iter) {
    std::vector<std::size_t> order(dim + 1);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[dim - 1];
    if (fs[worst] - fs[best] < 1e-16) break;
    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i : order)
      if (i != worst)
        for (std::size_t j = 0; j < dim; ++j) centroid[j] += simplex[i][j] / static_cast<double>(dim);
    auto along = [&](double t) {
      std::vector<double> y(dim);
      for (std::size_t j = 0; j < dim; ++j) y[j] = centroid[j] + t * (simplex[worst][j] - centroid[j]);
      clamp_all(y);
      return y;
    };
    auto xr = along(-1.0);
    double fr = eval(xr);
    if (fr < fs[best]) {
      auto xe = along(-2.0);
      double fe = eval(xe);
      if (fe < fr) {
        simplex[worst] = xe;
        fs[worst] = fe;
      } else {
        simplex[worst] = xr;
        fs[worst] = fr;
      }
    } else if (fr < fs[second]) {
      simplex[worst] = xr;
      fs[worst] = fr;
    } else {
      auto xc = along(0.5);
      double fc = eval(xc);
      if (fc < fs[worst]) {
        simplex[worst] = xc;
        fs[worst] = fc;
      } else {
        for (std::size_t i : order) {
          if (i == best) continue;
          for (std::size_t j = 0; j < dim; ++j) simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
          fs[i] = eval(simplex[i]);
        }
      }
    }
  }
  std::size_t best = static_cast<std::size_t>(std::min_element(fs.begin(), fs.end()) - fs.begin());
  if (fs[best] < fx) return {simplex[best], fs[best]};
  return {x, fx};
}

}  // namespace

StationaryFloat minimize_objective(const DeBruijnModel& model, const MinimizeConfig& cfg) {
  if (cfg.restarts == 0) fail(Errc::invalid_argument, "restarts must be >= 1");
  std::vector<RestartResult> results(cfg.restarts);
  parallel_for(
      cfg.restarts,
      [&](std::size_t i) {
        std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                          static_cast<std::uint32_t>(i)};
        std::mt19937_64 rng(seq);
        results[i] = local_search(model, rng, cfg.tolerance);
      },
      cfg.threads);
  auto best = std::min_element(results.begin(), results.end(), [](const RestartResult& a, const RestartResult& b) {
    return a.f != b.f ? a.f < b.f : a.x < b.x;
  });
  return stationary(model, best->x);
}

Rational FamilyFrequencies::corrected_estimate(const DeBruijnModel& model, std::size_t period_length,
                                               std::size_t periods) const {
  const Integer L = Integer(static_cast<unsigned long>(period_length)) * static_cast<unsigned long>(periods);
  Rational total = 0;
  for (std::size_t v = 0; v < r.size(); ++v) {
    Rational c = r[v] * L;
    Rational term = c * (c - 1) / 2 - Rational(static_cast<unsigned long>(model.instances[v].size())) * c;
    total += term;
  }
  return total / Rational(L * (L + 1) / 2);
}

FamilyFrequencies word_family_frequencies(const Word& period, const DeBruijnModel& model) {
  const std::size_t len = period.size();
  if (len < model.k) fail(Errc::invalid_argument, "period shorter than the graph dimension");
  const std::size_t n = model.nodes();
  std::vector<std::uint64_t> visits(n, 0), ones(n, 0);
  for (std::size_t i = 0; i < len; ++i) {
    std::size_t node = 0;
    for (std::size_t j = 0; j < model.k; ++j) {
      Letter c = period[(i + j) % len];
      if (c >= model.q) fail(Errc::invalid_argument, "letter outside the alphabet");
      node = node * model.q + c;
    }
    ++visits[node];
    if (period[(i + model.k) % len] == 1) ++ones[node];
  }
  FamilyFrequencies f;
  f.node_freq.resize(n);
  f.implied_p.resize(n);
  f.r.assign(model.instances.size(), Rational(0));
  for (std::size_t u = 0; u < n; ++u) {
    f.node_freq[u] = make_rational(static_cast<unsigned long>(visits[u]), static_cast<unsigned long>(len));
    if (model.q == 2 && visits[u] > 0)
      f.implied_p[u] = make_rational(static_cast<unsigned long>(ones[u]), static_cast<unsigned long>(visits[u]));
    for (std::size_t v : model.node_instances[u]) f.r[v] += f.node_freq[u];
  }
  for (const auto& x : f.r) f.estimate += x * x;
  return f;
}

std::vector<std::uint64_t> node_counts_linear(const Word& w, const DeBruijnModel& model) {
  std::vector<std::uint64_t> counts(model.nodes(), 0);
  for (std::size_t i = 0; i + model.k <= w.size(); ++i) {
    std::size_t node = 0;
    for (std::size_t j = 0; j < model.k; ++j) node = node * model.q + w[i + j];
    ++counts[node];
  }
  return counts;
}

std::vector<double> simulate_walk(const DeBruijnModel& model, const std::vector<double>& p, std::uint64_t steps,
                                  std::uint64_t seed) {
  auto P = transitions(model, p);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t node = std::uniform_int_distribution<std::size_t>(0, model.nodes() - 1)(rng);
  std::vector<double> freq(model.nodes(), 0.0);
  for (std::uint64_t s = 0; s < steps; ++s) {
    double u = unit(rng);
    unsigned c = 0;
    while (c + 1 < model.q && u >= P[node][c]) u -= P[node][c++];
    node = model.successor(node, c);
    freq[node] += 1.0;
  }
  for (auto& x : freq) x /= static_cast<double>(steps);
  return freq;
}

std::string_view candidate_tuple(unsigned which) {
  switch (which) {
    case 1: return "-,4/5,0,3/5,2/5,-,1/5,0,1,4/5,-,3/5,2/5,1,1/5,-";
    case 2: return "-,1,0,3/4,1,-,1/2,0,1,1/2,-,0,1/4,1,0,-";
    case 3: return "-,1,-,3/5,2/5,-,1/5,0,1,1,0,-,2/5,0,1/5,-";
    default: fail(Errc::out_of_range, "candidate index must be 1..3");
  }
}

std::string_view candidate_period(unsigned which) {
  switch (which) {
    case 2: return "0001110010011100011011000111";
    case 3: return "(11010001)^3(101001)^2(110001)^12(1001)^8";
    default: fail(Errc::out_of_range, "family index must be 2 or 3");
  }
}

Word expand_period_spec(std::string_view spec) {
  std::vector<Letter> out;
  std::size_t i = 0;
  auto digits = [&](std::string_view s) {
    std::vector<Letter> w;
    for (char c : s) {
      if (c < '0' || c > '9') fail(Errc::parse_error, "bad letter in period");
      w.push_back(static_cast<Letter>(c - '0'));
    }
    return w;
  };
  while (i < spec.size()) {
    if (spec[i] == '(') {
      auto close = spec.find(')', i);
      if (close == std::string_view::npos) fail(Errc::parse_error, "unbalanced parenthesis");
      auto block = digits(spec.substr(i + 1, close - i - 1));
      std::size_t reps = 1;
      i = close + 1;
      if (i < spec.size() && spec[i] == '^') {
        std::size_t j = ++i;
        while (j < spec.size() && std::isdigit(static_cast<unsigned char>(spec[j]))) ++j;
        if (j == i) fail(Errc::parse_error, "missing exponent");
        reps = std::stoul(std::string(spec.substr(i, j - i)));
        i = j;
      }
      for (std::size_t r = 0; r < reps; ++r) out.insert(out.end(), block.begin(), block.end());
    } else {
      auto block = digits(spec.substr(i, 1));
      out.insert(out.end(), block.begin(), block.end());
      ++i;
    }
  }
  return Word(std::move(out));
}

}  // namespace zimin
