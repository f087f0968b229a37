#include "zimin/zimin.h"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <string>

#include "zimin/avoidance.hpp"
#include "zimin/debruijn.hpp"
#include "zimin/density.hpp"
#include "zimin/error.hpp"
#include "zimin/pattern.hpp"
#include "zimin/pool.hpp"
#include "zimin/series.hpp"
#include "zimin/tracker.hpp"

using json = nlohmann::ordered_json;

struct zimin_context {
  unsigned threads = 0;
  std::uint64_t node_budget = 1'000'000'000;
  std::uint64_t enum_budget = zimin::kDefaultEnumerationBudget;
  std::string alphabet{zimin::kDefaultAlphabet};
  std::string last_error;
};

struct zimin_result {
  std::string text;
  bool partial = false;
};

namespace {

using namespace zimin;

class UnknownOp : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Call {
  zimin_context& ctx;
  const json& p;
  bool partial = false;

  bool has(const char* key) const { return p.contains(key) && !p[key].is_null(); }

  template <class T>
  T get(const char* key) const {
    if (!has(key)) fail(Errc::invalid_argument, std::string("missing parameter '") + key + "'");
    try {
      return p[key].get<T>();
    } catch (const json::exception&) {
      fail(Errc::invalid_argument, std::string("bad type for parameter '") + key + "'");
    }
  }

  template <class T>
  T get(const char* key, T fallback) const {
    return has(key) ? get<T>(key) : fallback;
  }

  unsigned u(const char* key) const {
    auto v = get<long long>(key);
    if (v < 0) fail(Errc::invalid_argument, std::string("parameter '") + key + "' must be nonnegative");
    return static_cast<unsigned>(v);
  }
  unsigned u(const char* key, unsigned fallback) const { return has(key) ? u(key) : fallback; }

  Word word(const char* key) const { return Word::parse(get<std::string>(key), ctx.alphabet); }
  Pattern pattern(const char* key) const {
    // patterns are usually written with letters; accept any symbols and canonicalize
    auto text = get<std::string>(key);
    std::vector<Letter> w;
    std::map<char, Letter> code;
    for (char c : text) {
      auto [it, inserted] = code.emplace(c, static_cast<Letter>(code.size()));
      w.push_back(it->second);
    }
    return Pattern(Word(std::move(w)));
  }
  Rational rational(const char* key) const {
    const json& v = p[key];
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_number()) return Rational(v.get<double>());
    fail(Errc::invalid_argument, std::string("bad rational parameter '") + key + "'");
  }
  std::optional<Integer> integer_opt(const char* key) const {
    if (!has(key)) return std::nullopt;
    const json& v = p[key];
    if (v.is_string()) return Integer(v.get<std::string>());
    return Integer(v.get<long>());
  }
  SearchConfig search() const {
    SearchConfig cfg;
    cfg.node_budget = get<std::uint64_t>("budget", ctx.node_budget);
    cfg.threads = ctx.threads;
    cfg.split_depth = u("split_depth", cfg.split_depth);
    return cfg;
  }
  std::uint64_t enum_budget() const { return get<std::uint64_t>("enum_budget", ctx.enum_budget); }
  std::string str(const Word& w) const { return w.str(ctx.alphabet); }
};

json rat(const Rational& r) {
  json j;
  j["num"] = r.get_num().get_str();
  j["den"] = r.get_den().get_str();
  j["float"] = to_double(r);
  j["decimal"] = to_decimal(r, 12);
  j["sci"] = to_scientific(r, 6);
  return j;
}

json integer(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

json enclosure(const RationalEnclosure& e, unsigned digits) {
  json j;
  j["lower"] = rat(e.lower);
  j["upper"] = rat(e.upper);
  j["lower_decimal"] = to_decimal(e.lower, digits + 2);
  j["upper_decimal"] = to_decimal(e.upper, digits + 2);
  std::string lo = to_decimal(e.lower, digits), hi = to_decimal(e.upper, digits);
  j["decimal"] = lo == hi ? json(lo) : json(nullptr);
  j["width"] = to_scientific(e.width(), 3);
  j["params"] = {{"N", e.N}, {"M", e.M}};
  return j;
}

json witness(const EncounterWitness& w, const Call& c) {
  json images = json::array();
  for (const Word& im : w.images) images.push_back(c.str(im));
  return {{"start", w.start}, {"end", w.end}, {"images", images}};
}

json trace(const ReductionTrace& t) {
  json steps = json::array();
  for (const auto& s : t.steps) {
    json step;
    if (s.op == ReductionStep::Op::delete_free_letter) {
      step["op"] = "delete";
      step["letter"] = std::string(1, static_cast<char>('a' + s.x));
    } else {
      step["op"] = "identify";
      step["letters"] = {std::string(1, static_cast<char>('a' + s.x)), std::string(1, static_cast<char>('a' + s.y))};
    }
    step["word"] = Pattern(s.result).str();
    steps.push_back(step);
  }
  return steps;
}

json word_list(const std::vector<Word>& ws, const Call& c) {
  json a = json::array();
  for (const auto& w : ws) a.push_back(c.str(w));
  return a;
}

json avoidance(const AvoidanceResult& r, Call& c) {
  c.partial = r.budget_exhausted;
  json j;
  j["n"] = r.n;
  j["q"] = r.q;
  j["f"] = r.f_value ? json(*r.f_value) : json(nullptr);
  j["f_lower_bound"] = r.deepest_avoider + 1;
  j["deepest_avoider"] = r.deepest_avoider;
  j["nodes_explored"] = r.nodes_explored;
  j["budget_exhausted"] = r.budget_exhausted;
  json counts = json::array();
  for (const auto& x : r.avoiders_by_length) counts.push_back(integer(x));
  j["avoiders_by_length"] = counts;
  j["total_avoiders"] = integer(r.total_avoiders());
  if (!r.max_avoiders.empty()) j["max_avoiders"] = word_list(r.max_avoiders, c);
  return j;
}

json tetration_json(const Tetration& t) {
  return {{"base", integer(t.base)},
          {"height", t.height},
          {"value", t.value ? integer(*t.value) : json(nullptr)},
          {"log10", std::isfinite(t.log10_value) ? json(t.log10_value) : json("inf")},
          {"text", t.str()}};
}

json nominal(const NominalValue& v) {
  return {{"value", std::isfinite(v.value) ? json(v.value) : json(nullptr)}, {"log10", v.log10}, {"note", v.note}};
}

json sequence(const std::vector<Integer>& v, std::size_t from = 0) {
  json a = json::array();
  for (std::size_t i = from; i < v.size(); ++i) a.push_back({{"index", i}, {"value", integer(v[i])}});
  return a;
}

template <class T>
json numbers(const std::vector<T>& v) {
  json a = json::array();
  for (const auto& x : v) {
    if constexpr (std::is_same_v<T, Rational>) a.push_back(rat(x));
    else a.push_back(x);
  }
  return a;
}

DeBruijnModel model_from(const Call& c) {
  auto set = c.get<std::string>("instances", "minimal") == "bifix_free" ? InstanceSet::bifix_free : InstanceSet::minimal;
  return make_debruijn_model(c.u("k", 4), c.u("q", 2), set);
}

json stationary_json(const StationaryExact& s, const DeBruijnModel& m, const Call& c) {
  json r = json::object();
  for (std::size_t v = 0; v < m.instances.size(); ++v) r[c.str(m.instances[v])] = rat(s.r[v]);
  return {{"p", numbers(s.p)},
          {"q_dist", numbers(s.q_dist)},
          {"r", r},
          {"d_lower", rat(s.d)},
          {"d_upper_float", to_double(s.d)},
          {"reducible", s.reducible},
          {"closed_classes", s.closed_classes},
          {"label", "candidate lower bound (de Bruijn heuristic)"}};
}

using Handler = std::function<json(Call&)>;

json table(Call& c);

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h = {
      {"substring",
       [](Call& c) {
         return json{{"word", c.str(substring(c.word("word"), c.u("i"), c.u("j")))}};
       }},
      {"canonical",
       [](Call& c) {
         Word w = c.word("word");
         Pattern v(w);
         json mult = json::array();
         for (unsigned r : v.multiplicities()) mult.push_back(r);
         auto b = shortest_bifix(w);
         return json{{"pattern", v.str()},
                     {"multiplicities", mult},
                     {"recurrence_count", v.recurrence_count()},
                     {"doubled", is_doubled(v)},
                     {"shortest_bifix", b ? json(c.str(*b)) : json(nullptr)},
                     {"zimin_order", zimin_order(w.letters())}};
       }},
      {"is_instance",
       [](Call& c) {
         auto w = is_instance(c.word("word"), c.pattern("pattern"));
         return json{{"instance", w.has_value()}, {"witness", w ? witness(*w, c) : json(nullptr)}};
       }},
      {"encounters",
       [](Call& c) {
         auto w = find_encounter(c.pattern("pattern"), c.word("word"));
         return json{{"encounters", w.has_value()}, {"witness", w ? witness(*w, c) : json(nullptr)}};
       }},
      {"hom_count",
       [](Call& c) { return json{{"count", hom_count(c.pattern("pattern"), c.word("word"))}}; }},
      {"free_letters",
       [](Call& c) {
         json a = json::array();
         for (Letter x : free_letters(c.word("word"))) a.push_back(std::string(1, c.ctx.alphabet.at(x)));
         return json{{"free", a}};
       }},
      {"unavoidable",
       [](Call& c) {
         auto m = c.get<std::string>("method", "both");
         UnavoidMethod method = m == "zimin" ? UnavoidMethod::zimin : m == "bem" ? UnavoidMethod::bem : UnavoidMethod::both;
         auto r = is_unavoidable(c.pattern("pattern"), method);
         return json{{"unavoidable", r.unavoidable},
                     {"witness", r.witness ? witness(*r.witness, c) : json(nullptr)},
                     {"trace", r.trace ? trace(*r.trace) : json(nullptr)}};
       }},
      {"f", [](Call& c) { return avoidance(compute_f(c.u("n"), c.u("q"), c.search()), c); }},
      {"avoiders",
       [](Call& c) {
         if (c.get<bool>("all", false)) {
           auto ws = enumerate_all_avoiders(c.u("n"), c.u("q"), c.search());
           return json{{"n", c.u("n")}, {"q", c.u("q")}, {"count", ws.size()}, {"words", word_list(ws, c)}};
         }
         auto r = enumerate_max_avoiders(c.u("n"), c.u("q"), c.search());
         json j = avoidance(r, c);
         j["words"] = word_list(r.max_avoiders, c);
         j["count"] = r.max_avoiders.size();
         return j;
       }},
      {"long_avoider",
       [](Call& c) {
         LongAvoiderConfig cfg;
         cfg.strategy = c.get<std::string>("strategy", "greedy") == "restart_backtrack"
                            ? LongAvoiderStrategy::restart_backtrack
                            : LongAvoiderStrategy::greedy;
         cfg.seed = c.get<std::uint64_t>("seed", 1);
         cfg.node_budget = c.get<std::uint64_t>("budget", cfg.node_budget);
         auto w = find_long_avoider(c.u("n"), c.u("q"), c.u("target"), cfg);
         c.partial = !w.has_value();
         return json{{"found", w.has_value()}, {"word", w ? json(c.str(*w)) : json(nullptr)},
                     {"length", w ? json(w->size()) : json(nullptr)}};
       }},
      {"minimal",
       [](Call& c) {
         unsigned n = c.u("n"), q = c.u("q");
         std::size_t cap = c.u("max_len", 0);
         if (cap == 0) {
           auto f = known_f(n, q);
           if (!f) fail(Errc::invalid_argument, "max_len required when f(n,q) is not known");
           cap = f->get_ui();
         }
         auto r = enumerate_minimal_instances(n, q, cap, c.get<bool>("keep_words", true), c.search());
         c.partial = r.budget_exhausted;
         json j{{"n", n}, {"q", q}, {"max_len", cap}, {"count", integer(r.count)}, {"cap_too_small", r.cap_too_small},
                {"budget_exhausted", r.budget_exhausted}, {"nodes_explored", r.nodes_explored}};
         if (!r.words.empty()) j["words"] = word_list(r.words, c);
         if (n == 2) j["closed_form"] = integer(m2_closed_form(q));
         return j;
       }},
      {"bounds",
       [](Call& c) {
         auto r = bounds_report(c.u("n"), c.u("q"), c.integer_opt("f_prev"), c.integer_opt("m_prev"));
         auto iopt = [](const std::optional<Integer>& v) { return v ? integer(*v) : json(nullptr); };
         return json{{"n", r.n},
                     {"q", r.q},
                     {"known_f", iopt(r.known_f)},
                     {"tetration_upper", tetration_json(r.tetration_upper)},
                     {"tao_upper", tetration_json(r.tao_upper)},
                     {"first_moment_lower", nominal(r.first_moment_lower)},
                     {"first_moment_f_lower", iopt(r.first_moment_f_lower)},
                     {"tao_product_lower", nominal(r.tao_product_lower)},
                     {"rs_chain_upper", iopt(r.rs_chain_upper)},
                     {"f_prev", iopt(r.f_prev)},
                     {"m_prev", iopt(r.m_prev)},
                     {"rs_asymptotic_form",
                      r.rs_asymptotic_form ? json(*r.rs_asymptotic_form) : json(nullptr)}};
       }},
      {"verify",
       [](Call& c) {
         unsigned n = c.u("n");
         json out = json::array();
         for (const auto& text : c.get<std::vector<std::string>>("words")) {
           Word w = Word::parse(text, c.ctx.alphabet);
           auto hit = first_zimin_encounter(w, n);
           if (hit)
             out.push_back({{"word", text}, {"avoids", false}, {"start", hit->start}, {"end", hit->end},
                            {"factor", c.str(substring(w, hit->start, hit->end))}});
           else
             out.push_back({{"word", text}, {"avoids", true}});
         }
         return json{{"n", n}, {"results", out}};
       }},
      {"density",
       [](Call& c) {
         auto d = instance_density(c.pattern("pattern"), c.word("word"));
         return json{{"numerator", integer(d.numerator)}, {"denominator", integer(d.denominator)},
                     {"value", rat(d.as_rational())}};
       }},
      {"factor_density",
       [](Call& c) { return json{{"value", rat(factor_density(c.word("factor"), c.word("word")))}}; }},
      {"instance_probability",
       [](Call& c) {
         return json{{"value", rat(instance_probability_exact(c.pattern("pattern"), c.u("q"), c.u("n"), c.enum_budget()))}};
       }},
      {"expected_density",
       [](Call& c) {
         Pattern v = c.pattern("pattern");
         unsigned q = c.u("q"), n = c.u("n");
         json j{{"value", rat(expected_density_exact(v, q, n, c.enum_budget()))}};
         if (c.get<bool>("check", false)) j["bruteforce"] = rat(average_density_bruteforce(v, q, n));
         return j;
       }},
      {"monte_carlo",
       [](Call& c) {
         auto e = monte_carlo_density(c.pattern("pattern"), c.u("q"), c.u("n"), c.u("samples", 200),
                                      c.get<std::uint64_t>("seed", 1), c.ctx.threads);
         return json{{"mean", e.mean}, {"std_error", e.std_error}, {"samples", e.samples}};
       }},
      {"scatter",
       [](Call& c) {
         auto d = scatter_z2_z3(c.u("q", 2), c.u("n"), c.get<std::uint64_t>("enum_budget", std::uint64_t{1} << 30),
                                c.ctx.threads);
         std::uint64_t min_x = d.points.empty() ? 0 : std::min_element(d.points.begin(), d.points.end())->first;
         return json{{"q", d.q},         {"n", d.n},
                     {"denominator", integer(d.denominator)},
                     {"points", d.points.size()},
                     {"words", d.words},
                     {"min_x", rat(make_rational(static_cast<unsigned long>(min_x), d.denominator))},
                     {"csv", d.csv()}};
       }},
      {"liminf",
       [](Call& c) {
         auto r = liminf_bound_report(c.u("n"), c.u("q"), c.integer_opt("f_prev"), c.integer_opt("m_prev"));
         auto ro = [](const std::optional<Rational>& v) { return v ? rat(*v) : json(nullptr); };
         return json{{"n", r.n},
                     {"q", r.q},
                     {"z2_exact", ro(r.z2_exact)},
                     {"theorem_form", ro(r.spliced_form)},
                     {"minimal_count_form", ro(r.minimal_count_form)},
                     {"appendix_form", ro(r.simplified_form)},
                     {"z3_closed_form", ro(r.z3_closed_form)},
                     {"f_prev", r.f_prev ? integer(*r.f_prev) : json(nullptr)},
                     {"m_prev", r.m_prev ? integer(*r.m_prev) : json(nullptr)}};
       }},
      {"akal",
       [](Call& c) {
         auto f = akal_density_family(c.u("k"), c.u("l"), c.rational("d_k"), c.rational("d_l"), c.u("r"));
         return json{{"length", f.word.size()}, {"word", f.word.size() <= 4096 ? json(f.word.str()) : json(nullptr)},
                     {"d_k", rat(f.d_k)}, {"d_l", rat(f.d_l)}};
       }},
      {"extremal",
       [](Call& c) {
         auto f = extremal_z2_family(c.u("q"), c.u("k"));
         return json{{"length", f.word.size()}, {"density", rat(f.density.as_rational())},
                     {"count", integer(f.density.numerator)}, {"formula_count", integer(f.formula_count)}};
       }},
      {"iz2",
       [](Call& c) {
         Rational tol = c.has("tol") ? c.rational("tol") : Rational(1, 10000000);
         return enclosure(i_z2(c.u("q"), tol), c.u("digits", 7));
       }},
      {"iz3",
       [](Call& c) {
         return enclosure(i_z3(c.u("q"), c.u("N", 30), c.u("M", 5), c.ctx.threads), c.u("digits", 8));
       }},
      {"izn_upper",
       [](Call& c) {
         unsigned n = c.u("n"), q = c.u("q");
         auto b = i_zn_upper(n, q, c.u("N", 40));
         json j{{"n", n},
                {"q", q},
                {"N", c.u("N", 40)},
                {"truncated", rat(b.truncated)},
                {"tail", rat(b.tail)},
                {"upper", rat(b.value())}};
         if (n <= 30) j["product_upper"] = rat(iv_product_upper_zimin(n, q));
         return j;
       }},
      {"iv_upper",
       [](Call& c) {
         unsigned q = c.u("q");
         if (c.has("multiplicities")) {
           auto r = c.get<std::vector<unsigned>>("multiplicities");
           return json{{"upper", rat(iv_product_upper(r, q))}};
         }
         if (c.has("pattern")) {
           Pattern v = c.pattern("pattern");
           std::vector<unsigned> r(v.multiplicities().begin(), v.multiplicities().end());
           return json{{"upper", rat(iv_product_upper(r, q))}};
         }
         return json{{"upper", rat(iv_product_upper_zimin(c.u("n"), q))}};
       }},
      {"nondoubled_lower",
       [](Call& c) { return json{{"lower", rat(nondoubled_lower(c.pattern("pattern"), c.u("q")))}}; }},
      {"sequence",
       [](Call& c) {
         auto kind = c.get<std::string>("kind");
         unsigned q = c.u("q");
         std::size_t max_m = c.u("max_m");
         if (kind == "a") return json{{"kind", kind}, {"q", q}, {"values", sequence(bifix_free_counts(q, max_m))}};
         unsigned l = c.u("l");
         json j{{"kind", kind}, {"q", q}, {"l", l}};
         if (kind == "bhat") {
           j["values"] = sequence(bhat_recursion(q, l, max_m));
         } else if (kind == "b" || kind == "c" || kind == "d") {
           auto t = cd_recursion(q, l, max_m);
           j["values"] = sequence(kind == "b" ? t.b : kind == "c" ? t.c : t.d);
         } else {
           fail(Errc::invalid_argument, "unknown sequence kind '" + kind + "'");
         }
         return j;
       }},
      {"b_oracle",
       [](Call& c) {
         return json{{"value", integer(b_oracle(c.u("q"), c.u("l"), c.u("m"), c.enum_budget()))}};
       }},
      {"doubled_table",
       [](Call& c) {
         json rows = json::array();
         for (const auto& r : doubled_table(c.pattern("pattern"), c.u("q"), c.u("max_n")))
           rows.push_back({{"n", r.n}, {"probability", rat(r.probability)}, {"scaled", r.scaled}});
         return json{{"rows", rows}};
       }},
      {"z2_bifixfree",
       [](Call& c) {
         auto ws = c.get<std::string>("kind", "bifix_free") == "minimal" ? minimal_z2_instances(c.u("q"), c.u("max_len"))
                                                                         : z2_bifixfree_instances(c.u("q"), c.u("max_len"));
         return json{{"words", word_list(ws, c)}, {"count", ws.size()}};
       }},
      {"debruijn_verify",
       [](Call& c) {
         auto m = model_from(c);
         std::string text = c.has("p") ? c.get<std::string>("p") : std::string(candidate_tuple(c.u("candidate", 1)));
         return stationary_json(verify_candidate(m, parse_probability_tuple(text)), m, c);
       }},
      {"debruijn_minimize",
       [](Call& c) {
         auto m = model_from(c);
         MinimizeConfig cfg;
         cfg.restarts = c.u("restarts", 64);
         cfg.seed = c.get<std::uint64_t>("seed", 7);
         cfg.tolerance = c.get<double>("tol", cfg.tolerance);
         cfg.threads = c.ctx.threads;
         auto best = minimize_objective(m, cfg);
         std::vector<Rational> exact(best.p.begin(), best.p.end());
         auto check = stationary_exact(m, exact);
         json r = json::object();
         for (std::size_t v = 0; v < m.instances.size(); ++v) r[c.str(m.instances[v])] = best.r[v];
         return json{{"p", best.p},
                     {"q_dist", best.q_dist},
                     {"r", r},
                     {"d_upper_float", best.d},
                     {"d_lower", rat(check.d)},
                     {"restarts", cfg.restarts},
                     {"seed", cfg.seed},
                     {"label", "candidate lower bound (de Bruijn heuristic)"}};
       }},
      {"debruijn_family",
       [](Call& c) {
         auto m = model_from(c);
         std::string spec = c.has("period") ? c.get<std::string>("period") : std::string(candidate_period(c.u("family", 2)));
         Word period = expand_period_spec(spec);
         auto f = word_family_frequencies(period, m);
         json implied = json::array();
         for (const auto& x : f.implied_p) implied.push_back(x ? rat(*x) : json(nullptr));
         return json{{"period_length", period.size()},
                     {"node_freq", numbers(f.node_freq)},
                     {"implied_p", implied},
                     {"estimate", rat(f.estimate)},
                     {"corrected_estimate_10_periods", rat(f.corrected_estimate(m, period.size(), 10))}};
       }},
      {"table", [](Call& c) { return table(c); }},
  };
  return h;
}

json table(Call& c) {
  auto name = c.get<std::string>("name");
  json rows = json::array();
  if (name == "fn2") {
    unsigned max_n = c.u("max_n", 3);
    for (unsigned n = 1; n <= max_n; ++n) {
      auto r = compute_f(n, 2, c.search());
      if (r.budget_exhausted) c.partial = true;
      rows.push_back({{"n", n}, {"f", r.f_value ? json(*r.f_value) : json(nullptr)}, {"f_lower_bound", r.deepest_avoider + 1}});
    }
  } else if (name == "Z2Z3") {
    for (unsigned q = 2; q <= c.u("max_q", 8); ++q) {
      auto e = i_z2(q, Rational(1, 100000000));
      rows.push_back({{"q", q}, {"iz2", enclosure(e, 7)}, {"lower_1_over_q", rat(make_rational(1, q))},
                      {"upper_1_over_q_minus_1", rat(make_rational(1, q - 1))}});
    }
  } else if (name == "IZ3") {
    for (unsigned q = 2; q <= c.u("max_q", 6); ++q)
      rows.push_back({{"q", q}, {"iz3", enclosure(i_z3(q, c.u("N", 30), c.u("M", 5), c.ctx.threads), 8)}});
  } else if (name == "appendMD") {
    for (unsigned n = 2; n <= c.u("max_n", 5); ++n)
      for (unsigned q = 2; q <= c.u("max_q", 5); ++q) {
        json row{{"n", n}, {"q", q}};
        row["probability_lower"] = rat(qpow(q, -static_cast<long>((1ul << n) - 1 - n)));
        row["probability_upper"] = rat(iv_product_upper_zimin(n, q));
        if (n <= 4) {
          auto l = liminf_bound_report(n, q);
          auto ro = [](const std::optional<Rational>& v) { return v ? rat(*v) : json(nullptr); };
          row["density_lower"] = {{"z2_exact", ro(l.z2_exact)},
                                  {"theorem_form", ro(l.spliced_form)},
                                  {"minimal_count_form", ro(l.minimal_count_form)},
                                  {"appendix_form", ro(l.simplified_form)},
                                  {"z3_closed_form", ro(l.z3_closed_form)}};
        }
        auto b = bounds_report(n, q);
        row["f_upper_rs_chain"] = b.rs_chain_upper ? integer(*b.rs_chain_upper) : json(nullptr);
        row["f_known"] = b.known_f ? integer(*b.known_f) : json(nullptr);
        rows.push_back(row);
      }
  } else if (name == "TREES") {
    const std::vector<std::pair<unsigned, unsigned>> ranges = {{3, 9}, {5, 10}, {7, 12}};
    for (unsigned l = 1; l <= 3; ++l) {
      auto t = cd_recursion(2, l, ranges[l - 1].second);
      for (unsigned m = ranges[l - 1].first; m <= ranges[l - 1].second; ++m)
        rows.push_back({{"l", l}, {"m", m}, {"b", integer(t.b[m])}, {"c", integer(t.c[m])}, {"d", integer(t.d[m])},
                        {"oracle", integer(b_oracle(2, l, m))}});
    }
  } else {
    fail(Errc::invalid_argument, "unknown table '" + name + "' (fn2, Z2Z3, IZ3, appendMD, TREES)");
  }
  return json{{"table", name}, {"rows", rows}};
}

zimin_status to_status(Errc e) {
  switch (e) {
    case Errc::ok: return ZIMIN_OK;
    case Errc::invalid_argument: return ZIMIN_E_INVALID_ARGUMENT;
    case Errc::out_of_range: return ZIMIN_E_OUT_OF_RANGE;
    case Errc::empty_word: return ZIMIN_E_EMPTY_WORD;
    case Errc::budget_exhausted: return ZIMIN_E_BUDGET;
    case Errc::region_violation: return ZIMIN_E_REGION;
    case Errc::singular_system: return ZIMIN_E_SINGULAR;
    case Errc::no_convergence: return ZIMIN_E_NO_CONVERGENCE;
    case Errc::disagreement: return ZIMIN_E_DISAGREEMENT;
    case Errc::assertion: return ZIMIN_E_ASSERTION;
    case Errc::parse_error: return ZIMIN_E_PARSE;
    case Errc::hypothesis_violation: return ZIMIN_E_HYPOTHESIS;
    case Errc::io_error: return ZIMIN_E_IO;
  }
  return ZIMIN_E_INTERNAL;
}

template <class F>
zimin_status guarded(zimin_context* ctx, F&& f) {
  if (!ctx) return ZIMIN_E_INVALID_ARGUMENT;
  ctx->last_error.clear();
  try {
    return f();
  } catch (const Error& e) {
    ctx->last_error = e.what();
    return to_status(e.code());
  } catch (const UnknownOp& e) {
    ctx->last_error = e.what();
    return ZIMIN_E_UNKNOWN_OP;
  } catch (const json::exception& e) {
    ctx->last_error = std::string("json: ") + e.what();
    return ZIMIN_E_PARSE;
  } catch (const std::bad_alloc&) {
    ctx->last_error = "out of memory";
    return ZIMIN_E_INTERNAL;
  } catch (const std::exception& e) {
    ctx->last_error = e.what();
    return ZIMIN_E_INTERNAL;
  }
}

}  // namespace

extern "C" {

const char* zimin_version(void) { return "1.0.0"; }

const char* zimin_status_name(zimin_status status) {
  switch (status) {
    case ZIMIN_OK: return "ok";
    case ZIMIN_E_INVALID_ARGUMENT: return "invalid_argument";
    case ZIMIN_E_OUT_OF_RANGE: return "out_of_range";
    case ZIMIN_E_EMPTY_WORD: return "empty_word";
    case ZIMIN_E_BUDGET: return "budget_exhausted";
    case ZIMIN_E_REGION: return "region_violation";
    case ZIMIN_E_SINGULAR: return "singular_system";
    case ZIMIN_E_NO_CONVERGENCE: return "no_convergence";
    case ZIMIN_E_DISAGREEMENT: return "disagreement";
    case ZIMIN_E_ASSERTION: return "assertion";
    case ZIMIN_E_PARSE: return "parse_error";
    case ZIMIN_E_HYPOTHESIS: return "hypothesis_violation";
    case ZIMIN_E_IO: return "io_error";
    case ZIMIN_E_UNKNOWN_OP: return "unknown_operation";
    case ZIMIN_E_INTERNAL: return "internal_error";
  }
  return "unknown";
}

zimin_status zimin_context_new(zimin_context** out) {
  if (!out) return ZIMIN_E_INVALID_ARGUMENT;
  try {
    *out = new zimin_context;
  } catch (...) {
    return ZIMIN_E_INTERNAL;
  }
  return ZIMIN_OK;
}

void zimin_context_free(zimin_context* ctx) { delete ctx; }

zimin_status zimin_context_set_threads(zimin_context* ctx, unsigned threads) {
  if (!ctx) return ZIMIN_E_INVALID_ARGUMENT;
  ctx->threads = threads;
  return ZIMIN_OK;
}

zimin_status zimin_context_set_node_budget(zimin_context* ctx, uint64_t nodes) {
  if (!ctx || nodes == 0) return ZIMIN_E_INVALID_ARGUMENT;
  ctx->node_budget = nodes;
  return ZIMIN_OK;
}

zimin_status zimin_context_set_enum_budget(zimin_context* ctx, uint64_t words) {
  if (!ctx || words == 0) return ZIMIN_E_INVALID_ARGUMENT;
  ctx->enum_budget = words;
  return ZIMIN_OK;
}

zimin_status zimin_context_set_alphabet(zimin_context* ctx, const char* alphabet) {
  if (!ctx || !alphabet || !*alphabet) return ZIMIN_E_INVALID_ARGUMENT;
  std::string a(alphabet);
  if (a.size() > 255) return ZIMIN_E_INVALID_ARGUMENT;
  ctx->alphabet = a;
  return ZIMIN_OK;
}

const char* zimin_context_last_error(const zimin_context* ctx) { return ctx ? ctx->last_error.c_str() : ""; }

zimin_status zimin_call(zimin_context* ctx, const char* op, const char* params_json, zimin_result** out) {
  return guarded(ctx, [&] {
    if (!op || !out) fail(Errc::invalid_argument, "null argument");
    *out = nullptr;
    auto it = handlers().find(op);
    if (it == handlers().end()) throw UnknownOp(std::string("unknown operation '") + op + "'");
    json params = params_json && *params_json ? json::parse(params_json) : json::object();
    if (!params.is_object()) fail(Errc::invalid_argument, "parameters must be a JSON object");
    Call call{*ctx, params};
    json value = it->second(call);
    auto* r = new zimin_result;
    r->text = value.dump();
    r->partial = call.partial;
    *out = r;
    return ZIMIN_OK;
  });
}

const char* zimin_operations(void) {
  static const std::string list = [] {
    json a = json::array();
    for (const auto& [name, _] : handlers()) a.push_back(name);
    return a.dump();
  }();
  return list.c_str();
}

const char* zimin_result_json(const zimin_result* result) { return result ? result->text.c_str() : ""; }

int zimin_result_partial(const zimin_result* result) { return result && result->partial ? 1 : 0; }

void zimin_result_free(zimin_result* result) { delete result; }

zimin_status zimin_encounters(zimin_context* ctx, const char* pattern, const char* word, int* out) {
  return guarded(ctx, [&] {
    if (!pattern || !word || !out) fail(Errc::invalid_argument, "null argument");
    json p{{"pattern", pattern}, {"word", word}};
    Call c{*ctx, p};
    *out = encounters(c.pattern("pattern"), c.word("word")) ? 1 : 0;
    return ZIMIN_OK;
  });
}

zimin_status zimin_is_instance(zimin_context* ctx, const char* pattern, const char* word, int* out) {
  return guarded(ctx, [&] {
    if (!pattern || !word || !out) fail(Errc::invalid_argument, "null argument");
    json p{{"pattern", pattern}, {"word", word}};
    Call c{*ctx, p};
    *out = is_instance(c.word("word"), c.pattern("pattern")) ? 1 : 0;
    return ZIMIN_OK;
  });
}

zimin_status zimin_zimin_order(zimin_context* ctx, const char* word, unsigned* out) {
  return guarded(ctx, [&] {
    if (!word || !out) fail(Errc::invalid_argument, "null argument");
    *out = zimin_order(Word::parse(word, ctx->alphabet).letters());
    return ZIMIN_OK;
  });
}

zimin_status zimin_f_value(zimin_context* ctx, unsigned n, unsigned q, uint64_t* out) {
  return guarded(ctx, [&] {
    if (!out) fail(Errc::invalid_argument, "null argument");
    SearchConfig cfg;
    cfg.node_budget = ctx->node_budget;
    cfg.threads = ctx->threads;
    auto r = compute_f(n, q, cfg);
    if (r.f_value) {
      *out = *r.f_value;
      return ZIMIN_OK;
    }
    *out = r.deepest_avoider + 1;
    ctx->last_error = "node budget exhausted; value is a lower bound";
    return ZIMIN_E_BUDGET;
  });
}

}  // extern "C"
