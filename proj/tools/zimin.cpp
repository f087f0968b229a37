#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "zimin/zimin.h"

using json = nlohmann::ordered_json;

namespace {

enum class Format { text, json, csv };

struct Globals {
  std::string format = "text";
  std::string alphabet;
  std::uint64_t node_budget = 1'000'000'000;
  std::uint64_t enum_budget = std::uint64_t{1} << 24;
  unsigned threads = 0;
  std::string out;
};

struct CallError {
  zimin_status status;
  std::string message;
};

class Session {
 public:
  explicit Session(const Globals& g) {
    zimin_context* raw = nullptr;
    if (zimin_context_new(&raw) != ZIMIN_OK) throw CallError{ZIMIN_E_INTERNAL, "cannot create context"};
    ctx_.reset(raw);
    check(zimin_context_set_threads(ctx_.get(), g.threads));
    check(zimin_context_set_node_budget(ctx_.get(), g.node_budget));
    check(zimin_context_set_enum_budget(ctx_.get(), g.enum_budget));
    if (!g.alphabet.empty()) check(zimin_context_set_alphabet(ctx_.get(), g.alphabet.c_str()));
  }

  json call(const std::string& op, const json& params) {
    zimin_result* raw = nullptr;
    check(zimin_call(ctx_.get(), op.c_str(), params.dump().c_str(), &raw));
    std::unique_ptr<zimin_result, decltype(&zimin_result_free)> r(raw, zimin_result_free);
    if (zimin_result_partial(r.get())) partial = true;
    return json::parse(zimin_result_json(r.get()));
  }

  bool partial = false;

 private:
  void check(zimin_status s) {
    if (s != ZIMIN_OK) throw CallError{s, zimin_context_last_error(ctx_.get())};
  }
  std::unique_ptr<zimin_context, decltype(&zimin_context_free)> ctx_{nullptr, zimin_context_free};
};

bool is_rational(const json& j) { return j.is_object() && j.contains("num") && j.contains("den"); }

std::string rational_text(const json& r) {
  std::string s = r["num"].get<std::string>();
  if (r["den"] != "1") s += "/" + r["den"].get<std::string>();
  if (s.size() > 40) return r["sci"].get<std::string>();
  return s + "  (" + r["sci"].get<std::string>() + ")";
}

std::string scalar_text(const json& v) {
  if (v.is_null()) return "-";
  if (is_rational(v)) return rational_text(v);
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void print_tree(std::ostream& os, const json& v, const std::string& indent = "") {
  for (auto it = v.begin(); it != v.end(); ++it) {
    const json& x = it.value();
    if (x.is_object() && !is_rational(x)) {
      os << indent << it.key() << ":\n";
      print_tree(os, x, indent + "  ");
    } else if (x.is_array() && !x.empty() && (x[0].is_object() || x[0].is_array()) && !is_rational(x[0])) {
      os << indent << it.key() << ":\n";
      for (const auto& e : x) {
        if (e.is_object()) {
          os << indent << "  -\n";
          print_tree(os, e, indent + "    ");
        } else {
          os << indent << "  - " << e.dump() << "\n";
        }
      }
    } else if (x.is_array()) {
      os << indent << it.key() << ":";
      for (const auto& e : x) os << " " << (is_rational(e) ? e["sci"].get<std::string>() : scalar_text(e));
      os << "\n";
    } else if (x.is_string() && x.get<std::string>().find('\n') != std::string::npos) {
      os << indent << it.key() << ":\n" << x.get<std::string>();
    } else {
      os << indent << it.key() << ": " << scalar_text(x) << "\n";
    }
  }
}

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (is_rational(v)) return v["num"].get<std::string>() + "/" + v["den"].get<std::string>();
  if (v.is_string()) {
    auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  return v.dump();
}

void flatten(const json& v, const std::string& prefix, std::vector<std::pair<std::string, json>>& out) {
  if (v.is_object() && !is_rational(v)) {
    for (auto it = v.begin(); it != v.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (v.is_array()) {
    out.emplace_back(prefix, v.dump());
  } else {
    out.emplace_back(prefix, v);
  }
}

void print_csv_rows(std::ostream& os, const json& rows) {
  if (rows.empty()) return;
  std::vector<std::pair<std::string, json>> head;
  flatten(rows[0], "", head);
  for (std::size_t i = 0; i < head.size(); ++i) os << (i ? "," : "") << head[i].first;
  os << "\n";
  for (const auto& row : rows) {
    std::vector<std::pair<std::string, json>> cells;
    flatten(row, "", cells);
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_cell(cells[i].second);
    os << "\n";
  }
}

void print_csv_object(std::ostream& os, const json& v) {
  std::vector<std::pair<std::string, json>> cells;
  flatten(v, "", cells);
  os << "key,value\n";
  for (const auto& [k, x] : cells) os << k << "," << csv_cell(x) << "\n";
}

class Output {
 public:
  Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw CallError{ZIMIN_E_IO, "cannot open '" + path + "' for writing"};
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void emit(const json& v, Format fmt, std::ostream& os, const std::function<void(std::ostream&)>& text = {}) {
  switch (fmt) {
    case Format::json:
      os << v.dump(2) << "\n";
      break;
    case Format::csv:
      if (v.contains("rows")) print_csv_rows(os, v["rows"]);
      else if (v.contains("values")) print_csv_rows(os, v["values"]);
      else print_csv_object(os, v);
      break;
    case Format::text:
      if (text) text(os);
      else print_tree(os, v);
      break;
  }
}

void print_enclosure(std::ostream& os, const json& e) {
  if (!e["decimal"].is_null()) os << e["decimal"].get<std::string>() << "\n";
  os << "lower " << e["lower_decimal"].get<std::string>() << "\nupper " << e["upper_decimal"].get<std::string>()
     << "\nwidth " << e["width"].get<std::string>() << "\n";
}

void print_words(std::ostream& os, const json& words) {
  for (const auto& w : words) os << w.get<std::string>() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zimin word avoidance, densities and instance probabilities"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--alphabet", g.alphabet, "Symbols for letter codes 0,1,2,...");
  app.add_option("--node-budget", g.node_budget, "Search node budget")->check(CLI::PositiveNumber);
  app.add_option("--enum-budget", g.enum_budget, "Enumeration budget (words)")->check(CLI::PositiveNumber);
  app.add_option("--threads", g.threads, "Worker threads (0: ZIMIN_THREADS or hardware)");
  app.add_option("--out", g.out, "Write output to this file");

  // Each subcommand fills `op` and `params`, optionally a text renderer.
  std::string op;
  json params = json::object();
  std::function<void(std::ostream&, const json&)> text;

  unsigned n = 0, q = 2;
  auto nq = [&](CLI::App* s, bool need_n = true) {
    auto* o = s->add_option("--n", n, "Zimin order");
    if (need_n) o->required();
    s->add_option("--q", q, "Alphabet size")->capture_default_str();
  };

  auto* f = app.add_subcommand("f", "Compute f(n,q) by exhaustive search");
  nq(f);
  f->callback([&] {
    op = "f";
    params = {{"n", n}, {"q", q}};
    text = [](std::ostream& os, const json& r) {
      if (!r["f"].is_null()) os << r["f"] << "\n";
      else os << "f >= " << r["f_lower_bound"] << " (budget exhausted after " << r["nodes_explored"] << " nodes)\n";
    };
  });

  bool all = false;
  auto* av = app.add_subcommand("avoiders", "List Z_n-avoiding words (default: the longest ones)");
  nq(av);
  av->add_flag("--all", all, "Every avoiding word, not only those of length f-1");
  av->callback([&] {
    op = "avoiders";
    params = {{"n", n}, {"q", q}, {"all", all}};
    text = [](std::ostream& os, const json& r) { print_words(os, r["words"]); };
  });

  std::size_t target = 0;
  std::string strategy = "greedy";
  std::uint64_t seed = 1;
  auto* la = app.add_subcommand("longavoider", "Search for one long Z_n-avoider");
  nq(la);
  la->add_option("--target", target, "Length to reach")->required();
  la->add_option("--strategy", strategy)->check(CLI::IsMember({"greedy", "restart_backtrack"}));
  la->add_option("--seed", seed);
  la->callback([&] {
    op = "long_avoider";
    params = {{"n", n}, {"q", q}, {"target", target}, {"strategy", strategy}, {"seed", seed}};
    text = [](std::ostream& os, const json& r) {
      if (r["found"]) os << r["word"].get<std::string>() << "\n";
      else os << "not found within budget\n";
    };
  });

  std::size_t max_len = 0;
  bool count_only = false;
  auto* mi = app.add_subcommand("minimal", "Enumerate minimal Z_n-instances");
  nq(mi);
  mi->add_option("--max-len", max_len, "Length cap (default: f(n,q) when known)");
  mi->add_flag("--count-only", count_only);
  mi->callback([&] {
    op = "minimal";
    params = {{"n", n}, {"q", q}, {"max_len", max_len}, {"keep_words", !count_only}};
    text = [](std::ostream& os, const json& r) {
      if (r.contains("words")) print_words(os, r["words"]);
      os << "count " << scalar_text(r["count"]) << "\n";
    };
  });

  std::string f_prev, m_prev;
  auto* bo = app.add_subcommand("bounds", "Evaluate the upper and lower bounds on f(n,q)");
  nq(bo);
  bo->add_option("--f-prev", f_prev, "f(n-1,q) if not built in");
  bo->add_option("--m-prev", m_prev, "m(n-1,q) if not built in");
  bo->callback([&] {
    op = "bounds";
    params = {{"n", n}, {"q", q}};
    if (!f_prev.empty()) params["f_prev"] = f_prev;
    if (!m_prev.empty()) params["m_prev"] = m_prev;
  });

  std::string mode = "instance", pattern, word, factor;
  std::size_t length = 0, samples = 200;
  unsigned k = 0, l = 0, r = 1;
  std::string d_k, d_l;
  auto* de = app.add_subcommand("density", "Instance and factor densities and the liminf bounds");
  de->add_option("--mode", mode)->check(CLI::IsMember(
      {"instance", "factor", "probability", "monte-carlo", "liminf", "extremal", "akal", "doubled"}));
  de->add_option("--pattern", pattern);
  de->add_option("--word", word);
  de->add_option("--factor", factor);
  de->add_option("--length", length, "Word length for probability / monte-carlo / doubled");
  de->add_option("--samples", samples);
  de->add_option("--seed", seed);
  de->add_option("--n", n);
  de->add_option("--q", q);
  de->add_option("--k", k);
  de->add_option("--l", l);
  de->add_option("--r", r);
  de->add_option("--d-k", d_k);
  de->add_option("--d-l", d_l);
  de->add_option("--f-prev", f_prev);
  de->add_option("--m-prev", m_prev);
  de->callback([&] {
    if (mode == "instance") {
      op = "density";
      params = {{"pattern", pattern}, {"word", word}};
    } else if (mode == "factor") {
      op = "factor_density";
      params = {{"factor", factor}, {"word", word}};
    } else if (mode == "probability") {
      op = "instance_probability";
      params = {{"pattern", pattern}, {"q", q}, {"n", length}};
    } else if (mode == "monte-carlo") {
      op = "monte_carlo";
      params = {{"pattern", pattern}, {"q", q}, {"n", length}, {"samples", samples}, {"seed", seed}};
    } else if (mode == "liminf") {
      op = "liminf";
      params = {{"n", n}, {"q", q}};
      if (!f_prev.empty()) params["f_prev"] = f_prev;
      if (!m_prev.empty()) params["m_prev"] = m_prev;
    } else if (mode == "extremal") {
      op = "extremal";
      params = {{"q", q}, {"k", k}};
    } else if (mode == "akal") {
      op = "akal";
      params = {{"k", k}, {"l", l}, {"d_k", d_k}, {"d_l", d_l}, {"r", r}};
    } else {
      op = "doubled_table";
      params = {{"pattern", pattern}, {"q", q}, {"max_n", length}};
    }
  });

  auto* sc = app.add_subcommand("scatter", "Z_2 versus Z_3 density pairs over all words of one length");
  sc->add_option("--q", q);
  sc->add_option("--n", length, "Word length")->required();
  sc->callback([&] {
    op = "scatter";
    params = {{"q", q}, {"n", length}};
    text = [](std::ostream& os, const json& r) { os << r["csv"].get<std::string>(); };
  });

  bool check = false;
  auto* ei = app.add_subcommand("ei", "Expected instance density of a pattern over [q]^n");
  ei->add_option("--pattern", pattern)->required();
  ei->add_option("--q", q);
  ei->add_option("--n", length, "Word length")->required();
  ei->add_flag("--check", check, "Also average the density over every word");
  ei->callback([&] {
    op = "expected_density";
    params = {{"pattern", pattern}, {"q", q}, {"n", length}, {"check", check}};
  });

  std::string tol = "1/10000000";
  unsigned digits = 7, big_n = 30, big_m = 5;
  auto* i2 = app.add_subcommand("iz2", "Enclosure of the limiting Z_2-instance probability");
  i2->add_option("--q", q);
  i2->add_option("--tol", tol, "Width target (rational or decimal)");
  i2->add_option("--digits", digits);
  i2->callback([&] {
    op = "iz2";
    params = {{"q", q}, {"tol", tol}, {"digits", digits}};
    text = [](std::ostream& os, const json& e) { print_enclosure(os, e); };
  });

  auto* i3 = app.add_subcommand("iz3", "Enclosure of the limiting Z_3-instance probability");
  i3->add_option("--q", q);
  i3->add_option("--N", big_n, "Bifix lengths summed exactly")->capture_default_str();
  i3->add_option("--M", big_m, "Alternating-series truncation")->capture_default_str();
  i3->callback([&] {
    op = "iz3";
    params = {{"q", q}, {"N", big_n}, {"M", big_m}, {"digits", 8}};
    text = [](std::ostream& os, const json& e) { print_enclosure(os, e); };
  });

  unsigned zn_n = 40;
  auto* iu = app.add_subcommand("izn-upper", "Upper bound on the limiting Z_n-instance probability");
  nq(iu);
  iu->add_option("--N", zn_n)->capture_default_str();
  iu->callback([&] {
    op = "izn_upper";
    params = {{"n", n}, {"q", q}, {"N", zn_n}};
  });

  std::vector<unsigned> mult;
  bool lower = false;
  auto* iv = app.add_subcommand("iv-upper", "Product upper bound (or the q^-||V|| lower bound)");
  nq(iv, false);
  iv->add_option("--pattern", pattern);
  iv->add_option("--mult", mult, "Letter multiplicities")->delimiter(',');
  iv->add_flag("--lower", lower, "Report the lower bound for a nondoubled pattern instead");
  iv->callback([&] {
    if (lower) {
      op = "nondoubled_lower";
      params = {{"pattern", pattern}, {"q", q}};
      return;
    }
    op = "iv_upper";
    params = {{"q", q}};
    if (!mult.empty()) params["multiplicities"] = mult;
    else if (!pattern.empty()) params["pattern"] = pattern;
    else params["n"] = n;
  });

  std::string kind = "a";
  std::size_t max_m = 16;
  auto* se = app.add_subcommand("sequences", "Bifix-free counting sequences a, b, c, d, bhat");
  se->add_option("--kind", kind)->check(CLI::IsMember({"a", "b", "c", "d", "bhat"}));
  se->add_option("--q", q);
  se->add_option("--l", l, "Bifix length");
  se->add_option("--max-m", max_m)->capture_default_str();
  se->callback([&] {
    op = "sequence";
    params = {{"kind", kind}, {"q", q}, {"l", l}, {"max_m", max_m}};
    text = [](std::ostream& os, const json& r) {
      for (const auto& v : r["values"]) os << v["index"] << " " << scalar_text(v["value"]) << "\n";
    };
  });

  unsigned db_k = 4, restarts = 64, candidate = 1, family = 2;
  std::uint64_t db_seed = 7;
  std::string instances = "minimal", p_text, period;
  auto* db = app.add_subcommand("debruijn", "de Bruijn heuristic for the Z_3 density");
  db->add_option("--k", db_k)->capture_default_str();
  db->add_option("--q", q);
  db->add_option("--instances", instances)->check(CLI::IsMember({"minimal", "bifix_free"}));
  db->add_option("--restarts", restarts)->capture_default_str();
  db->add_option("--seed", db_seed)->capture_default_str();
  auto* dv = db->add_subcommand("verify", "Exact stationary solution for one edge assignment");
  dv->add_option("--p", p_text, "Comma-separated probabilities; '-' leaves a node unconstrained");
  dv->add_option("--candidate", candidate, "Built-in assignment 1..3");
  auto* dfm = db->add_subcommand("family", "Node frequencies of a periodic word");
  dfm->add_option("--period", period, "e.g. (1101)^3(10)^2");
  dfm->add_option("--family", family, "Built-in period 2..3");
  db->callback([&] {
    json base = {{"k", db_k}, {"q", q}, {"instances", instances}};
    params = base;
    if (dv->parsed()) {
      op = "debruijn_verify";
      if (!p_text.empty()) params["p"] = p_text;
      else params["candidate"] = candidate;
    } else if (dfm->parsed()) {
      op = "debruijn_family";
      if (!period.empty()) params["period"] = period;
      else params["family"] = family;
    } else {
      op = "debruijn_minimize";
      params["restarts"] = restarts;
      params["seed"] = db_seed;
    }
  });

  std::string path;
  auto* ve = app.add_subcommand("verify", "Check each word of a file for a Z_n-encounter");
  ve->add_option("file", path)->required();
  ve->add_option("--n", n)->required();

  std::string table;
  auto* tb = app.add_subcommand("tables", "Regenerate a reference table");
  tb->add_option("--reproduce", table)->required()->check(CLI::IsMember({"fn2", "Z2Z3", "IZ3", "appendMD", "TREES"}));
  tb->callback([&] {
    op = "table";
    params = {{"name", table}};
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  Format fmt = g.format == "json" ? Format::json : g.format == "csv" ? Format::csv : Format::text;
  try {
    Session session(g);
    Output out(g.out);
    std::ostream& os = out.stream();

    if (ve->parsed()) {
      std::ifstream in(path);
      if (!in) throw CallError{ZIMIN_E_IO, "cannot read '" + path + "'"};
      json rows = json::array();
      std::string line;
      for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        json r;
        try {
          r = session.call("verify", {{"n", n}, {"words", {line}}})["results"][0];
        } catch (const CallError& e) {
          throw CallError{e.status, "line " + std::to_string(lineno) + ": " + e.message};
        }
        r["line"] = lineno;
        rows.push_back(r);
      }
      json report = {{"n", n}, {"rows", rows}};
      emit(report, fmt, os, [&](std::ostream& o) {
        for (const auto& r : rows) {
          if (r["avoids"]) o << r["word"].get<std::string>() << " AVOIDS\n";
          else
            o << r["word"].get<std::string>() << " ENCOUNTER (" << r["start"] << "," << r["end"] << ") "
              << r["factor"].get<std::string>() << "\n";
        }
      });
      return 0;
    }

    json result = session.call(op, params);
    if (fmt == Format::csv && op == "scatter") {
      os << result["csv"].get<std::string>();
    } else if (fmt == Format::csv && (op == "avoiders" || op == "minimal") && result.contains("words")) {
      os << "word\n";
      print_words(os, result["words"]);
    } else {
      emit(result, fmt, os, text ? std::function<void(std::ostream&)>([&](std::ostream& o) { text(o, result); })
                                 : std::function<void(std::ostream&)>{});
    }
    if (session.partial) {
      std::cerr << "zimin: budget exhausted; output is partial\n";
      return 2;
    }
    return 0;
  } catch (const CallError& e) {
    std::cerr << "zimin: " << zimin_status_name(e.status) << ": " << e.message << "\n";
    return e.status == ZIMIN_E_BUDGET ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "zimin: " << e.what() << "\n";
    return 1;
  }
}
