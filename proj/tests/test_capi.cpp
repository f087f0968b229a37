#include <doctest.h>
#include <json.hpp>

#include <string>

#include "zimin/zimin.h"

using nlohmann::json;

namespace {

struct Ctx {
  zimin_context* c = nullptr;
  Ctx() { REQUIRE(zimin_context_new(&c) == ZIMIN_OK); }
  ~Ctx() { zimin_context_free(c); }

  zimin_status call(const char* op, const json& params, json* out = nullptr, bool* partial = nullptr) {
    zimin_result* r = nullptr;
    zimin_status s = zimin_call(c, op, params.dump().c_str(), &r);
    if (s == ZIMIN_OK) {
      if (out) *out = json::parse(zimin_result_json(r));
      if (partial) *partial = zimin_result_partial(r) != 0;
      zimin_result_free(r);
    } else {
      CHECK(r == nullptr);
    }
    return s;
  }
};

}  // namespace

TEST_CASE("C API: typed helpers") {
  Ctx ctx;
  int yes = -1;
  CHECK(zimin_encounters(ctx.c, "xx", "banana", &yes) == ZIMIN_OK);
  CHECK(yes == 1);
  CHECK(zimin_encounters(ctx.c, "aba", "0011", &yes) == ZIMIN_OK);
  CHECK(yes == 0);
  CHECK(zimin_is_instance(ctx.c, "aba", "1111", &yes) == ZIMIN_OK);
  CHECK(yes == 1);
  unsigned order = 0;
  CHECK(zimin_zimin_order(ctx.c, "111111111111111", &order) == ZIMIN_OK);
  CHECK(order == 4);
  std::uint64_t f = 0;
  CHECK(zimin_f_value(ctx.c, 2, 3, &f) == ZIMIN_OK);
  CHECK(f == 7);
}

TEST_CASE("C API: errors") {
  Ctx ctx;
  json out;
  CHECK(ctx.call("no_such_op", json::object()) == ZIMIN_E_UNKNOWN_OP);
  CHECK(std::string(zimin_context_last_error(ctx.c)).find("no_such_op") != std::string::npos);
  zimin_result* r = nullptr;
  CHECK(zimin_call(ctx.c, "f", "{not json", &r) == ZIMIN_E_PARSE);
  CHECK(ctx.call("f", {{"q", 2}}) == ZIMIN_E_INVALID_ARGUMENT);
  CHECK(ctx.call("density", {{"pattern", "a"}, {"word", ""}}) == ZIMIN_E_EMPTY_WORD);
  CHECK(ctx.call("density", {{"pattern", "a"}, {"word", "01#"}}) == ZIMIN_E_PARSE);
  CHECK(ctx.call("akal", {{"k", 1}, {"l", 2}, {"d_k", "1/4"}, {"d_l", "1/2"}, {"r", 1}}) == ZIMIN_E_REGION);
  CHECK(ctx.call("iv_upper", {{"q", 2}, {"multiplicities", {2, 2}}}) == ZIMIN_E_HYPOTHESIS);
  CHECK(zimin_call(nullptr, "f", "{}", &r) == ZIMIN_E_INVALID_ARGUMENT);
  CHECK(zimin_context_set_node_budget(ctx.c, 0) == ZIMIN_E_INVALID_ARGUMENT);
  CHECK(std::string(zimin_status_name(ZIMIN_E_BUDGET)) == "budget_exhausted");
  CHECK(ctx.call("f", {{"n", 2}, {"q", 2}}, &out) == ZIMIN_OK);
  CHECK(std::string(zimin_context_last_error(ctx.c)).empty());
}

TEST_CASE("C API: budgets") {
  Ctx ctx;
  REQUIRE(zimin_context_set_node_budget(ctx.c, 100) == ZIMIN_OK);
  std::uint64_t f = 0;
  CHECK(zimin_f_value(ctx.c, 3, 2, &f) == ZIMIN_E_BUDGET);
  CHECK(f >= 2);
  CHECK(f <= 29);
  json out;
  bool partial = false;
  CHECK(ctx.call("f", {{"n", 3}, {"q", 2}}, &out, &partial) == ZIMIN_OK);
  CHECK(partial);
  CHECK(out["f"].is_null());
  CHECK(out["budget_exhausted"] == true);
}

TEST_CASE("C API: operations") {
  Ctx ctx;
  auto ops = json::parse(zimin_operations());
  CHECK(ops.size() >= 30);
  json out;
  REQUIRE(ctx.call("f", {{"n", 2}, {"q", 2}}, &out) == ZIMIN_OK);
  CHECK(out["f"] == 5);
  REQUIRE(ctx.call("avoiders", {{"n", 2}, {"q", 2}, {"all", true}}, &out) == ZIMIN_OK);
  CHECK(out["count"] == 13);
  REQUIRE(ctx.call("minimal", {{"n", 2}, {"q", 2}}, &out) == ZIMIN_OK);
  CHECK(out["count"] == 6);
  REQUIRE(ctx.call("bounds", {{"n", 4}, {"q", 2}}, &out) == ZIMIN_OK);
  CHECK(out["rs_chain_upper"] == 236489);
  REQUIRE(ctx.call("density", {{"pattern", "xx"}, {"word", "banana"}}, &out) == ZIMIN_OK);
  CHECK(out["value"]["num"] == "2");
  CHECK(out["value"]["den"] == "21");
  REQUIRE(ctx.call("iz2", {{"q", 2}, {"tol", "1e-9"}}, &out) == ZIMIN_OK);
  CHECK(out["decimal"] == "0.7322132");
  REQUIRE(ctx.call("sequence", {{"kind", "b"}, {"q", 2}, {"l", 1}, {"max_m", 9}}, &out) == ZIMIN_OK);
  CHECK(out["values"][9]["value"] == 100);
  REQUIRE(ctx.call("debruijn_verify", {{"candidate", 2}}, &out) == ZIMIN_OK);
  CHECK(out["d_lower"]["num"] == "1");
  CHECK(out["d_lower"]["den"] == "28");
  REQUIRE(ctx.call("verify", {{"n", 4}, {"words", {"111111111111111", "0110"}}}, &out) == ZIMIN_OK);
  CHECK(out["results"][0]["avoids"] == false);
  CHECK(out["results"][0]["end"] == 15);
  CHECK(out["results"][1]["avoids"] == true);
  REQUIRE(ctx.call("unavoidable", {{"pattern", "abcba"}}, &out) == ZIMIN_OK);
  CHECK(out["unavoidable"] == true);
  REQUIRE(ctx.call("table", {{"name", "fn2"}, {"max_n", 2}}, &out) == ZIMIN_OK);
  CHECK(out["rows"][1]["f"] == 5);
}

TEST_CASE("C API: alphabet") {
  Ctx ctx;
  REQUIRE(zimin_context_set_alphabet(ctx.c, "ab") == ZIMIN_OK);
  json out;
  REQUIRE(ctx.call("avoiders", {{"n", 2}, {"q", 2}}, &out) == ZIMIN_OK);
  for (const auto& w : out["words"]) CHECK(w.get<std::string>().find_first_not_of("ab") == std::string::npos);
}
