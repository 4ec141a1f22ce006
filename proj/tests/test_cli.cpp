#include <doctest.h>

#include <berkpatch.h>

#include <json.hpp>

#include <fstream>
#include <string>

using Json = nlohmann::json;

namespace {

struct Session {
    bp_session* s{bp_session_new()};
    ~Session() { bp_session_free(s); }
};

struct Result {
    int code{0};
    std::string body;
};

Result run(bp_session* s, const char* cmd, const std::string& req, const std::string& opts = "") {
    char* out = nullptr;
    int code = bp_run(s, cmd, req.c_str(), opts.empty() ? nullptr : opts.c_str(), &out);
    Result r{code, out ? out : ""};
    bp_string_free(out);
    return r;
}

const char* kCircleRequest =
    R"({"kind":"series","p":5,"element":{"tag":{"r":{"kind":"pos","a":"0","b":"1"},"mode":"circle"},)"
    R"("coeffs":{"-2":"25","0":"3","3":"1/5"}}})";

} // namespace

TEST_CASE("the worked circle norm comes back exactly") {
    Session ses;
    REQUIRE(ses.s);
    Result r = run(ses.s, "norm-eval", kCircleRequest);
    REQUIRE(r.code == 0);
    Json body = Json::parse(r.body);
    CHECK(body["status"] == "ok");
    CHECK(body["norm"] == Json{{"kind", "pos"}, {"a", "2"}, {"b", "-2"}});
    CHECK(std::string(bp_last_error(ses.s)).empty());
}

TEST_CASE("return codes follow the process contract") {
    Session ses;
    REQUIRE(ses.s);

    CHECK(run(ses.s, "no-such-command", "{}").code == 2);
    CHECK_FALSE(std::string(bp_last_error(ses.s)).empty());

    CHECK(run(ses.s, "norm-eval", "{not json").code == 3);
    CHECK(run(ses.s, "norm-eval", "{}").code == 3);             // missing kind
    CHECK(run(ses.s, "norm-eval", R"({"kind":"poly"})").code == 3);
    CHECK(run(ses.s, "norm-eval", R"({"kind":"series","p":6,"element":{}})").code == 3); // p not prime

    // Poles at unequal pairwise distance: schema fine, mathematics refuses.
    Result math = run(ses.s, "norm-eval",
                      R"({"kind":"shape","p":5,"r":{"kind":"pos","a":"1","b":"0"},)"
                      R"("poles":["0","1"],"taylor":["1"]})");
    CHECK(math.code == 4);
    Json body = Json::parse(math.body);
    CHECK((body["status"] == "error" || body["status"] == "fail"));

    // API misuse stays negative and never touches *out.
    char* out = reinterpret_cast<char*>(&ses);
    CHECK(bp_run(nullptr, "norm-eval", "{}", nullptr, &out) == -1);
    CHECK(bp_run(ses.s, "norm-eval", "{}", nullptr, nullptr) == -1);
}

TEST_CASE("responses are byte-identical for a fixed request and seed") {
    Session ses;
    REQUIRE(ses.s);
    const std::string req =
        R"({"roots":[{"c":"0","k":0,"mult":1},{"c":"1","k":1,"mult":1}],)"
        R"("base":{"t":{"kind":"pos","a":"0","b":"1"}},"r":{"kind":"pos","a":"0","b":"4"},)"
        R"("fibers":3})";
    const std::string opts = R"({"seed":811,"samples":40})";
    Result a = run(ses.s, "thicken-check", req, opts);
    Result b = run(ses.s, "thicken-check", req, opts);
    REQUIRE(a.code == 0);
    CHECK(a.code == b.code);
    CHECK(a.body == b.body);
    Json body = Json::parse(a.body);
    CHECK(body["report"]["pass"] == true);
    CHECK(body["status"] == "ok");
}

TEST_CASE("canonical domains survive a round trip through the interface") {
    Session ses;
    REQUIRE(ses.s);
    Result canon = run(ses.s, "domain-op",
                       R"({"op":"canonical","boundary":[{"center":"0","radius":{"kind":"pos","a":"0","b":"1"}}],)"
                       R"("witness":{"center":"0"}})");
    REQUIRE(canon.code == 0);
    Json made = Json::parse(canon.body);

    Json member_req{{"op", "member"}, {"u", made["domain"]}, {"point", Json{{"center", "0"}}}};
    Result inside = run(ses.s, "domain-op", member_req.dump());
    REQUIRE(inside.code == 0);
    CHECK(Json::parse(inside.body)["member"] == true);

    Json outside_req{{"op", "member"}, {"u", made["domain"]}, {"point", Json{{"infinity", true}}}};
    Result outside = run(ses.s, "domain-op", outside_req.dump());
    REQUIRE(outside.code == 0);
    CHECK(Json::parse(outside.body)["member"] == false);
}

TEST_CASE("dot output draws pieces and intersection points") {
    Session ses;
    REQUIRE(ses.s);
    const std::string req =
        R"({"points":[{"center":"0","radius":{"kind":"pos","a":"0","b":"1"}},)"
        R"({"center":"0","radius":{"kind":"pos","a":"0","b":"2"}}]})";
    Result dot = run(ses.s, "cover-dot", req, R"({"format":"dot"})");
    REQUIRE(dot.code == 0);
    auto count = [&](const std::string& needle) {
        size_t hits = 0;
        for (size_t at = dot.body.find(needle); at != std::string::npos;
             at = dot.body.find(needle, at + 1))
            ++hits;
        return hits;
    };
    CHECK(count("[label=\"piece") == 3);
    CHECK(count("shape=ellipse") == 2);
    CHECK(count(" -- ") == 4);

    // The dot format belongs to cover-dot alone.
    CHECK(run(ses.s, "point-classify", R"({"point":{"center":"0"}})", R"({"format":"dot"})").code == 3);
}

TEST_CASE("a full factorization round trip with a convergence plot") {
    Session ses;
    REQUIRE(ses.s);
    Json target{{"n", 1},
                {"entries",
                 Json::array({Json::array(
                     {Json{{"tag", Json{{"r", Json{{"kind", "pos"}, {"a", "0"}, {"b", "1"}}},
                                        {"mode", "circle"}}},
                           {"coeffs", Json{{"0", "25"}, {"-1", "625"}}}}})})}};
    Json req{{"ring", Json{{"kind", "laurent"}, {"r", Json{{"kind", "pos"}, {"a", "0"}, {"b", "1"}}}}},
             {"target", target},
             {"plot", "cli_plot_test.svg"}};
    Result r = run(ses.s, "patch-factor", req.dump());
    REQUIRE(r.code == 0);
    Json body = Json::parse(r.body);
    CHECK(body["status"] == "ok");
    CHECK(body["verified"] == true);
    REQUIRE(body["certificate"]["steps"].is_array());
    CHECK(!body["certificate"]["steps"].empty());
    for (const Json& step : body["certificate"]["steps"]) {
        CHECK(step["cond1"] == true);
        CHECK(step["cond2"] == true);
        CHECK(step["cond3"] == true);
    }

    std::ifstream plot("cli_plot_test.svg");
    REQUIRE(plot.good());
    std::string svg((std::istreambuf_iterator<char>(plot)), std::istreambuf_iterator<char>());
    CHECK(svg.find("<svg") != std::string::npos);

    // The verifier works on full matrices: an exact product passes, a broken one
    // comes back as a mathematical failure with the residual in the body.
    auto entry = [](Json coeffs) {
        return Json{{"tag", Json{{"r", Json{{"kind", "pos"}, {"a", "0"}, {"b", "1"}}},
                                {"mode", "circle"}}},
                    {"coeffs", std::move(coeffs)}};
    };
    auto one_by_one = [&](Json coeffs) {
        return Json{{"n", 1}, {"entries", Json::array({Json::array({entry(std::move(coeffs))})})}};
    };
    Json good{{"g", one_by_one(Json{{"0", "1"}, {"1", "1"}})},
              {"g1", one_by_one(Json{{"0", "1"}, {"1", "1"}})},
              {"g2", one_by_one(Json{{"0", "1"}})}};
    Result v = run(ses.s, "patch-verify", good.dump());
    REQUIRE(v.code == 0);
    Json vb = Json::parse(v.body);
    CHECK(vb["verified"] == true);
    CHECK(vb["residual"] == Json{{"kind", "zero"}});

    Json bad = good;
    bad["g"] = one_by_one(Json{{"0", "2"}});
    Result w = run(ses.s, "patch-verify", bad.dump());
    CHECK(w.code == 4);
    CHECK(Json::parse(w.body)["verified"] == false);
}
