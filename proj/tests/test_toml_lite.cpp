#include "sdice/toml_lite.hpp"

#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"

using namespace sdice;

namespace {

// Message of the exception thrown by f, or "" if nothing threw.
template <typename F>
std::string thrown_message(F&& f) {
    try {
        f();
    } catch (const std::exception& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("sections, dotted keys and comments flatten to dotted paths") {
    const TomlTable t = TomlTable::parse(R"(# scenario
name = "base"        # trailing comment
[rates]
kind = "hull_white"
sigma = 0.003
calibrate = true
[policy.adam]
max_iterations = 150
[outputs]
gamma_years = [10, 20, 50]
labels = ["a", "b"]
)");
    CHECK(t.string_at("name") == "base");
    CHECK(t.string_at("rates.kind") == "hull_white");
    CHECK(t.number_at("rates.sigma") == doctest::Approx(0.003).epsilon(1e-15));
    CHECK(t.bool_at("rates.calibrate"));
    CHECK(t.number_at("policy.adam.max_iterations") == 150.0);
    CHECK(t.numbers_at("outputs.gamma_years") == std::vector<double>{10.0, 20.0, 50.0});
    CHECK(t.at("outputs.labels").items[1].str == "b");
    CHECK(t.has("rates.sigma"));
    CHECK(!t.has("rates.rate"));
}

TEST_CASE("string escapes and number formats round-trip") {
    const TomlTable t = TomlTable::parse(R"(
quote = "say \"hi\""
slash = "a\\b"
sci = 1.5e-3
neg = -42
plain = 0.25
)");
    CHECK(t.string_at("quote") == "say \"hi\"");
    CHECK(t.string_at("slash") == "a\\b");
    CHECK(t.number_at("sci") == doctest::Approx(0.0015).epsilon(1e-15));
    CHECK(t.number_at("neg") == -42.0);
    CHECK(t.number_at("plain") == 0.25);
}

TEST_CASE("fallback reads only apply when the key is absent") {
    const TomlTable t = TomlTable::parse("x = 2\ns = \"v\"\nb = false\n");
    CHECK(t.number_or("x", 9.0) == 2.0);
    CHECK(t.number_or("missing", 9.0) == 9.0);
    CHECK(t.string_or("s", "d") == "v");
    CHECK(t.string_or("missing", "d") == "d");
    CHECK(!t.bool_or("b", true));
    CHECK(t.bool_or("missing", true));
}

TEST_CASE("type mismatches throw with the key path") {
    const TomlTable t = TomlTable::parse("s = \"text\"\nn = 3\n");
    CHECK_THROWS_AS(t.number_at("s"), std::runtime_error);
    CHECK_THROWS_AS(t.string_at("n"), std::runtime_error);
    CHECK_THROWS_AS(t.bool_at("n"), std::runtime_error);
    CHECK_THROWS_AS(t.numbers_at("s"), std::runtime_error);
    // A scalar number reads as a one-element list.
    CHECK(t.numbers_at("n") == std::vector<double>{3.0});
    CHECK(thrown_message([&] { t.number_at("s"); }).find("s") != std::string::npos);
    CHECK_THROWS_AS(t.at("absent"), std::runtime_error);
}

TEST_CASE("syntax errors carry origin and line number") {
    const std::string msg =
        thrown_message([] { TomlTable::parse("ok = 1\nbroken line\n", "deck.toml"); });
    CHECK(msg.find("deck.toml") != std::string::npos);
    CHECK(msg.find("2") != std::string::npos);

    CHECK_THROWS_AS(TomlTable::parse("x = \"unterminated\n"), std::runtime_error);
    CHECK_THROWS_AS(TomlTable::parse("x = [1, 2\n"), std::runtime_error);
    CHECK_THROWS_AS(TomlTable::parse("[unclosed\nx = 1\n"), std::runtime_error);
    CHECK_THROWS_AS(TomlTable::parse("x = nonsense\n"), std::runtime_error);
    CHECK_THROWS_AS(TomlTable::parse("x = 1 garbage\n"), std::runtime_error);
    CHECK_THROWS_AS(TomlTable::parse_file("/nonexistent/deck.toml"), std::runtime_error);
}

TEST_CASE("duplicate keys are rejected across section spellings") {
    CHECK_THROWS_AS(TomlTable::parse("a = 1\na = 2\n"), std::runtime_error);
    // The same path reached via a section header and a dotted key collides.
    CHECK_THROWS_AS(TomlTable::parse("[rates]\nsigma = 1\n[rates]\nsigma = 2\n"),
                    std::runtime_error);
    CHECK_THROWS_AS(TomlTable::parse("rates.sigma = 1\n[rates]\nsigma = 2\n"),
                    std::runtime_error);
}

TEST_CASE("set() overrides accept file-syntax literals") {
    TomlTable t = TomlTable::parse("[rates]\nsigma = 0.001\n");
    t.set("rates.sigma", "0.004");  // replace
    CHECK(t.number_at("rates.sigma") == 0.004);
    t.set("monte_carlo.paths", "512");  // introduce
    CHECK(t.number_at("monte_carlo.paths") == 512.0);
    t.set("rates.kind", "\"hull_white\"");
    CHECK(t.string_at("rates.kind") == "hull_white");
    t.set("outputs.pathways", "false");
    CHECK(!t.bool_at("outputs.pathways"));
    CHECK_THROWS_AS(t.set("rates.sigma", "not a number"), std::runtime_error);
    CHECK_THROWS_AS(t.set("rates.sigma", ""), std::runtime_error);
}

TEST_CASE("entries() exposes keys in sorted order") {
    const TomlTable t = TomlTable::parse("b = 1\na = 2\n[c]\nd = 3\n");
    std::vector<std::string> keys;
    for (const auto& [k, v] : t.entries()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"a", "b", "c.d"});
}
