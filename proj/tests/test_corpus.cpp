#include <doctest.h>

#include "doitk/corpus.hpp"
#include "doitk/error.hpp"

using namespace doitk;
using namespace doitk::corpus;

TEST_CASE("load_messages: one well-formed JSONL record") {
  auto r = parse_messages(R"({"id":"1","sender":"u","recipient":"v","timestamp":10,"text":"hi"})", Format::jsonl);
  REQUIRE(r.messages.size() == 1);
  CHECK(r.messages[0] == Message{"1", "u", "v", 10, "hi"});
}

TEST_CASE("load_messages: self message skipped and counted") {
  auto r = parse_messages(R"({"id":"1","sender":"u","recipient":"u","timestamp":1,"text":"x"})", Format::jsonl);
  CHECK(r.messages.empty());
  CHECK(r.self_messages_skipped == 1);
}

TEST_CASE("load_messages: malformed line 2 is named, or skipped on request") {
  const std::string text =
      "{\"id\":\"1\",\"sender\":\"u\",\"recipient\":\"v\",\"timestamp\":1,\"text\":\"a\"}\n"
      "{\"id\":\"2\",\"sender\":\"u\"\n"
      "{\"id\":\"3\",\"sender\":\"v\",\"recipient\":\"u\",\"timestamp\":2,\"text\":\"b\"}\n";
  try {
    parse_messages(text, Format::jsonl);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  auto r = parse_messages(text, Format::jsonl, {true});
  CHECK(r.messages.size() == 2);
  CHECK(r.malformed_skipped == 1);
}

TEST_CASE("load_messages: duplicate ids rejected, integer ids accepted") {
  CHECK_THROWS_AS(parse_messages("{\"id\":1,\"sender\":\"u\",\"recipient\":\"v\",\"timestamp\":1,\"text\":\"a\"}\n"
                                 "{\"id\":\"1\",\"sender\":\"u\",\"recipient\":\"v\",\"timestamp\":2,\"text\":\"b\"}\n",
                                 Format::jsonl),
                  DataError);
}

TEST_CASE("load_messages: csv with quoted text preserves file order") {
  auto r = parse_messages("id,sender,recipient,timestamp,text\nb,u,v,5,\"hi, there\"\na,v,u,3,ok\n", Format::csv);
  REQUIRE(r.messages.size() == 2);
  CHECK(r.messages[0].id == "b");
  CHECK(r.messages[0].text == "hi, there");
  CHECK_THROWS_AS(parse_messages("id,from,to,timestamp,text\n", Format::csv), DataError);
}

TEST_CASE("to_jsonl round trips") {
  std::vector<Message> ms = {{"a", "u", "v", 1, "caf\xc3\xa9 \"q\"\n"}, {"b", "v", "u", 2, ""}};
  CHECK(parse_messages(to_jsonl(ms), Format::jsonl).messages == ms);
}

TEST_CASE("build_dyads") {
  SUBCASE("single dyad, both directions") {
    auto d = build_dyads({{"1", "u", "v", 1, ""}, {"2", "v", "u", 2, ""}});
    REQUIRE(d.dyads.size() == 1);
    CHECK(d.dyads[0].message_ids == std::vector<std::string>{"1", "2"});
  }
  SUBCASE("distinct pairs") {
    auto d = build_dyads({{"1", "u", "v", 1, ""}, {"2", "u", "w", 2, ""}});
    CHECK(d.dyads.size() == 2);
  }
  SUBCASE("timestamp ties broken by id") {
    auto d = build_dyads({{"b", "v", "u", 5, ""}, {"a", "u", "v", 5, ""}});
    CHECK(d.dyads[0].message_ids == std::vector<std::string>{"a", "b"});
  }
}

TEST_CASE("corpus_stats") {
  std::vector<Message> ms = {{"1", "u", "v", 1, "a b"}, {"2", "v", "u", 2, "a b c d"}, {"3", "u", "w", 3, "a"}};
  auto d = build_dyads(ms);
  auto s = corpus_stats(ms, d, [](std::string_view t) {
    std::size_t n = 1;
    for (char c : t) n += c == ' ';
    return n;
  });
  CHECK(s.user_count == 3);
  CHECK(s.dyad_count == 2);
  CHECK(s.message_count == 3);
  CHECK(s.conv_len_mean == doctest::Approx(1.5));
  CHECK(s.conv_len_median == doctest::Approx(1.5));
  CHECK(s.msg_len_mean == doctest::Approx(7.0 / 3.0));
  CHECK(s.msg_len_median == doctest::Approx(2.0));
  CHECK_THROWS_AS(corpus_stats({}, {}, [](std::string_view) { return std::size_t{0}; }), DataError);
}
