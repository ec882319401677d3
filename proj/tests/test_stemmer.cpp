#include <doctest.h>

#include "doitk/io.hpp"
#include "doitk/stemmer.hpp"

using namespace doitk;

namespace {

void check_golden(const char* file, stem::Language lang) {
  const auto lines = io::split(io::read_file(std::string(DOITK_TEST_DATA) + "/" + file), '\n');
  std::size_t checked = 0, wrong = 0;
  for (const auto& l : lines) {
    if (l.empty()) continue;
    auto f = io::split(l, '\t');
    REQUIRE(f.size() == 2);
    const auto got = stem::stem(f[0], lang);
    if (got != f[1]) {
      ++wrong;
      if (wrong <= 10) MESSAGE(f[0] << " -> " << got << " expected " << f[1]);
    }
    ++checked;
  }
  CHECK(checked > 1000);
  CHECK(wrong == 0);
}

}  // namespace

TEST_CASE("english stemmer matches golden fixture") { check_golden("stem_golden_en.tsv", stem::Language::english); }
TEST_CASE("italian stemmer matches golden fixture") { check_golden("stem_golden_it.tsv", stem::Language::italian); }

TEST_CASE("stemmer spot values") {
  CHECK(stem::porter("caresses") == "caress");
  CHECK(stem::porter("relational") == "relat");
  CHECK(stem::porter("readers") == "reader");
  CHECK(stem::italian("abbandonata") == "abbandon");
  CHECK(stem::parse_language("it") == stem::Language::italian);
  CHECK_FALSE(stem::parse_language("klingon").has_value());
}
