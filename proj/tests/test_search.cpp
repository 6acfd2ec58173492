#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "scfo/fixtures.hpp"
#include "scfo/search.hpp"

using namespace scfo;
using search::DeckMode;
using search::SearchConfig;
using search::SearchResult;

namespace {

SearchConfig committed(std::size_t cards) {
  SearchConfig cfg;
  cfg.cards = cards;
  cfg.deck = DeckMode::CommittedPair;
  return cfg;
}

SearchConfig free_deck(std::size_t cards, std::size_t constants) {
  SearchConfig cfg;
  cfg.cards = cards;
  cfg.deck = DeckMode::Free;
  cfg.allow_constants = constants > 0;
  cfg.constant_budget = constants;
  return cfg;
}

bool contains_up_to_rotation(const SearchResult& result, const Template& t) {
  const Template canon = search::canonical_template(t);
  for (const auto& p : result.protocols)
    if (search::canonical_template(p.tmpl) == canon) return true;
  return false;
}

void check_same_results(const SearchResult& a, const SearchResult& b) {
  REQUIRE(a.protocols.size() == b.protocols.size());
  for (std::size_t i = 0; i < a.protocols.size(); ++i) {
    CHECK(a.protocols[i].tmpl == b.protocols[i].tmpl);
    CHECK(a.protocols[i].rule == b.protocols[i].rule);
    CHECK(a.protocols[i].name == b.protocols[i].name);
  }
}

}  // namespace

TEST_CASE("check_template: the four-card parity template") {
  const auto protocol = search::check_template(fixtures::xor2_protocol().tmpl, fixtures::xor2());
  REQUIRE(protocol.has_value());
  CHECK(protocol->rule == fixtures::xor2_protocol().rule);
  CHECK(protocol->rule.entries()[0].necklace.representative.str() == "CHCH");
  CHECK(protocol->rule.entries()[1].necklace.representative.str() == "CCHH");
}

TEST_CASE("check_template: rejections") {
  CHECK_FALSE(search::check_template(fixtures::xor2_protocol().tmpl, fixtures::and2()).has_value());
  const Template constants(2, {Literal::constant(0), Literal::constant(0)});
  CHECK_FALSE(search::check_template(constants, fixtures::xor2()).has_value());
}

TEST_CASE("canonical_template") {
  const Template t = fixtures::protocol1().tmpl;
  const Template canon = search::canonical_template(t);
  for (std::size_t k = 0; k < t.length(); ++k)
    CHECK(search::canonical_template(rotate_template(t, static_cast<long long>(k))) == canon);
  CHECK(search::canonical_template(canon) == canon);

  const Template xor2_t = fixtures::xor2_protocol().tmpl;
  CHECK(search::canonical_template(xor2_t) != search::canonical_template(xor2_t.complemented()));
}

TEST_CASE("search recovers the four-card parity protocol") {
  const SearchResult result = search::search(fixtures::xor2(), committed(4));
  CHECK(result.complete);
  CHECK(result.protocols.size() == 4);
  CHECK(contains_up_to_rotation(result, fixtures::xor2_protocol().tmpl));
  CHECK(result.stats.examined == 10);
}

TEST_CASE("search recovers the five-card trick") {
  const SearchResult result = search::search(fixtures::and2(), free_deck(5, 1));
  CHECK(result.complete);
  CHECK(contains_up_to_rotation(result, fixtures::five_card_trick().tmpl));
}

TEST_CASE("search recovers the eight-card parity protocol") {
  SearchConfig cfg = committed(8);
  cfg.max_pair_multiplicity = 2;
  const SearchResult result = search::search(fixtures::xor3(), cfg);
  CHECK(result.complete);
  CHECK(contains_up_to_rotation(result, fixtures::protocol1().tmpl));

  // a single pair per variable cannot reach eight cards for three variables
  SearchConfig single = committed(8);
  single.max_pair_multiplicity = 1;
  CHECK(search::search(fixtures::xor3(), single).protocols.empty());
}

TEST_CASE("search recovers the four-variable selector protocol") {
  const SearchResult result = search::search(fixtures::paper_f2(), committed(8));
  CHECK(result.complete);
  CHECK(contains_up_to_rotation(result, fixtures::protocol2().tmpl));
}

TEST_CASE("search recovers the six-card trick") {
  const SearchResult result = search::search(fixtures::eq3(), committed(6));
  CHECK(contains_up_to_rotation(result, fixtures::six_card_trick().tmpl));
}

TEST_CASE("every returned protocol satisfies the deck constraints") {
  SearchConfig cfg = committed(8);
  cfg.max_pair_multiplicity = 2;
  const SearchResult result = search::search(fixtures::xor3(), cfg);
  REQUIRE_FALSE(result.protocols.empty());
  for (const auto& p : result.protocols) {
    std::vector<std::size_t> pos(3, 0), neg(3, 0);
    for (const Literal& lit : p.tmpl.literals()) {
      REQUIRE_FALSE(lit.is_constant());
      if (lit.kind() == Literal::Kind::Positive) ++pos[lit.var()];
      else ++neg[lit.var()];
    }
    for (std::size_t v = 0; v < 3; ++v) {
      CHECK(pos[v] == neg[v]);
      CHECK(pos[v] <= 2);
    }
  }
}

TEST_CASE("pruned search equals the naive oracle: all 2-variable functions, m <= 5") {
  for (std::uint64_t id = 0; id < 16; ++id) {
    const BooleanFunction f = BooleanFunction::from_table_id(2, id);
    for (std::size_t m = 1; m <= 5; ++m) {
      CAPTURE(id);
      CAPTURE(m);
      const std::size_t constants = std::min<std::size_t>(2, m);
      check_same_results(search::search(f, committed(m)), search::naive_search(f, committed(m)));
      check_same_results(search::search(f, free_deck(m, constants)),
                         search::naive_search(f, free_deck(m, constants)));
    }
  }
}

TEST_CASE("pruned search equals the naive oracle: three-variable parity, m <= 6") {
  const BooleanFunction f = fixtures::xor3();
  for (std::size_t m = 1; m <= 6; ++m) {
    CAPTURE(m);
    check_same_results(search::search(f, committed(m)), search::naive_search(f, committed(m)));
    check_same_results(search::search(f, free_deck(m, 1)),
                       search::naive_search(f, free_deck(m, 1)));
  }
}

TEST_CASE("oracle equivalence across the dedup switch combinations") {
  for (const bool rotation : {true, false}) {
    for (const bool color : {true, false}) {
      CAPTURE(rotation);
      CAPTURE(color);
      SearchConfig paired = committed(4);
      paired.dedup_template_rotation = rotation;
      paired.dedup_color_complement = color;
      check_same_results(search::search(fixtures::xor2(), paired),
                         search::naive_search(fixtures::xor2(), paired));

      SearchConfig loose = free_deck(4, 2);
      loose.dedup_template_rotation = rotation;
      loose.dedup_color_complement = color;
      for (const std::uint64_t id : {std::uint64_t{1}, std::uint64_t{6}, std::uint64_t{11}}) {
        const BooleanFunction f = BooleanFunction::from_table_id(2, id);
        check_same_results(search::search(f, loose), search::naive_search(f, loose));
      }
    }
  }
}

TEST_CASE("rotation dedup does not lose protocols") {
  SearchConfig with = committed(4);
  SearchConfig without = committed(4);
  without.dedup_template_rotation = false;
  const SearchResult deduped = search::search(fixtures::xor2(), with);
  const SearchResult full = search::search(fixtures::xor2(), without);
  CHECK(full.protocols.size() == 16);  // four rotations of each of the four
  for (const auto& p : full.protocols)
    CHECK(contains_up_to_rotation(deduped, p.tmpl));
}

TEST_CASE("color dedup keeps one template per complement orbit") {
  SearchConfig cfg = committed(4);
  cfg.dedup_color_complement = true;
  const SearchResult halved = search::search(fixtures::xor2(), cfg);
  CHECK(halved.protocols.size() == 2);
  const SearchResult full = search::search(fixtures::xor2(), committed(4));
  for (const auto& p : full.protocols) {
    const bool direct = contains_up_to_rotation(halved, p.tmpl);
    const bool complemented = contains_up_to_rotation(halved, p.tmpl.complemented());
    CHECK((direct || complemented));
  }
}

TEST_CASE("naive search refuses an odd committed pairing") {
  const SearchResult result = search::naive_search(fixtures::xor2(), committed(3));
  CHECK(result.protocols.empty());
  CHECK(result.stats.examined == 0);  // nothing balanced exists at three cards
}

TEST_CASE("constant functions need input-independent openings") {
  const BooleanFunction zero(2, {0, 0, 0, 0});
  const SearchResult result = search::search(zero, free_deck(2, 0));
  // only the committed pairs open identically on every input; e.g. (x, x)
  // would leak x outright
  CHECK(result.protocols.size() == 2);
  for (const auto& p : result.protocols) {
    CHECK(p.rule.entries().size() == 1);
    CHECK(engine::uniform_class_distributions(p.tmpl, zero));
  }
  // with a constant card allowed, a single helper card works at one card
  const SearchResult helper = search::search(zero, free_deck(1, 1));
  CHECK(helper.protocols.size() == 2);
  for (const auto& p : helper.protocols) CHECK(p.tmpl.literals().front().is_constant());
}

TEST_CASE("search determinism across worker counts") {
  SearchConfig sequential = committed(8);
  SearchConfig parallel = committed(8);
  parallel.jobs = 4;
  const SearchResult a = search::search(fixtures::paper_f2(), sequential);
  const SearchResult b = search::search(fixtures::paper_f2(), parallel);
  check_same_results(a, b);
  CHECK(a.stats.examined == b.stats.examined);
  CHECK(a.stats.pruned == b.stats.pruned);
  CHECK(a.stats.deduped == b.stats.deduped);
}

TEST_CASE("result limit reports an incomplete search") {
  SearchConfig cfg = committed(4);
  cfg.limit = 2;
  const SearchResult capped = search::search(fixtures::xor2(), cfg);
  CHECK(capped.protocols.size() == 2);
  CHECK_FALSE(capped.complete);
  // the capped list is the prefix of the full one
  const SearchResult full = search::search(fixtures::xor2(), committed(4));
  CHECK(capped.protocols[0].tmpl == full.protocols[0].tmpl);
  CHECK(capped.protocols[1].tmpl == full.protocols[1].tmpl);

  cfg.jobs = 3;
  const SearchResult parallel = search::search(fixtures::xor2(), cfg);
  check_same_results(capped, parallel);
}

TEST_CASE("guards refuse oversized spaces and bad configs") {
  CHECK_THROWS_AS(search::search(fixtures::paper_f2(), committed(10)), std::invalid_argument);
  CHECK_THROWS_AS(search::naive_search(fixtures::xor3(), committed(9)), std::invalid_argument);
  SearchConfig bad = committed(2);
  bad.constant_budget = 3;
  bad.allow_constants = true;
  CHECK_THROWS_AS(search::search(fixtures::xor2(), bad), std::invalid_argument);
  SearchConfig zero_limit = committed(2);
  zero_limit.limit = 0;
  CHECK_THROWS_AS(search::search(fixtures::xor2(), zero_limit), std::invalid_argument);
  CHECK_THROWS_AS(search::search(BooleanFunction(2, {0, 1, 1, 0}), SearchConfig{}),
                  std::invalid_argument);  // zero cards
}

TEST_CASE("classification over two variables") {
  const search::ClassificationReport report = search::classify(2, 4, SearchConfig{});
  CHECK(report.vars == 2);
  CHECK(report.max_cards == 4);
  REQUIRE(report.entries.size() == 16);

  // parity (table id 6) first appears at four cards
  const auto& parity = report.entries[6];
  REQUIRE(parity.minimal_cards.has_value());
  CHECK(*parity.minimal_cards == 4);
  for (std::size_t m = 1; m <= 3; ++m)
    CHECK(search::search(fixtures::xor2(), committed(m)).protocols.empty());

  // conjunction (table id 1) is infeasible within four committed cards
  CHECK_FALSE(report.entries[1].minimal_cards.has_value());

  // constants are two cards in committed mode
  CHECK(report.entries[0].minimal_cards == 2);
  CHECK(report.entries[15].minimal_cards == 2);

  for (const auto& entry : report.entries) {
    if (!entry.minimal_cards) continue;
    REQUIRE(entry.witness.has_value());
    const BooleanFunction f = BooleanFunction::from_table_id(2, entry.table_id);
    CHECK(engine::verify(*entry.witness, f).ok());
    CHECK(entry.witness->tmpl.length() == *entry.minimal_cards);
    // minimal: nothing exists one card below
    if (*entry.minimal_cards > 1)
      CHECK(search::search(f, committed(*entry.minimal_cards - 1)).protocols.empty());
  }
}

TEST_CASE("classification guards") {
  CHECK_THROWS_AS(search::classify(5, 4, SearchConfig{}), std::invalid_argument);
  CHECK_THROWS_AS(search::classify(2, 13, SearchConfig{}), std::invalid_argument);
  CHECK_THROWS_AS(search::classify(4, 12, SearchConfig{}), std::invalid_argument);
}
