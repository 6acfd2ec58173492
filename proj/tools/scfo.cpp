// Command-line front end: verify, table, simulate, dist, search, classify.

#include "scfo/dsl.hpp"
#include "scfo/fixtures.hpp"
#include "scfo/search.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace scfo;

// Exit codes: 0 success, 1 verification/search failure, 2 usage/parse error.
struct CliError {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{2, "no built-in protocol or readable file named '" + path + "'"};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct ProtocolSource {
  engine::Protocol protocol;
  std::optional<BooleanFunction> doc_function;
};

ProtocolSource load_protocol(const std::string& ref) {
  if (auto p = fixtures::protocol_by_name(ref))
    return ProtocolSource{std::move(*p), fixtures::protocol_function_by_name(ref)};
  dsl::ParsedDocument doc = dsl::parse_protocol(read_file(ref));
  return ProtocolSource{std::move(doc.protocol), std::move(doc.function)};
}

// Built-in name when the table matches one, hex otherwise.
std::string function_label(const BooleanFunction& f) {
  for (const std::string& name : fixtures::function_names())
    if (*fixtures::function_by_name(name) == f) return name;
  return f.hex();
}

BooleanFunction pick_function(const std::string& flag, const ProtocolSource& source) {
  std::optional<BooleanFunction> f;
  if (!flag.empty()) {
    f = dsl::resolve_function(flag, source.protocol.tmpl.var_count());
    if (!f) throw CliError{2, "unknown function '" + flag + "'"};
  } else {
    f = source.doc_function;
    if (!f)
      throw CliError{2, "no function given; pass --function or add a 'function' line"};
  }
  if (f->var_count() != source.protocol.tmpl.var_count())
    throw CliError{2, "function arity does not match the protocol"};
  return *f;
}

std::string template_tokens(const Template& t, char separator) {
  const std::vector<std::string> names = variable_names(t.var_count());
  std::string out;
  for (const Literal& lit : t.literals()) {
    if (!out.empty()) out.push_back(separator);
    switch (lit.kind()) {
      case Literal::Kind::Constant: out += lit.constant_bit() ? "1" : "0"; break;
      case Literal::Kind::Positive: out += names[lit.var()]; break;
      case Literal::Kind::Negative: out += "!" + names[lit.var()]; break;
    }
  }
  return out;
}

std::string joined_names(std::size_t n, char separator) {
  std::string out;
  for (const std::string& name : variable_names(n)) {
    if (!out.empty()) out.push_back(separator);
    out += name;
  }
  return out;
}

std::string rational_str(const Rational& r) {
  std::string out = std::to_string(r.numerator());
  if (r.denominator() != 1) out += "/" + std::to_string(r.denominator());
  return out;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

// ------------------------------------------------------------ subcommands

int cmd_verify(const std::string& ref, const std::string& function_flag, bool porcelain) {
  const ProtocolSource source = load_protocol(ref);
  const BooleanFunction f = pick_function(function_flag, source);
  const engine::VerificationReport report = engine::verify(source.protocol, f);

  if (porcelain) {
    std::cout << "protocol=" << source.protocol.name << '\n';
    std::cout << "cards=" << source.protocol.tmpl.length() << '\n';
    std::cout << "function=" << function_label(f) << '\n';
    for (const auto& row : report.rows) {
      std::cout << "row assignment=" << row.assignment.str() << " expected=" << int(row.expected)
                << " word=" << row.word.str()
                << " necklace=" << row.necklace.representative.str() << " decoded=";
      if (row.decoded) std::cout << int(*row.decoded);
      else std::cout << "none";
      std::cout << '\n';
    }
    std::cout << "constants_club=" << report.constant_clubs << '\n';
    std::cout << "constants_heart=" << report.constant_hearts << '\n';
    for (const std::string& reason : report.failure_reasons)
      std::cout << "failure=" << reason << '\n';
    std::cout << "correct=" << int(report.correct) << '\n';
    std::cout << "secure=" << int(report.secure) << '\n';
    std::cout << "ok=" << int(report.ok()) << '\n';
  } else {
    std::cout << "protocol: " << source.protocol.name << '\n';
    std::cout << "cards: " << source.protocol.tmpl.length() << '\n';
    std::cout << "function: " << function_label(f) << '\n';
    for (const auto& row : report.rows) {
      std::cout << row.assignment.str() << " | " << int(row.expected) << " | " << row.word.str()
                << " -> ";
      if (row.decoded) std::cout << int(*row.decoded);
      else std::cout << '?';
      std::cout << '\n';
    }
    if (report.constant_clubs + report.constant_hearts > 0)
      std::cout << "constants: club=" << report.constant_clubs
                << " heart=" << report.constant_hearts << '\n';
    for (const std::string& reason : report.failure_reasons)
      std::cout << "failure: " << reason << '\n';
    std::cout << "correct: " << yes_no(report.correct) << '\n';
    std::cout << "secure: " << yes_no(report.secure) << '\n';
    std::cout << "result: " << (report.ok() ? "ok" : "fail") << '\n';
  }
  return report.ok() ? 0 : 1;
}

int cmd_table(const std::string& ref, bool porcelain) {
  const ProtocolSource source = load_protocol(ref);
  const BooleanFunction f = pick_function("", source);
  if (porcelain) {
    for (const auto& row : engine::render_table(source.protocol, f))
      std::cout << "row assignment=" << row.assignment << " value=" << int(row.value)
                << " word=" << row.word << '\n';
  } else {
    std::cout << engine::render_table_text(source.protocol, f);
  }
  return 0;
}

int cmd_simulate(const std::string& ref, const std::string& input, std::uint64_t seed,
                 bool reveal, bool porcelain) {
  const ProtocolSource source = load_protocol(ref);
  const Assignment a = Assignment::from_string(input);
  if (a.size() != source.protocol.tmpl.var_count())
    throw CliError{2, "--input needs " + std::to_string(source.protocol.tmpl.var_count()) +
                          " bits for this protocol"};
  engine::CutSource cut(seed);
  const engine::Trace trace = engine::run(source.protocol, a, cut);

  const char* sep = porcelain ? "=" : ": ";
  auto line = [&](const char* key, const std::string& value) {
    std::cout << key << sep << value << '\n';
  };
  line("assignment", trace.assignment.str());
  if (reveal) {
    line("hidden", trace.hidden.str());
    line("shift", std::to_string(trace.shift));
  }
  line("opened", trace.opened.str());
  line("output", std::to_string(int(trace.output)));
  return 0;
}

int cmd_dist(const std::string& ref, const std::string& input, bool porcelain) {
  const ProtocolSource source = load_protocol(ref);
  const Assignment a = Assignment::from_string(input);
  if (a.size() != source.protocol.tmpl.var_count())
    throw CliError{2, "--input needs " + std::to_string(source.protocol.tmpl.var_count()) +
                          " bits for this protocol"};
  const Word hidden = instantiate(source.protocol.tmpl, a);
  const auto dist = open_distribution(hidden);
  if (porcelain) {
    std::cout << "assignment=" << a.str() << '\n';
    for (const auto& [word, p] : dist)
      std::cout << "word=" << word.str() << " p=" << rational_str(p) << '\n';
  } else {
    std::cout << "assignment: " << a.str() << '\n';
    for (const auto& [word, p] : dist) std::cout << word.str() << ' ' << rational_str(p) << '\n';
  }
  return 0;
}

search::SearchConfig deck_config(const std::string& deck, std::size_t max_pairs,
                                 std::size_t constants, bool dedup_color, unsigned jobs) {
  search::SearchConfig cfg;
  if (deck == "committed") cfg.deck = search::DeckMode::CommittedPair;
  else if (deck == "free") cfg.deck = search::DeckMode::Free;
  else throw CliError{2, "--deck must be 'committed' or 'free'"};
  if (max_pairs > 0) cfg.max_pair_multiplicity = max_pairs;
  cfg.allow_constants = constants > 0;
  cfg.constant_budget = constants;
  cfg.dedup_color_complement = dedup_color;
  cfg.jobs = jobs;
  return cfg;
}

int cmd_search(const std::string& function_flag, std::size_t cards, const std::string& deck,
               std::size_t max_pairs, std::size_t constants, bool dedup_color,
               std::uint64_t limit, unsigned jobs, bool porcelain) {
  const std::optional<BooleanFunction> f = dsl::resolve_function(function_flag);
  if (!f) throw CliError{2, "unknown function '" + function_flag + "'"};
  search::SearchConfig cfg = deck_config(deck, max_pairs, constants, dedup_color, jobs);
  cfg.cards = cards;
  if (limit > 0) cfg.limit = limit;

  const search::SearchResult result = search::search(*f, cfg);
  std::cerr << "search took " << result.stats.seconds << " s\n";

  const char* sep = porcelain ? "=" : ": ";
  std::cout << "function" << sep << function_label(*f) << '\n';
  std::cout << "cards" << sep << cards << '\n';
  std::cout << "deck" << sep << (cfg.deck == search::DeckMode::CommittedPair ? "committed" : "free")
            << '\n';
  std::cout << "examined" << sep << result.stats.examined << '\n';
  std::cout << "pruned" << sep << result.stats.pruned << '\n';
  std::cout << "deduped" << sep << result.stats.deduped << '\n';
  std::cout << "found" << sep << result.protocols.size() << '\n';
  std::cout << "complete" << sep << (porcelain ? (result.complete ? "1" : "0") : yes_no(result.complete))
            << '\n';

  for (const engine::Protocol& p : result.protocols) {
    if (porcelain) {
      std::cout << "protocol name=" << p.name << " vars=" << joined_names(p.tmpl.var_count(), ',')
                << " template=" << template_tokens(p.tmpl, ',');
      for (const auto& entry : p.rule.entries())
        std::cout << " output" << int(entry.output) << '='
                  << entry.necklace.representative.str();
      std::cout << '\n';
    } else {
      std::cout << '\n' << dsl::serialize_protocol(p);
    }
  }
  return result.protocols.empty() ? 1 : 0;
}

int cmd_classify(std::size_t vars, std::size_t max_cards, const std::string& deck,
                 std::size_t max_pairs, std::size_t constants, bool dedup_color, unsigned jobs,
                 const std::string& out_path, bool porcelain) {
  search::SearchConfig base = deck_config(deck, max_pairs, constants, dedup_color, jobs);
  const search::ClassificationReport report = search::classify(vars, max_cards, base);

  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw CliError{2, "cannot write report file '" + out_path + "'"};
  std::size_t feasible = 0;
  for (const auto& entry : report.entries) {
    out << BooleanFunction::from_table_id(vars, entry.table_id).hex();
    if (entry.minimal_cards) {
      ++feasible;
      out << ' ' << *entry.minimal_cards << ' ' << template_tokens(entry.witness->tmpl, ' ');
    } else {
      out << " NONE";
    }
    out << '\n';
  }

  const char* sep = porcelain ? "=" : ": ";
  std::cout << "vars" << sep << vars << '\n';
  std::cout << "max-cards" << sep << max_cards << '\n';
  std::cout << "functions" << sep << report.entries.size() << '\n';
  std::cout << "feasible" << sep << feasible << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model, verify, simulate and search single-cut full-open card protocols"};
  app.require_subcommand(1);

  std::string ref, function_flag, input, deck = "committed", out_path;
  std::uint64_t seed = 0, limit = 0;
  std::size_t cards = 0, max_pairs = 0, constants = 0, vars = 0, max_cards = 0;
  unsigned jobs = 1;
  bool reveal = false, dedup_color = false;
  bool porcelain_verify = false, porcelain_table = false, porcelain_simulate = false,
       porcelain_dist = false, porcelain_search = false, porcelain_classify = false;

  CLI::App* verify = app.add_subcommand("verify", "Check a protocol against a function");
  verify->add_option("protocol", ref, "Protocol file or built-in name")->required();
  verify->add_option("--function", function_flag, "Function name or truth-table hex");
  verify->add_flag("--porcelain", porcelain_verify, "Line-oriented key=value output");

  CLI::App* table = app.add_subcommand("table", "Print the per-assignment correctness table");
  table->add_option("protocol", ref, "Protocol file or built-in name")->required();
  table->add_flag("--porcelain", porcelain_table, "Line-oriented key=value output");

  CLI::App* simulate = app.add_subcommand("simulate", "Run the protocol once");
  simulate->add_option("protocol", ref, "Protocol file or built-in name")->required();
  simulate->add_option("--input", input, "Input bits, variable 0 first")->required();
  simulate->add_option("--seed", seed, "Random seed (default 0)");
  simulate->add_flag("--reveal", reveal, "Also print the hidden sequence and shift");
  simulate->add_flag("--porcelain", porcelain_simulate, "Line-oriented key=value output");

  CLI::App* dist = app.add_subcommand("dist", "Exact opened-sequence distribution");
  dist->add_option("protocol", ref, "Protocol file or built-in name")->required();
  dist->add_option("--input", input, "Input bits, variable 0 first")->required();
  dist->add_flag("--porcelain", porcelain_dist, "Line-oriented key=value output");

  CLI::App* search_cmd = app.add_subcommand("search", "Enumerate protocols for a function");
  search_cmd->add_option("--function", function_flag, "Function name or truth-table hex")
      ->required();
  search_cmd->add_option("--cards", cards, "Template length m")->required();
  search_cmd->add_option("--deck", deck, "committed | free (default committed)");
  search_cmd->add_option("--max-pairs", max_pairs, "Pair multiplicity cap per variable");
  search_cmd->add_option("--constants", constants, "Constant-card budget");
  search_cmd->add_flag("--dedup-color", dedup_color, "Drop color-complement duplicates");
  search_cmd->add_option("--limit", limit, "Stop after this many protocols");
  search_cmd->add_option("--jobs", jobs, "Parallel workers (default 1)");
  search_cmd->add_flag("--porcelain", porcelain_search, "Line-oriented key=value output");

  CLI::App* classify = app.add_subcommand("classify", "Minimal card counts for all functions");
  classify->add_option("--vars", vars, "Variable count (1..4)")->required();
  classify->add_option("--max-cards", max_cards, "Card budget (1..12)")->required();
  classify->add_option("--deck", deck, "committed | free (default committed)");
  classify->add_option("--max-pairs", max_pairs, "Pair multiplicity cap per variable");
  classify->add_option("--constants", constants, "Constant-card budget");
  classify->add_flag("--dedup-color", dedup_color, "Drop color-complement duplicates");
  classify->add_option("--jobs", jobs, "Parallel workers (default 1)");
  classify->add_option("--out", out_path, "Report file path")->required();
  classify->add_flag("--porcelain", porcelain_classify, "Line-oriented key=value output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (verify->parsed()) return cmd_verify(ref, function_flag, porcelain_verify);
    if (table->parsed()) return cmd_table(ref, porcelain_table);
    if (simulate->parsed()) return cmd_simulate(ref, input, seed, reveal, porcelain_simulate);
    if (dist->parsed()) return cmd_dist(ref, input, porcelain_dist);
    if (search_cmd->parsed())
      return cmd_search(function_flag, cards, deck, max_pairs, constants, dedup_color, limit,
                        jobs, porcelain_search);
    if (classify->parsed())
      return cmd_classify(vars, max_cards, deck, max_pairs, constants, dedup_color, jobs,
                          out_path, porcelain_classify);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << '\n';
    return e.code;
  } catch (const dsl::ParseException& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const scfo::engine::UnknownClassError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
