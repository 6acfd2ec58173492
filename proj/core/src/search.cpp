#include "scfo/search.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <limits>
#include <thread>

namespace scfo::search {

namespace {

std::uint64_t saturating_pow(std::uint64_t base, std::size_t exp, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

std::size_t alphabet_size(const BooleanFunction& f, const SearchConfig& cfg) {
  const bool constants = cfg.allow_constants && cfg.constant_budget > 0;
  return (constants ? 2 : 0) + 2 * f.var_count();
}

void validate_config(const BooleanFunction& f, const SearchConfig& cfg, std::uint64_t guard,
                     const char* who) {
  if (f.var_count() == 0)
    throw std::invalid_argument("search needs a function of at least one variable");
  if (cfg.cards == 0) throw std::invalid_argument("card count must be at least 1");
  if (cfg.cards > Word::max_length)
    throw std::invalid_argument("card count exceeds the 64-card word limit");
  if (cfg.constant_budget > cfg.cards)
    throw std::invalid_argument("constant budget exceeds the card count");
  if (cfg.limit && *cfg.limit == 0)
    throw std::invalid_argument("result limit must be positive");
  if (cfg.max_pair_multiplicity && *cfg.max_pair_multiplicity == 0)
    throw std::invalid_argument("pair multiplicity must be positive");
  const std::uint64_t space = saturating_pow(alphabet_size(f, cfg), cfg.cards, guard);
  if (space > guard)
    throw std::invalid_argument(std::string(who) +
                                ": raw template space exceeds the enumeration guard");
}

struct Found {
  std::vector<std::uint8_t> order;  // alphabet indices, for deterministic sorting
  engine::Protocol protocol;
};

engine::Protocol checked_protocol(const Template& t, const BooleanFunction& f) {
  auto derivation = engine::derive_output_rule(t, f);
  if (!derivation.ok())
    throw std::logic_error("search accepted a template the rule derivation rejects");
  engine::Protocol p("candidate", t, *std::move(derivation.rule));
  if (!engine::verify(p, f).ok())
    throw std::logic_error("search produced a protocol that fails verification");
  return p;
}

// Depth-first template enumeration with prefix pruning. One instance per
// worker; all state lives in the instance, so copies run independently.
class Enumerator {
public:
  struct Shard {
    std::vector<Found> found;
    SearchStats stats;
    bool aborted = false;  // stopped early because the result cap was reached
  };

  Enumerator(const BooleanFunction& f, const SearchConfig& cfg)
      : f_(f), cfg_(cfg), n_(f.var_count()), m_(cfg.cards),
        assignments_(std::size_t{1} << f.var_count()),
        pair_cap_(cfg.max_pair_multiplicity.value_or(std::numeric_limits<std::size_t>::max())),
        committed_(cfg.deck == DeckMode::CommittedPair) {
    if (cfg_.allow_constants && cfg_.constant_budget > 0) {
      alphabet_.push_back(Literal::constant(0));
      alphabet_.push_back(Literal::constant(1));
    }
    for (std::size_t v = 0; v < n_; ++v) {
      alphabet_.push_back(Literal::positive(v));
      alphabet_.push_back(Literal::negative(v));
    }
    masks_.resize(alphabet_.size());
    for (std::size_t i = 0; i < alphabet_.size(); ++i) {
      std::uint64_t mask = 0;
      for (std::size_t a = 0; a < assignments_; ++a)
        if (eval_literal(alphabet_[i], Assignment::from_index(a, n_))) mask |= std::uint64_t{1} << a;
      masks_[i] = mask;
    }
    pos_.assign(n_, 0);
    neg_.assign(n_, 0);
    choice_.assign(m_, 0);
    comp_.assign(m_, 0);
    words_.assign(m_ + 1, {});
  }

  /// All admissible prefixes of the given depth, plus the prune counts
  /// observed above that depth (so totals stay partition-independent).
  std::pair<std::vector<std::vector<std::uint8_t>>, SearchStats> prefixes(std::size_t depth) {
    std::vector<std::vector<std::uint8_t>> out;
    SearchStats stats;
    collect_prefixes(0, depth, out, stats);
    return {std::move(out), stats};
  }

  /// Full enumeration below one prefix. Appends to the shard; stops once the
  /// shard holds `cap` results.
  void run(std::span<const std::uint8_t> prefix, Shard& shard,
           std::optional<std::uint64_t> cap) {
    std::size_t depth = 0;
    for (std::uint8_t i : prefix) {
      if (!try_push(depth, i)) throw std::logic_error("invalid enumeration prefix");
      ++depth;
    }
    descend(depth, shard, cap);
    while (depth > 0) {
      --depth;
      pop(depth, prefix[depth]);
    }
  }

private:
  void collect_prefixes(std::size_t depth, std::size_t target,
                        std::vector<std::vector<std::uint8_t>>& out, SearchStats& stats) {
    if (depth == target) {
      out.emplace_back(choice_.begin(), choice_.begin() + static_cast<std::ptrdiff_t>(target));
      return;
    }
    for (std::uint8_t i = 0; i < alphabet_.size(); ++i) {
      if (!try_push(depth, i)) {
        ++stats.pruned;
        continue;
      }
      collect_prefixes(depth + 1, target, out, stats);
      pop(depth, i);
    }
  }

  // Admissibility of literal `i` at position `depth`; commits the push when
  // admissible. CommittedPair prunes prefixes whose pair imbalance can no
  // longer be covered by the remaining positions.
  bool try_push(std::size_t depth, std::uint8_t i) {
    const Literal& lit = alphabet_[i];
    if (lit.is_constant()) {
      if (constants_used_ == cfg_.constant_budget) return false;
      ++constants_used_;
    } else {
      const std::size_t v = lit.var();
      const bool positive = lit.kind() == Literal::Kind::Positive;
      std::size_t& count = positive ? pos_[v] : neg_[v];
      const std::size_t other = positive ? neg_[v] : pos_[v];
      if (count + 1 > pair_cap_) return false;
      if (committed_) {
        const std::size_t new_imbalance = count >= other ? imbalance_ + 1 : imbalance_ - 1;
        if (new_imbalance > m_ - depth - 1) return false;
        imbalance_ = new_imbalance;
      }
      ++count;
    }
    choice_[depth] = i;
    const std::uint64_t mask = masks_[i];
    const auto& prev = words_[depth];
    auto& next = words_[depth + 1];
    for (std::size_t a = 0; a < assignments_; ++a)
      next[a] = (prev[a] << 1) | ((mask >> a) & 1u);
    return true;
  }

  void pop(std::size_t depth, std::uint8_t i) {
    (void)depth;
    const Literal& lit = alphabet_[i];
    if (lit.is_constant()) {
      --constants_used_;
      return;
    }
    const std::size_t v = lit.var();
    const bool positive = lit.kind() == Literal::Kind::Positive;
    std::size_t& count = positive ? pos_[v] : neg_[v];
    const std::size_t other = positive ? neg_[v] : pos_[v];
    --count;
    if (committed_) imbalance_ = count >= other ? imbalance_ - 1 : imbalance_ + 1;
  }

  bool descend(std::size_t depth, Shard& shard, std::optional<std::uint64_t> cap) {
    if (depth == m_) {
      leaf(shard);
      if (cap && shard.found.size() >= *cap) {
        shard.aborted = true;
        return false;
      }
      return true;
    }
    for (std::uint8_t i = 0; i < alphabet_.size(); ++i) {
      if (!try_push(depth, i)) {
        ++shard.stats.pruned;
        continue;
      }
      const bool keep_going = descend(depth + 1, shard, cap);
      pop(depth, i);
      if (!keep_going) return false;
    }
    return true;
  }

  // True when no rotation of choice_ is strictly smaller.
  bool least_rotation_ok() const {
    for (std::size_t k = 1; k < m_; ++k) {
      for (std::size_t i = 0; i < m_; ++i) {
        const std::uint8_t a = choice_[(i + k) % m_];
        const std::uint8_t b = choice_[i];
        if (a < b) return false;
        if (a > b) break;
      }
    }
    return true;
  }

  // True when the color-complemented counterpart sorts strictly below the
  // current template (under the active rotation canonicalization).
  bool color_duplicate() {
    for (std::size_t i = 0; i < m_; ++i) comp_[i] = choice_[i] ^ 1u;
    std::size_t offset = 0;
    if (cfg_.dedup_template_rotation) {
      for (std::size_t k = 1; k < m_; ++k) {
        for (std::size_t i = 0; i < m_; ++i) {
          const std::uint8_t a = comp_[(i + k) % m_];
          const std::uint8_t b = comp_[(i + offset) % m_];
          if (a < b) { offset = k; break; }
          if (a > b) break;
        }
      }
    }
    for (std::size_t i = 0; i < m_; ++i) {
      const std::uint8_t a = comp_[(i + offset) % m_];
      const std::uint8_t b = choice_[i];
      if (a < b) return true;
      if (a > b) return false;
    }
    return false;  // self-complementary orbit: keep
  }

  std::uint64_t min_rotation(std::uint64_t bits) const {
    const std::uint64_t mask = m_ >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m_) - 1;
    std::uint64_t best = bits;
    for (std::size_t k = 1; k < m_; ++k) {
      const std::uint64_t r = ((bits << k) | (bits >> (m_ - k))) & mask;
      if (r < best) best = r;
    }
    return best;
  }

  void leaf(Shard& shard) {
    if (cfg_.dedup_template_rotation && !least_rotation_ok()) {
      ++shard.stats.deduped;
      return;
    }
    if (cfg_.dedup_color_complement && color_duplicate()) {
      ++shard.stats.deduped;
      return;
    }
    ++shard.stats.examined;

    constexpr std::uint64_t kUnset = ~std::uint64_t{0};
    std::array<std::uint64_t, 2> cls{kUnset, kUnset};
    const auto& leaf_words = words_[m_];
    for (std::size_t a = 0; a < assignments_; ++a) {
      const std::uint64_t c = min_rotation(leaf_words[a]);
      const Bit b = f_.value_at(a);
      if (cls[b] == kUnset) {
        if (cls[b ^ 1u] == c) return;  // classes collide
        cls[b] = c;
      } else if (cls[b] != c) {
        return;  // class is not a single necklace
      }
    }

    std::vector<Literal> lits;
    lits.reserve(m_);
    for (std::uint8_t i : choice_) lits.push_back(alphabet_[i]);
    shard.found.push_back(Found{choice_, checked_protocol(Template(n_, std::move(lits)), f_)});
  }

  const BooleanFunction& f_;
  const SearchConfig& cfg_;
  std::size_t n_;
  std::size_t m_;
  std::size_t assignments_;
  std::size_t pair_cap_;
  bool committed_;

  std::vector<Literal> alphabet_;
  std::vector<std::uint64_t> masks_;  // per literal: assignment -> card bit
  std::vector<std::size_t> pos_;
  std::vector<std::size_t> neg_;
  std::size_t constants_used_ = 0;
  std::size_t imbalance_ = 0;  // sum over variables of |pos - neg|
  std::vector<std::uint8_t> choice_;
  std::vector<std::uint8_t> comp_;
  std::vector<std::array<std::uint64_t, 64>> words_;  // per depth, per assignment
};

SearchResult finalize(std::vector<Found> found, SearchStats stats, bool aborted,
                      const SearchConfig& cfg,
                      std::chrono::steady_clock::time_point start) {
  std::sort(found.begin(), found.end(),
            [](const Found& a, const Found& b) { return a.order < b.order; });

  SearchResult result;
  result.complete = !aborted;
  if (cfg.limit && found.size() > *cfg.limit) {
    found.erase(found.begin() + static_cast<std::ptrdiff_t>(*cfg.limit), found.end());
    result.complete = false;
  }
  result.protocols.reserve(found.size());
  for (std::size_t i = 0; i < found.size(); ++i) {
    found[i].protocol.name = "result" + std::to_string(i + 1);
    result.protocols.push_back(std::move(found[i].protocol));
  }
  result.stats = stats;
  result.stats.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace

std::optional<engine::Protocol> check_template(const Template& t, const BooleanFunction& f) {
  auto derivation = engine::derive_output_rule(t, f);
  if (!derivation.ok()) return std::nullopt;
  return engine::Protocol("candidate", t, *std::move(derivation.rule));
}

Template canonical_template(const Template& t) {
  const auto& lits = t.literals();
  const std::size_t m = lits.size();
  std::size_t best = 0;
  for (std::size_t k = 1; k < m; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      const Literal& a = lits[(i + k) % m];
      const Literal& b = lits[(i + best) % m];
      if (a < b) { best = k; break; }
      if (b < a) break;
    }
  }
  return rotate_template(t, static_cast<long long>(best));
}

SearchResult search(const BooleanFunction& f, const SearchConfig& cfg) {
  validate_config(f, cfg, kSearchGuard, "search");
  const auto start = std::chrono::steady_clock::now();

  Enumerator root(f, cfg);
  const std::size_t prefix_depth = std::min<std::size_t>(2, cfg.cards);
  auto [prefixes, prefix_stats] = root.prefixes(prefix_depth);

  const unsigned jobs = std::max(1u, cfg.jobs);
  std::vector<Enumerator::Shard> shards(jobs);

  auto work = [&](unsigned worker) {
    Enumerator enumerator(f, cfg);
    Enumerator::Shard& shard = shards[worker];
    for (std::size_t idx = worker; idx < prefixes.size(); idx += jobs) {
      if (cfg.limit && shard.found.size() >= *cfg.limit) {
        shard.aborted = true;
        break;
      }
      enumerator.run(prefixes[idx], shard, cfg.limit);
      if (shard.aborted) break;
    }
  };

  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(work, w);
    for (std::thread& th : threads) th.join();
  }

  std::vector<Found> found;
  SearchStats stats = prefix_stats;
  bool aborted = false;
  for (Enumerator::Shard& shard : shards) {
    stats.examined += shard.stats.examined;
    stats.pruned += shard.stats.pruned;
    stats.deduped += shard.stats.deduped;
    aborted = aborted || shard.aborted;
    std::move(shard.found.begin(), shard.found.end(), std::back_inserter(found));
    shard.found.clear();
  }
  return finalize(std::move(found), stats, aborted, cfg, start);
}

SearchResult naive_search(const BooleanFunction& f, const SearchConfig& cfg) {
  validate_config(f, cfg, kNaiveGuard, "naive_search");
  const auto start = std::chrono::steady_clock::now();

  const std::size_t n = f.var_count();
  const std::size_t m = cfg.cards;
  const std::size_t pair_cap =
      cfg.max_pair_multiplicity.value_or(std::numeric_limits<std::size_t>::max());

  std::vector<Literal> alphabet;
  if (cfg.allow_constants && cfg.constant_budget > 0) {
    alphabet.push_back(Literal::constant(0));
    alphabet.push_back(Literal::constant(1));
  }
  for (std::size_t v = 0; v < n; ++v) {
    alphabet.push_back(Literal::positive(v));
    alphabet.push_back(Literal::negative(v));
  }

  std::vector<Found> found;
  SearchStats stats;

  std::vector<std::size_t> digits(m, 0);
  for (;;) {
    std::vector<Literal> lits;
    lits.reserve(m);
    for (std::size_t d : digits) lits.push_back(alphabet[d]);
    Template t(n, lits);

    // plain full-template constraint check
    bool admissible = true;
    std::size_t constants = 0;
    std::vector<std::size_t> pos(n, 0), neg(n, 0);
    for (const Literal& lit : t.literals()) {
      if (lit.is_constant()) ++constants;
      else if (lit.kind() == Literal::Kind::Positive) ++pos[lit.var()];
      else ++neg[lit.var()];
    }
    if (constants > cfg.constant_budget) admissible = false;
    for (std::size_t v = 0; admissible && v < n; ++v) {
      if (pos[v] > pair_cap || neg[v] > pair_cap) admissible = false;
      if (cfg.deck == DeckMode::CommittedPair && pos[v] != neg[v]) admissible = false;
    }

    if (!admissible) {
      ++stats.pruned;
    } else {
      bool duplicate = false;
      if (cfg.dedup_template_rotation) {
        for (std::size_t k = 1; !duplicate && k < m; ++k) {
          const Template rotated = rotate_template(t, static_cast<long long>(k));
          if (rotated.literals() < t.literals()) duplicate = true;
        }
      }
      if (!duplicate && cfg.dedup_color_complement) {
        Template counterpart = t.complemented();
        if (cfg.dedup_template_rotation) counterpart = canonical_template(counterpart);
        if (counterpart.literals() < t.literals()) duplicate = true;
      }
      if (duplicate) {
        ++stats.deduped;
      } else {
        ++stats.examined;
        if (auto protocol = check_template(t, f)) {
          if (!engine::verify(*protocol, f).ok())
            throw std::logic_error("naive search produced a protocol that fails verification");
          std::vector<std::uint8_t> order(digits.begin(), digits.end());
          found.push_back(Found{std::move(order), *std::move(protocol)});
        }
      }
    }

    // odometer step
    bool exhausted = true;
    for (std::size_t d = m; d > 0;) {
      --d;
      if (++digits[d] < alphabet.size()) {
        exhausted = false;
        break;
      }
      digits[d] = 0;
    }
    if (exhausted) break;
  }

  return finalize(std::move(found), stats, false, cfg, start);
}

ClassificationReport classify(std::size_t vars, std::size_t max_cards,
                              const SearchConfig& base) {
  if (vars == 0 || vars > 4)
    throw std::invalid_argument("classification supports 1 to 4 variables");
  if (max_cards == 0 || max_cards > 12)
    throw std::invalid_argument("classification card budget is 1 to 12");
  {
    SearchConfig probe = base;
    probe.cards = max_cards;
    validate_config(BooleanFunction::from_table_id(vars, 0), probe, kSearchGuard, "classify");
  }

  ClassificationReport report;
  report.vars = vars;
  report.max_cards = max_cards;
  const std::uint64_t functions = std::uint64_t{1} << (std::size_t{1} << vars);
  report.entries.reserve(functions);
  for (std::uint64_t id = 0; id < functions; ++id) {
    const BooleanFunction f = BooleanFunction::from_table_id(vars, id);
    ClassificationEntry entry;
    entry.table_id = id;
    for (std::size_t m = 1; m <= max_cards; ++m) {
      SearchConfig cfg = base;
      cfg.cards = m;
      cfg.limit = 1;
      SearchResult r = search(f, cfg);
      if (!r.protocols.empty()) {
        entry.minimal_cards = m;
        entry.witness = std::move(r.protocols.front());
        break;
      }
    }
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace scfo::search
