#include "lri/domain.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "lri/error.hpp"

namespace lri {

IndexSet::IndexSet(std::initializer_list<std::size_t> items)
    : IndexSet(std::vector<std::size_t>(items)) {}

IndexSet::IndexSet(std::vector<std::size_t> items) : items_(std::move(items)) {
  std::sort(items_.begin(), items_.end());
  items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
}

IndexSet IndexSet::range(std::size_t n) {
  std::vector<std::size_t> items(n);
  for (std::size_t i = 0; i < n; ++i) items[i] = i;
  IndexSet s;
  s.items_ = std::move(items);
  return s;
}

bool IndexSet::contains(std::size_t i) const {
  return std::binary_search(items_.begin(), items_.end(), i);
}

bool IndexSet::is_subset_of(const IndexSet& other) const {
  return std::includes(other.items_.begin(), other.items_.end(), items_.begin(),
                       items_.end());
}

IndexSet IndexSet::with(std::size_t i) const {
  IndexSet out = *this;
  auto it = std::lower_bound(out.items_.begin(), out.items_.end(), i);
  if (it == out.items_.end() || *it != i) out.items_.insert(it, i);
  return out;
}

IndexSet IndexSet::unite(const IndexSet& other) const {
  IndexSet out;
  std::set_union(items_.begin(), items_.end(), other.items_.begin(),
                 other.items_.end(), std::back_inserter(out.items_));
  return out;
}

bool position_order(const IndexSet& a, const IndexSet& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia != *ib) return *ia < *ib;
    ++ia;
    ++ib;
  }
  // One is a prefix of the other: the longer one has an extra high bit.
  return ia != a.end() && ib == b.end();
}

std::size_t IndexSetHash::operator()(const IndexSet& s) const noexcept {
  std::size_t h = s.size();
  for (std::size_t i : s) h ^= i + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

struct DomainOfRules::State {
  std::vector<Formula> axioms;
  std::vector<Formula> hypotheses;
  SolverConfig cfg;

  mutable std::mutex memo_mutex;
  mutable std::unordered_map<IndexSet, bool, IndexSetHash> memo;

  mutable std::once_flag maximal_once;
  mutable std::vector<IndexSet> maximal;
};

namespace {

void require_ground(const Formula& f, const char* what) {
  if (!f.is_ground()) {
    throw NotGround(std::string(what) + " " + to_string(f) + " is not ground");
  }
}

}  // namespace

DomainOfRules::DomainOfRules() : DomainOfRules({}, {}) {}

DomainOfRules::DomainOfRules(std::vector<Formula> axioms,
                             std::vector<Formula> hypotheses, SolverConfig cfg)
    : state_(std::make_shared<State>()) {
  if (!cfg.registry) cfg.registry = std::make_shared<AtomRegistry>();
  std::set<Formula> seen;
  for (auto& a : axioms) {
    require_ground(a, "axiom");
    if (seen.insert(a).second) state_->axioms.push_back(std::move(a));
  }
  std::set<Formula> seen_hyp;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    const Formula& h = hypotheses[i];
    require_ground(h, "hypothesis");
    if (seen.count(h) != 0) {
      throw AxiomHypothesisOverlap("formula " + to_string(h) +
                                   " is both an axiom and a hypothesis");
    }
    if (!seen_hyp.insert(h).second) {
      throw DuplicateHypothesis("hypothesis " + to_string(h) +
                                " is listed more than once (index " +
                                std::to_string(i) + ")");
    }
  }
  state_->hypotheses = std::move(hypotheses);
  for (const auto& f : state_->axioms) cfg.registry->intern_all(f);
  for (const auto& f : state_->hypotheses) cfg.registry->intern_all(f);
  state_->cfg = std::move(cfg);
  if (!is_consistent(state_->axioms, state_->cfg)) {
    throw InconsistentAxioms("the axiom set is inconsistent");
  }
  state_->memo.emplace(IndexSet{}, true);
}

std::span<const Formula> DomainOfRules::axioms() const noexcept {
  return state_->axioms;
}

std::span<const Formula> DomainOfRules::hypotheses() const noexcept {
  return state_->hypotheses;
}

const Formula& DomainOfRules::hypothesis(std::size_t i) const {
  if (i >= state_->hypotheses.size()) {
    throw InvalidIndex("hypothesis index " + std::to_string(i) +
                       " out of range");
  }
  return state_->hypotheses[i];
}

std::size_t DomainOfRules::hypothesis_count() const noexcept {
  return state_->hypotheses.size();
}

std::vector<Formula> DomainOfRules::formulas(const IndexSet& chosen) const {
  std::vector<Formula> out = state_->axioms;
  for (std::size_t i : chosen) out.push_back(hypothesis(i));
  return out;
}

bool DomainOfRules::consistent(const IndexSet& chosen) const {
  {
    std::lock_guard lock(state_->memo_mutex);
    if (auto it = state_->memo.find(chosen); it != state_->memo.end()) {
      return it->second;
    }
  }
  const bool verdict = is_consistent(formulas(chosen), state_->cfg);
  std::lock_guard lock(state_->memo_mutex);
  state_->memo.emplace(chosen, verdict);
  return verdict;
}

bool DomainOfRules::entails(const IndexSet& chosen, const Formula& phi) const {
  require_ground(phi, "query");
  return lri::entails(formulas(chosen), phi, state_->cfg);
}

const SolverConfig& DomainOfRules::solver() const noexcept {
  return state_->cfg;
}

namespace {

// Depth-first include/exclude search over hypothesis indices. When the
// current choice plus every remaining index is consistent, that union is
// the only maximal candidate below this node.
void search_maximal(const DomainOfRules& d, std::size_t next, IndexSet current,
                    std::vector<IndexSet>& out) {
  const std::size_t n = d.hypothesis_count();
  IndexSet rest = current;
  for (std::size_t j = next; j < n; ++j) rest = rest.with(j);
  if (next < n && d.consistent(rest)) {
    current = std::move(rest);
    next = n;
  }
  if (next == n) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!current.contains(j) && d.consistent(current.with(j))) return;
    }
    out.push_back(std::move(current));
    return;
  }
  IndexSet included = current.with(next);
  if (d.consistent(included)) search_maximal(d, next + 1, std::move(included), out);
  search_maximal(d, next + 1, std::move(current), out);
}

}  // namespace

const std::vector<IndexSet>& DomainOfRules::maximal_sets() const {
  std::call_once(state_->maximal_once, [this] {
    std::vector<IndexSet> out;
    search_maximal(*this, 0, IndexSet{}, out);
    std::sort(out.begin(), out.end(), position_order);
    state_->maximal = std::move(out);
  });
  return state_->maximal;
}

DomainOfRules new_domain(std::vector<Formula> axioms,
                         std::vector<Formula> hypotheses, SolverConfig cfg) {
  return DomainOfRules(std::move(axioms), std::move(hypotheses), std::move(cfg));
}

Position::Position(DomainOfRules domain, IndexSet chosen)
    : domain_(std::move(domain)), chosen_(std::move(chosen)) {
  for (std::size_t i : chosen_) {
    if (i >= domain_.hypothesis_count()) {
      throw InvalidIndex("hypothesis index " + std::to_string(i) +
                         " out of range");
    }
  }
  if (!domain_.consistent(chosen_)) {
    throw InconsistentPosition("chosen hypotheses are inconsistent with the axioms");
  }
}

Justification::Justification(Formula conclusion, Position position)
    : conclusion_(std::move(conclusion)), position_(std::move(position)) {
  const auto& d = position_.domain();
  const auto& chosen = position_.chosen();
  if (!d.entails(chosen, conclusion_)) {
    throw InvalidJustification("position does not entail " +
                               to_string(conclusion_));
  }
  // Entailment is monotone, so checking the maximal proper subsets suffices.
  for (std::size_t drop : chosen) {
    std::vector<std::size_t> rest;
    for (std::size_t i : chosen) {
      if (i != drop) rest.push_back(i);
    }
    if (d.entails(IndexSet(std::move(rest)), conclusion_)) {
      throw InvalidJustification("position is not minimal for " +
                                 to_string(conclusion_));
    }
  }
}

IndexSet Context::hypotheses() const {
  IndexSet out;
  for (const auto& j : pairs) out = out.unite(j.position().chosen());
  return out;
}

std::vector<Position> maximal_positions(const DomainOfRules& d) {
  std::vector<Position> out;
  for (const auto& s : d.maximal_sets()) out.emplace_back(d, s);
  return out;
}

std::optional<Position> reasonably_infers(const DomainOfRules& d,
                                          const Formula& phi) {
  for (const auto& s : d.maximal_sets()) {
    if (d.entails(s, phi)) return Position(d, s);
  }
  return std::nullopt;
}

std::vector<Justification> justifications(const DomainOfRules& d,
                                          const Formula& phi) {
  std::vector<IndexSet> found;
  auto covered = [&](const IndexSet& s) {
    return std::any_of(found.begin(), found.end(),
                       [&](const IndexSet& j) { return j.is_subset_of(s); });
  };
  for (const auto& maximal : d.maximal_sets()) {
    if (!d.entails(maximal, phi)) continue;
    const auto& items = maximal.items();
    const std::size_t m = items.size();
    // Subsets by increasing size; a minimal set is never a superset of an
    // earlier find.
    for (std::size_t k = 0; k <= m; ++k) {
      std::vector<std::size_t> pick(k);
      for (std::size_t i = 0; i < k; ++i) pick[i] = i;
      while (true) {
        std::vector<std::size_t> chosen;
        chosen.reserve(k);
        for (std::size_t i : pick) chosen.push_back(items[i]);
        IndexSet candidate(std::move(chosen));
        if (!covered(candidate) && d.entails(candidate, phi)) {
          found.push_back(std::move(candidate));
        }
        std::size_t i = k;
        while (i > 0 && pick[i - 1] == m - k + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
      }
    }
  }
  std::sort(found.begin(), found.end(), position_order);
  std::vector<Justification> out;
  out.reserve(found.size());
  for (auto& s : found) {
    out.push_back(Justification(Justification::Trusted{}, phi, Position(d, std::move(s))));
  }
  return out;
}

bool is_consistent_context(const Context& ctx) {
  if (ctx.pairs.empty()) return true;
  const DomainOfRules& d = ctx.pairs.front().position().domain();
  for (const auto& j : ctx.pairs) {
    if (!j.position().domain().same_as(d)) {
      throw MixedDomains("context mixes justifications from different domains");
    }
  }
  return d.consistent(ctx.hypotheses());
}

namespace {

struct ContextSearch {
  const DomainOfRules& d;
  const std::vector<std::vector<Justification>>& options;
  std::vector<Context>& out;

  void run(std::size_t q, std::vector<const Justification*>& picked,
           std::vector<bool>& covered, const IndexSet& hyps) {
    if (q == options.size()) {
      for (std::size_t i = 0; i < options.size(); ++i) {
        if (covered[i]) continue;
        for (const auto& j : options[i]) {
          if (d.consistent(hyps.unite(j.position().chosen()))) return;
        }
      }
      Context ctx;
      for (const auto* j : picked) ctx.pairs.push_back(*j);
      out.push_back(std::move(ctx));
      return;
    }
    for (const auto& j : options[q]) {
      IndexSet next = hyps.unite(j.position().chosen());
      if (!d.consistent(next)) continue;
      picked.push_back(&j);
      covered[q] = true;
      run(q + 1, picked, covered, next);
      covered[q] = false;
      picked.pop_back();
    }
    run(q + 1, picked, covered, hyps);
  }
};

}  // namespace

std::vector<Context> maximal_consistent_contexts(
    const DomainOfRules& d, std::span<const Formula> queries) {
  if (queries.size() > kMaxContextQueries) {
    throw QueryLimit("at most " + std::to_string(kMaxContextQueries) +
                     " context queries are supported, got " +
                     std::to_string(queries.size()));
  }
  std::set<Formula> distinct(queries.begin(), queries.end());
  if (distinct.size() != queries.size()) {
    throw std::invalid_argument("context queries must be distinct");
  }
  std::vector<std::vector<Justification>> options;
  options.reserve(queries.size());
  for (const auto& q : queries) options.push_back(justifications(d, q));

  std::vector<Context> out;
  std::vector<const Justification*> picked;
  std::vector<bool> covered(queries.size(), false);
  ContextSearch{d, options, out}.run(0, picked, covered, IndexSet{});
  return out;
}

bool in_reasonable_theory(const DomainOfRules& d, const Formula& phi) {
  return reasonably_infers(d, phi).has_value();
}

}  // namespace lri
