#include "grips/group_model.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "grips/errors.hpp"

namespace grips {

namespace {

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (const Gen& g : w) {
    if (!out.empty() && out.back() == inverse(g))
      out.pop_back();
    else
      out.push_back(g);
  }
  return out;
}

bool freely_reduced(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == inverse(w[i - 1])) return false;
  return true;
}

bool lex_less(const Word& a, const Word& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Word rotation(const Word& w, std::size_t k) {
  Word out;
  out.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out.push_back(w[(i + k) % w.size()]);
  return out;
}

}  // namespace

std::string kind_name(ModelKind k) {
  switch (k) {
    case ModelKind::finite_table: return "finite-table";
    case ModelKind::free_group: return "free";
    case ModelKind::free_product: return "free-product";
    case ModelKind::direct_product: return "direct-product";
    case ModelKind::small_cancellation: return "small-cancellation";
  }
  return "?";
}

// ===== base class ==========================================================

Word GroupModel::normalize(const Word& w) const {
  for (const Gen& g : w)
    if (g.index >= names_.size())
      throw input_error("generator index " + std::to_string(g.index) +
                        " out of range for alphabet of size " +
                        std::to_string(names_.size()));
  return normalize_impl(w);
}

const PeripheralSpec& GroupModel::peripheral(int lambda) const {
  if (lambda < 0 || lambda >= static_cast<int>(peripherals_.size()))
    throw input_error("peripheral index " + std::to_string(lambda) +
                      " out of range");
  return peripherals_[lambda].spec;
}

bool GroupModel::peripheral_contains(int lambda, const Word& nf) const {
  const PeripheralSpec& spec = peripheral(lambda);
  if (spec.kind == PeripheralSpec::Kind::factor)
    return factor_contains(spec.factor, nf);
  const auto& elems = peripherals_[lambda].elements;
  return std::binary_search(elems->begin(), elems->end(), nf, shortlex_less);
}

Word GroupModel::coset_rep(int lambda, const Word& nf) const {
  const PeripheralSpec& spec = peripheral(lambda);
  if (spec.kind == PeripheralSpec::Kind::factor)
    return factor_coset_rep(spec.factor, nf);
  // Shortlex-least member of the (finite) coset nf * P.
  const auto& elems = peripherals_[lambda].elements;
  Word best;
  bool have = false;
  for (const Word& p : *elems) {
    Word cand = normalize(concat(nf, p));
    if (!have || shortlex_less(cand, best)) {
      best = std::move(cand);
      have = true;
    }
  }
  return best;
}

const std::optional<std::vector<Word>>& GroupModel::peripheral_elements(
    int lambda) const {
  peripheral(lambda);  // bounds check
  return peripherals_[lambda].elements;
}

void GroupModel::add_peripheral(PeripheralSpec spec) {
  constexpr std::size_t kClosureCap = 100000;
  PeripheralData data;
  std::vector<Word> gens;
  if (spec.kind == PeripheralSpec::Kind::generated) {
    if (spec.generators.empty())
      throw input_error("generated peripheral needs at least one generator");
    for (int idx : spec.generators) {
      if (idx < 0 || idx >= alphabet_size())
        throw input_error("peripheral generator index out of range");
      gens.push_back({Gen{static_cast<std::uint16_t>(idx), false}});
    }
    data.elements = try_subgroup_closure(*this, gens, kClosureCap);
    if (!data.elements)
      throw input_error(
          "generated peripheral subgroup is not finite within the closure cap "
          "of " +
          std::to_string(kClosureCap) + " elements");
  } else {
    for (int idx : factor_generator_indices(spec.factor))
      gens.push_back({Gen{static_cast<std::uint16_t>(idx), false}});
    // Factor subgroups may be infinite; elements stay nullopt in that case.
    data.elements = try_subgroup_closure(*this, gens, kClosureCap);
  }
  data.spec = std::move(spec);
  peripherals_.push_back(std::move(data));
}

bool GroupModel::factor_contains(int, const Word&) const {
  throw input_error("model kind " + kind_name(kind()) + " has no factors");
}

Word GroupModel::factor_coset_rep(int, const Word&) const {
  throw input_error("model kind " + kind_name(kind()) + " has no factors");
}

std::vector<int> GroupModel::factor_generator_indices(int) const {
  throw input_error("model kind " + kind_name(kind()) + " has no factors");
}

// ===== helpers =============================================================

Word mul(const GroupModel& m, const Word& a, const Word& b) {
  return m.normalize(concat(a, b));
}

Word inv_nf(const GroupModel& m, const Word& a) {
  return m.normalize(inverse_word(a));
}

std::optional<std::vector<Word>> try_subgroup_closure(const GroupModel& m,
                                                      const std::vector<Word>& gens,
                                                      std::size_t cap) {
  std::vector<Word> step;
  std::size_t max_gen_len = 1;
  for (const Word& g : gens) {
    step.push_back(m.normalize(g));
    step.push_back(inv_nf(m, g));
    max_gen_len = std::max(max_gen_len, step.back().size());
  }
  std::sort(step.begin(), step.end(), shortlex_less);
  step.erase(std::unique(step.begin(), step.end()), step.end());

  // Length guard: an infinite subgroup would otherwise fill memory with
  // ever longer normal forms long before the element cap is reached.
  const std::size_t max_len = std::max<std::size_t>(256, 16 * max_gen_len);

  std::unordered_set<Word, WordHash> seen;
  std::deque<Word> queue;
  seen.insert(Word{});
  queue.push_back(Word{});
  while (!queue.empty()) {
    Word cur = std::move(queue.front());
    queue.pop_front();
    for (const Word& g : step) {
      Word nxt = m.normalize(concat(cur, g));
      if (nxt.size() > max_len) return std::nullopt;
      if (seen.insert(nxt).second) {
        if (seen.size() > cap) return std::nullopt;
        queue.push_back(std::move(nxt));
      }
    }
  }
  std::vector<Word> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), shortlex_less);
  return out;
}

// ===== C'(1/6) check =======================================================

namespace {

Word cyclic_sub(const Word& neck, std::size_t start, std::size_t len) {
  Word out;
  out.reserve(len);
  for (std::size_t t = 0; t < len; ++t)
    out.push_back(neck[(start + t) % neck.size()]);
  return out;
}

}  // namespace

bool verify_c16(const std::vector<Word>& relators, int alphabet_size,
                std::string* violation) {
  if (relators.empty()) throw input_error("relator list is empty");
  for (const Word& r : relators) {
    if (r.empty()) throw input_error("empty relator");
    for (const Gen& g : r)
      if (g.index >= static_cast<std::uint16_t>(alphabet_size))
        throw input_error("relator uses a generator outside the alphabet");
    if (!freely_reduced(r))
      throw input_error("relator is not freely reduced");
    if (r.size() >= 2 && r.front() == inverse(r.back()))
      throw input_error("relator is not cyclically reduced");
  }

  // Distinct necklaces of the symmetrized closure, each kept as its
  // lexicographically least rotation.
  std::vector<Word> necks;
  for (const Word& r : relators) {
    for (const Word& v : {r, inverse_word(r)}) {
      Word canon = v;
      for (std::size_t k = 1; k < v.size(); ++k) {
        Word rot = rotation(v, k);
        if (lex_less(rot, canon)) canon = rot;
      }
      if (std::find(necks.begin(), necks.end(), canon) == necks.end())
        necks.push_back(canon);
    }
  }

  auto report = [&](const Word& piece, std::size_t rel_len) {
    if (violation) {
      *violation = "piece of length " + std::to_string(piece.size()) +
                   " in a relator of length " + std::to_string(rel_len) +
                   " violates the 1/6 bound";
    }
  };

  // Periods of a necklace: shifts that map it to itself.
  auto is_period = [](const Word& neck, std::size_t g) {
    for (std::size_t i = 0; i < neck.size(); ++i)
      if (!(neck[i] == neck[(i + g) % neck.size()])) return false;
    return true;
  };

  for (std::size_t a = 0; a < necks.size(); ++a) {
    for (std::size_t b = a; b < necks.size(); ++b) {
      const Word& n1 = necks[a];
      const Word& n2 = necks[b];
      const std::size_t L1 = n1.size(), L2 = n2.size();
      const std::size_t max_len = std::min(L1, L2) - 1;
      for (std::size_t len = 1; len <= max_len; ++len) {
        for (std::size_t i = 0; i < L1; ++i) {
          Word u = cyclic_sub(n1, i, len);
          for (std::size_t j = (a == b ? i + 1 : std::size_t{0}); j < L2; ++j) {
            if (!(cyclic_sub(n2, j, len) == u)) continue;
            if (a == b) {
              // Two occurrences in one necklace count only when the arcs
              // partially overlap, or when no rotational symmetry of the
              // necklace identifies them.
              std::size_t g = j - i;
              bool overlap = (g < len) || (L1 - g < len);
              if (!overlap && is_period(n1, g)) continue;
            }
            if (6 * len >= L1 || 6 * len >= L2) {
              report(u, 6 * len >= L1 ? L1 : L2);
              return false;
            }
          }
        }
      }
    }
  }
  return true;
}

// ===== free groups =========================================================

namespace {

class FreeModel final : public GroupModel {
 public:
  explicit FreeModel(std::string names) : GroupModel(std::move(names)) {}
  ModelKind kind() const override { return ModelKind::free_group; }
  std::optional<std::size_t> order() const override {
    return names_.empty() ? std::optional<std::size_t>{1} : std::nullopt;
  }

 protected:
  Word normalize_impl(Word w) const override { return free_reduce(w); }
};

// ===== finite tables =======================================================

class TableModel final : public GroupModel {
 public:
  TableModel(std::string names, std::vector<std::vector<int>> right)
      : GroupModel(std::move(names)), right_(std::move(right)) {
    if (right_.size() != names_.size())
      throw input_error("table model: one permutation per generator required");
    n_ = names_.empty() ? 1 : right_[0].size();
    if (n_ == 0) throw input_error("table model: empty element set");
    right_inv_.assign(right_.size(), std::vector<int>(n_, -1));
    for (std::size_t g = 0; g < right_.size(); ++g) {
      if (right_[g].size() != n_)
        throw input_error("table model: permutation size mismatch");
      std::vector<char> hit(n_, 0);
      for (std::size_t i = 0; i < n_; ++i) {
        int t = right_[g][i];
        if (t < 0 || static_cast<std::size_t>(t) >= n_ || hit[t])
          throw input_error("table model: generator action is not a permutation");
        hit[t] = 1;
        right_inv_[g][t] = static_cast<int>(i);
      }
    }
    // Shortlex normal forms by breadth search from the identity, trying
    // symbols in shortlex order.
    nf_.assign(n_, Word{});
    std::vector<char> vis(n_, 0);
    vis[0] = 1;
    std::vector<int> queue{0};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      int e = queue[qi];
      for (int sym = 0; sym < 2 * alphabet_size(); ++sym) {
        Gen g = sym_gen(sym);
        int t = apply(e, g);
        if (!vis[t]) {
          vis[t] = 1;
          nf_[t] = nf_[e];
          nf_[t].push_back(g);
          queue.push_back(t);
        }
      }
    }
    for (std::size_t i = 0; i < n_; ++i)
      if (!vis[i])
        throw input_error("table model: generators do not reach every element");
  }

  ModelKind kind() const override { return ModelKind::finite_table; }
  std::optional<std::size_t> order() const override { return n_; }

 protected:
  Word normalize_impl(Word w) const override {
    int e = 0;
    for (const Gen& g : w) e = apply(e, g);
    return nf_[e];
  }

 private:
  int apply(int e, Gen g) const {
    return g.inverse ? right_inv_[g.index][e] : right_[g.index][e];
  }

  std::size_t n_ = 0;
  std::vector<std::vector<int>> right_, right_inv_;
  std::vector<Word> nf_;
};

// ===== product models ======================================================

class ProductBase : public GroupModel {
 public:
  ProductBase(std::vector<std::unique_ptr<GroupModel>> factors)
      : GroupModel(join_names(factors)), factors_(std::move(factors)) {
    offset_.push_back(0);
    for (const auto& f : factors_)
      offset_.push_back(offset_.back() + f->alphabet_size());
    sym_factor_.resize(names_.size());
    for (std::size_t f = 0; f < factors_.size(); ++f)
      for (int i = offset_[f]; i < offset_[f + 1]; ++i) sym_factor_[i] = (int)f;
  }

  int factor_of(const Gen& g) const { return sym_factor_[g.index]; }

 protected:
  static std::string join_names(
      const std::vector<std::unique_ptr<GroupModel>>& fs) {
    if (fs.empty()) throw input_error("product model needs at least one factor");
    std::string names;
    for (const auto& f : fs) names += f->generator_names();
    for (std::size_t i = 0; i < names.size(); ++i)
      for (std::size_t j = i + 1; j < names.size(); ++j)
        if (names[i] == names[j])
          throw input_error("product factors must use disjoint generator letters");
    return names;
  }

  Gen to_local(int f, Gen g) const {
    return Gen{static_cast<std::uint16_t>(g.index - offset_[f]), g.inverse};
  }
  Gen to_global(int f, Gen g) const {
    return Gen{static_cast<std::uint16_t>(g.index + offset_[f]), g.inverse};
  }
  Word globalize(int f, const Word& local) const {
    Word out;
    out.reserve(local.size());
    for (const Gen& g : local) out.push_back(to_global(f, g));
    return out;
  }
  Word localize(int f, const Word& global) const {
    Word out;
    out.reserve(global.size());
    for (const Gen& g : global) out.push_back(to_local(f, g));
    return out;
  }

  std::vector<int> factor_generator_indices(int factor) const override {
    check_factor(factor);
    std::vector<int> out;
    for (int i = offset_[factor]; i < offset_[factor + 1]; ++i) out.push_back(i);
    return out;
  }

  void check_factor(int f) const {
    if (f < 0 || f >= static_cast<int>(factors_.size()))
      throw input_error("factor index " + std::to_string(f) + " out of range");
  }

  std::vector<std::unique_ptr<GroupModel>> factors_;
  std::vector<int> offset_;
  std::vector<int> sym_factor_;
};

class FreeProductModel final : public ProductBase {
 public:
  using ProductBase::ProductBase;

  ModelKind kind() const override { return ModelKind::free_product; }

  std::optional<std::size_t> order() const override {
    std::size_t nontrivial = 0;
    std::optional<std::size_t> last = 1;
    for (const auto& f : factors_) {
      auto o = f->order();
      if (!o || *o != 1) {
        ++nontrivial;
        last = o;
      }
    }
    if (nontrivial == 0) return 1;
    if (nontrivial == 1) return last;
    return std::nullopt;
  }

 protected:
  Word normalize_impl(Word w) const override {
    // Alternating syllable form; each syllable is a factor normal form.
    std::vector<std::pair<int, Word>> stack;
    for (const Gen& g : w) {
      int f = factor_of(g);
      Gen local = to_local(f, g);
      if (!stack.empty() && stack.back().first == f) {
        Word comb = stack.back().second;
        comb.push_back(local);
        comb = factors_[f]->normalize(comb);
        if (comb.empty())
          stack.pop_back();
        else
          stack.back().second = std::move(comb);
      } else {
        Word single = factors_[f]->normalize({local});
        if (!single.empty()) stack.emplace_back(f, std::move(single));
      }
    }
    Word out;
    for (const auto& [f, syl] : stack) {
      Word g = globalize(f, syl);
      out.insert(out.end(), g.begin(), g.end());
    }
    return out;
  }

  bool factor_contains(int factor, const Word& nf) const override {
    check_factor(factor);
    if (nf.empty()) return true;
    for (const Gen& g : nf)
      if (factor_of(g) != factor) return false;
    return true;
  }

  Word factor_coset_rep(int factor, const Word& nf) const override {
    check_factor(factor);
    // Strip the trailing syllable when it lies in the factor.
    if (nf.empty() || factor_of(nf.back()) != factor) return nf;
    std::size_t cut = nf.size();
    while (cut > 0 && factor_of(nf[cut - 1]) == factor) --cut;
    return Word(nf.begin(), nf.begin() + cut);
  }
};

class DirectProductModel final : public ProductBase {
 public:
  using ProductBase::ProductBase;

  ModelKind kind() const override { return ModelKind::direct_product; }

  std::optional<std::size_t> order() const override {
    std::size_t prod = 1;
    for (const auto& f : factors_) {
      auto o = f->order();
      if (!o) return std::nullopt;
      if (*o != 0 && prod > (std::size_t{1} << 40) / *o) return std::nullopt;
      prod *= *o;
    }
    return prod;
  }

 protected:
  Word normalize_impl(Word w) const override {
    // Components commute: normal form is the concatenation of the factor
    // normal forms in factor order.
    Word out;
    for (std::size_t f = 0; f < factors_.size(); ++f) {
      Word local;
      for (const Gen& g : w)
        if (factor_of(g) == static_cast<int>(f)) local.push_back(to_local((int)f, g));
      Word nf = factors_[f]->normalize(local);
      Word g = globalize((int)f, nf);
      out.insert(out.end(), g.begin(), g.end());
    }
    return out;
  }

  bool factor_contains(int factor, const Word& nf) const override {
    check_factor(factor);
    for (const Gen& g : nf)
      if (factor_of(g) != factor) return false;
    return true;
  }

  Word factor_coset_rep(int factor, const Word& nf) const override {
    check_factor(factor);
    Word out;
    for (const Gen& g : nf)
      if (factor_of(g) != factor) out.push_back(g);
    return out;
  }
};

// ===== small cancellation ==================================================

class SmallCancellationModel final : public GroupModel {
 public:
  SmallCancellationModel(std::string names, std::vector<Word> relators)
      : GroupModel(std::move(names)), relators_(std::move(relators)) {
    std::string why;
    if (!verify_c16(relators_, alphabet_size(), &why))
      throw input_error("presentation fails the C'(1/6) condition: " + why);
    for (const Word& r : relators_) {
      for (const Word& v : {r, inverse_word(r)}) {
        for (std::size_t k = 0; k < v.size(); ++k) {
          Word rot = rotation(v, k);
          if (std::find(symmetrized_.begin(), symmetrized_.end(), rot) ==
              symmetrized_.end())
            symmetrized_.push_back(rot);
        }
      }
    }
    std::sort(symmetrized_.begin(), symmetrized_.end(), shortlex_less);
  }

  ModelKind kind() const override { return ModelKind::small_cancellation; }

  const std::vector<Word>& relators() const { return relators_; }

 protected:
  Word normalize_impl(Word w) const override {
    w = free_reduce(w);
    for (;;) {
      // Length-reducing Dehn move: a subword longer than half of a
      // symmetrized relator is replaced by the inverse of the complement.
      bool applied = false;
      for (std::size_t s = 0; s < w.size() && !applied; ++s) {
        for (const Word& r : symmetrized_) {
          std::size_t m = match_len(w, s, r);
          if (2 * m > r.size()) {
            w = splice(w, s, m, inverse_word(Word(r.begin() + m, r.end())));
            w = free_reduce(w);
            applied = true;
            break;
          }
        }
      }
      if (applied) continue;

      // Equal-length moves (exactly half of a relator): descend in shortlex.
      Word best = w;
      for (std::size_t s = 0; s < w.size(); ++s) {
        for (const Word& r : symmetrized_) {
          if (r.size() % 2 != 0) continue;
          std::size_t half = r.size() / 2;
          if (match_len(w, s, r) < half) continue;
          Word cand = free_reduce(
              splice(w, s, half, inverse_word(Word(r.begin() + half, r.end()))));
          if (cand.size() < best.size() ||
              (cand.size() == best.size() && shortlex_less(cand, best)))
            best = std::move(cand);
        }
      }
      if (best == w) break;
      w = std::move(best);
    }
    return w;
  }

 private:
  static std::size_t match_len(const Word& w, std::size_t s, const Word& r) {
    std::size_t m = 0;
    while (s + m < w.size() && m < r.size() && w[s + m] == r[m]) ++m;
    return m;
  }

  static Word splice(const Word& w, std::size_t s, std::size_t len,
                     const Word& repl) {
    Word out(w.begin(), w.begin() + s);
    out.insert(out.end(), repl.begin(), repl.end());
    out.insert(out.end(), w.begin() + s + len, w.end());
    return out;
  }

  std::vector<Word> relators_;
  std::vector<Word> symmetrized_;
};

}  // namespace

// ===== factories ===========================================================

std::unique_ptr<GroupModel> make_free_model(std::string names) {
  return std::make_unique<FreeModel>(std::move(names));
}

std::unique_ptr<GroupModel> make_cyclic_model(std::size_t order, char name) {
  if (order == 0) throw input_error("cyclic model: order must be positive");
  std::vector<int> perm(order);
  for (std::size_t i = 0; i < order; ++i) perm[i] = static_cast<int>((i + 1) % order);
  return std::make_unique<TableModel>(std::string(1, name),
                                      std::vector<std::vector<int>>{perm});
}

std::unique_ptr<GroupModel> make_table_model(
    std::string names, std::vector<std::vector<int>> right_mult) {
  return std::make_unique<TableModel>(std::move(names), std::move(right_mult));
}

std::unique_ptr<GroupModel> make_free_product(
    std::vector<std::unique_ptr<GroupModel>> factors) {
  return std::make_unique<FreeProductModel>(std::move(factors));
}

std::unique_ptr<GroupModel> make_direct_product(
    std::vector<std::unique_ptr<GroupModel>> factors) {
  return std::make_unique<DirectProductModel>(std::move(factors));
}

std::unique_ptr<GroupModel> make_small_cancellation_model(
    std::string names, std::vector<Word> relators) {
  return std::make_unique<SmallCancellationModel>(std::move(names),
                                                  std::move(relators));
}

}  // namespace grips
