#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "grips/word.hpp"

namespace grips {

enum class ModelKind {
  finite_table,
  free_group,
  free_product,
  direct_product,
  small_cancellation,
};

std::string kind_name(ModelKind k);

// How a peripheral subgroup is described.  Either a whole factor of a
// product model, or the subgroup generated by a subset of the alphabet.
struct PeripheralSpec {
  enum class Kind { factor, generated };
  Kind kind = Kind::generated;
  int factor = -1;              // for Kind::factor
  std::vector<int> generators;  // generator indices, for Kind::generated
};

/**
 * A finitely generated group with a decidable word problem, presented
 * through a total normal-form map: two words over the alphabet represent the
 * same element iff their normal forms coincide.  Normal forms are pinned by
 * shortlex tie-breaking throughout.
 *
 * Peripheral subgroups are attached to the model; membership and canonical
 * left-coset representatives are exact (independent of any truncation).
 */
class GroupModel {
 public:
  virtual ~GroupModel() = default;

  virtual ModelKind kind() const = 0;
  int alphabet_size() const { return static_cast<int>(names_.size()); }
  const std::string& generator_names() const { return names_; }

  Word normalize(const Word& w) const;

  // Group order; nullopt when infinite.
  virtual std::optional<std::size_t> order() const { return std::nullopt; }

  // --- peripheral subgroups ---------------------------------------------

  int peripheral_count() const { return static_cast<int>(peripherals_.size()); }
  const PeripheralSpec& peripheral(int lambda) const;
  bool peripheral_contains(int lambda, const Word& nf) const;
  // Canonical representative of the left coset nf * P_lambda; constant on
  // cosets, the identity on P_lambda itself.
  Word coset_rep(int lambda, const Word& nf) const;
  // Every subgroup element as a normal form, sorted shortlex; nullopt when
  // the subgroup is infinite.
  const std::optional<std::vector<Word>>& peripheral_elements(int lambda) const;

  // Validates and caches the element list.  Generated peripherals must close
  // into a finite subgroup; factor peripherals may be infinite.
  void add_peripheral(PeripheralSpec spec);

  std::string word_str(const Word& w) const { return word_to_string(w, names_); }
  Word parse(const std::string& s) const { return parse_word(s, names_); }

 protected:
  explicit GroupModel(std::string names) : names_(std::move(names)) {}

  virtual Word normalize_impl(Word w) const = 0;

  // Factor-peripheral hooks; only product models implement these.
  virtual bool factor_contains(int factor, const Word& nf) const;
  virtual Word factor_coset_rep(int factor, const Word& nf) const;
  virtual std::vector<int> factor_generator_indices(int factor) const;

  std::string names_;

 private:
  struct PeripheralData {
    PeripheralSpec spec;
    std::optional<std::vector<Word>> elements;
  };
  std::vector<PeripheralData> peripherals_;
};

// normalize(a * b) and normalize(a^-1), as plain helpers.
Word mul(const GroupModel& m, const Word& a, const Word& b);
Word inv_nf(const GroupModel& m, const Word& a);

// Closure of a set of elements (given as words) under product and inverse.
// Returns normal forms sorted shortlex; nullopt if the closure exceeds cap
// or grows normal forms past an internal length guard (either way the
// subgroup cannot be certified finite).
std::optional<std::vector<Word>> try_subgroup_closure(const GroupModel& m,
                                                      const std::vector<Word>& gens,
                                                      std::size_t cap);

// C'(1/6) small-cancellation check over the symmetrized closure of the
// relators (all cyclic rotations of each relator and of its inverse).
// A piece is a nonempty proper cyclic subword with two occurrences that are
// genuinely distinct: in two different necklaces, or twice in one necklace
// with partially overlapping arcs, or twice in one necklace at positions not
// identified by any rotational symmetry of that necklace.  Returns true iff
// every piece u of a relator r satisfies 6*|u| < |r|.  Exhaustive.
bool verify_c16(const std::vector<Word>& relators, int alphabet_size,
                std::string* violation = nullptr);

// --- factories -----------------------------------------------------------

std::unique_ptr<GroupModel> make_free_model(std::string names);
std::unique_ptr<GroupModel> make_cyclic_model(std::size_t order, char name);
// right_mult[g][i] = index of (element i) * (generator g); element 0 is the
// identity.  Normal forms are shortlex words computed by breadth search.
std::unique_ptr<GroupModel> make_table_model(std::string names,
                                             std::vector<std::vector<int>> right_mult);
std::unique_ptr<GroupModel> make_free_product(
    std::vector<std::unique_ptr<GroupModel>> factors);
std::unique_ptr<GroupModel> make_direct_product(
    std::vector<std::unique_ptr<GroupModel>> factors);
// Requires verify_c16(relators) to hold; normal forms are computed by Dehn
// reduction followed by shortlex descent across equal-length relator moves.
std::unique_ptr<GroupModel> make_small_cancellation_model(std::string names,
                                                          std::vector<Word> relators);

}  // namespace grips
