#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cbd/rational.hpp"

namespace cbd {

enum class Outcome : int { minus = -1, plus = 1 };

/// That which is measured, e.g. "q_o." for the open left slit.
struct ContentId {
  std::string name;
  auto operator<=>(const ContentId&) const = default;
};

/// The circumstances of a measurement, e.g. "c_ox".
struct ContextId {
  std::string name;
  auto operator<=>(const ContextId&) const = default;
};

/// A ±1 assignment to the ordered contents of a bunch. Bit i set means the
/// i-th content takes +1, clear means -1.
using Assignment = std::uint32_t;

/// Maximum number of contents in a single bunch.
inline constexpr std::size_t max_bunch_size = 31;

/// "+-" style rendering; character i is the i-th content.
std::string assignment_string(Assignment a, std::size_t length);

/// Inverse of assignment_string. Throws std::invalid_argument on characters
/// other than '+' and '-'.
Assignment parse_assignment(std::string_view text);

/// Joint distribution of all variables sharing one context.
///
/// Entries with zero probability are not stored; an absent assignment has
/// probability zero. A bunch with no contents always holds the single empty
/// assignment with probability 1.
class Bunch {
 public:
  using Table = std::map<Assignment, Rational>;

  Bunch() = default;
  /// Throws std::invalid_argument if the bunch is too wide or a key has bits
  /// beyond the content count. Normalization and probability ranges are not
  /// checked here; see validate_system.
  Bunch(ContextId context, std::vector<ContentId> contents, Table table);

  const ContextId& context() const { return context_; }
  const std::vector<ContentId>& contents() const { return contents_; }
  const Table& table() const { return table_; }
  std::size_t size() const { return contents_.size(); }

  Rational probability(Assignment a) const;
  Rational total() const;
  std::optional<std::size_t> index_of(const ContentId& content) const;
  bool contains(const ContentId& content) const { return index_of(content).has_value(); }

  bool operator==(const Bunch&) const = default;

 private:
  ContextId context_;
  std::vector<ContentId> contents_;
  Table table_;
};

/// A content-context system: contents plus one bunch per context. Variables
/// in different bunches are stochastically unrelated; no cross-context joint
/// is stored.
class System {
 public:
  System() = default;
  System(std::vector<ContentId> contents, std::vector<Bunch> bunches)
      : contents_(std::move(contents)), bunches_(std::move(bunches)) {}

  const std::vector<ContentId>& contents() const { return contents_; }
  const std::vector<Bunch>& bunches() const { return bunches_; }
  std::vector<ContextId> contexts() const;

  /// First bunch with the given context, or nullptr.
  const Bunch* find(const ContextId& context) const;
  const Bunch& bunch(const ContextId& context) const;

  /// Total number of variables R_q^c.
  std::size_t variable_count() const;

  bool operator==(const System&) const = default;

 private:
  std::vector<ContentId> contents_;
  std::vector<Bunch> bunches_;
};

struct Violation {
  std::string location;  // bunch or field at fault
  std::string message;
  bool operator==(const Violation&) const = default;
};

/// Structural and probabilistic checks. Empty result means the system is valid.
std::vector<Violation> validate_system(const System& s);

/// Exact marginal over `subset`, whose order becomes the result's content
/// order. Throws std::invalid_argument for contents not in the bunch.
Bunch marginal(const Bunch& b, const std::vector<ContentId>& subset);

/// Expectation of the product of the selected ±1 variables.
Rational expectation(const Bunch& b, const std::vector<ContentId>& subset);

/// Prob[content = +1] within the bunch.
Rational plus_probability(const Bunch& b, const ContentId& content);

/// 1 - Prob[every variable of the bunch equals -1].
Rational detection_probability(const Bunch& b);

/// The constant value of a variable whose marginal is degenerate, if any.
std::optional<Outcome> is_deterministic(const Bunch& b, const ContentId& content);

/// One content measured in two contexts; the two contexts are stored in name
/// order so that the key identifies an unordered pair.
struct InfluenceKey {
  ContentId content;
  ContextId first;
  ContextId second;

  InfluenceKey(ContentId q, ContextId a, ContextId b);
  auto operator<=>(const InfluenceKey&) const = default;
};

/// |<R_q^c> - <R_q^c'>| for each content-sharing pair of contexts.
using InfluenceMap = std::map<InfluenceKey, Rational>;

struct Connectedness {
  bool consistent = true;
  InfluenceMap influences;
};

Connectedness consistent_connectedness(const System& s);

}  // namespace cbd
