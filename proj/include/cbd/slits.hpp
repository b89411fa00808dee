#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "cbd/system.hpp"

namespace cbd {

// Double slit ---------------------------------------------------------------

/// Left/right slit detection probabilities: p and q with one slit open,
/// p', q' (and r' for "both") with both open.
struct DoubleSlitParams {
  Rational p = 0;
  Rational q = 0;
  Rational p_prime = 0;
  Rational q_prime = 0;
  Rational r_prime = 0;

  bool operator==(const DoubleSlitParams&) const = default;
};

/// 0 <= p, q, p', q', r' <= 1 and p' + q' + r' <= 1.
bool is_valid(const DoubleSlitParams& params);

namespace double_slit {
inline const ContentId left_open{"q_o."};
inline const ContentId left_closed{"q_x."};
inline const ContentId right_open{"q_.o"};
inline const ContentId right_closed{"q_.x"};
inline const ContextId open_closed{"c_ox"};
inline const ContextId closed_closed{"c_xx"};
inline const ContextId closed_open{"c_xo"};
inline const ContextId open_open{"c_oo"};
}  // namespace double_slit

/// The four-context system c_ox, c_xx, c_xo, c_oo. Throws
/// std::invalid_argument when the parameters leave the allowed region.
System build_double_slit(const DoubleSlitParams& params);

struct ClosedFormReport {
  std::array<Rational, 4> a;
  Rational b;
  bool noncontextual = true;

  Rational max_a() const;
};

/// a1 = |1+p-q-p'-q'|, a2 = |1-p-q-p'-q'|, a3 = |1-p+q-p'-q'|,
/// a4 = |1-p-q+p'+q'|, b = 1 + |p-p'-r'| + |q-q'-r'|; noncontextual iff
/// max a_i <= b.
ClosedFormReport closed_form_double_slit(const DoubleSlitParams& params);

/// Closed-form verdict equals the cyclic-criterion verdict on the built system.
bool verify_eq9_equivalence(const DoubleSlitParams& params);

/// Deterministic dyadic samples (denominator 2^16) covering the allowed
/// region, with a share of samples on its boundary faces.
std::vector<DoubleSlitParams> sample_double_slit_params(std::size_t count, std::uint64_t seed);

/// Every parameter tuple on the lattice {0, step, 2 step, ...} inside the
/// allowed region. Throws std::invalid_argument unless 0 < step <= 1.
std::vector<DoubleSlitParams> double_slit_grid(const Rational& step);

// Triple slit ----------------------------------------------------------------

/// open[i] is the state of slit i (left to right).
using SlitPattern = std::array<bool, 3>;

ContentId triple_slit_content(std::size_t slit, bool open);
ContextId triple_slit_context(const SlitPattern& pattern);

struct TripleSlitContext {
  SlitPattern open;
  /// Full form: over the context's three contents in slit order.
  /// Reduced form: over its open-slit contents in slit order.
  Bunch::Table table;
};

struct TripleSlitSpec {
  bool reduced = false;
  /// Full form: all eight patterns. Reduced form: the four patterns with at
  /// least two open slits. Any order.
  std::vector<TripleSlitContext> contexts;
};

/// Re-indexes a table over the open slits of `pattern` into a table over all
/// three slits, with the closed-slit variables fixed at -1.
Bunch::Table with_closed_slits(const SlitPattern& pattern, const Bunch::Table& open_table);

/// Six contents and eight contexts (full form) or three contents and four
/// contexts (reduced form). Throws std::invalid_argument when a pattern is
/// missing or repeated, or a closed-slit variable can take +1.
System build_triple_slit(const TripleSlitSpec& spec);

/// The reduced form with the published tables for contexts c_oxo, c_oox,
/// c_xoo and c_ooo.
TripleSlitSpec paper_triple_slit_spec();

/// Full form consistent with paper_triple_slit_spec: the four reduced tables
/// plus single-open-slit contexts whose open variable matches the reduced
/// marginals, and the all-closed context.
TripleSlitSpec paper_triple_slit_full_spec();

/// build_triple_slit(paper_triple_slit_spec()).
System paper_triple_slit_example();

/// Contexts c_oxo, c_oox and c_xoo of the reduced triple-slit system.
System triple_slit_pairwise_subsystem(const System& reduced);

}  // namespace cbd
