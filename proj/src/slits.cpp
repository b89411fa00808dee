#include "cbd/slits.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "cbd/cyclic.hpp"

namespace cbd {

bool is_valid(const DoubleSlitParams& params) {
  for (const Rational* v : {&params.p, &params.q, &params.p_prime, &params.q_prime, &params.r_prime}) {
    if (*v < 0 || *v > 1) return false;
  }
  return params.p_prime + params.q_prime + params.r_prime <= 1;
}

namespace {

void require_valid(const DoubleSlitParams& params) {
  if (!is_valid(params)) {
    throw std::invalid_argument(
        "double-slit parameters must satisfy 0 <= p, q, p', q', r' <= 1 and p' + q' + r' <= 1");
  }
}

}  // namespace

System build_double_slit(const DoubleSlitParams& params) {
  using namespace double_slit;
  require_valid(params);
  std::vector<Bunch> bunches;
  bunches.emplace_back(open_closed, std::vector{left_open, right_closed},
                       Bunch::Table{{0b01, params.p}, {0b00, Rational(1 - params.p)}});
  bunches.emplace_back(closed_closed, std::vector{left_closed, right_closed}, Bunch::Table{{0b00, Rational(1)}});
  bunches.emplace_back(closed_open, std::vector{left_closed, right_open},
                       Bunch::Table{{0b10, params.q}, {0b00, Rational(1 - params.q)}});
  bunches.emplace_back(open_open, std::vector{left_open, right_open},
                       Bunch::Table{{0b11, params.r_prime},
                                    {0b01, params.p_prime},
                                    {0b10, params.q_prime},
                                    {0b00, Rational(1 - params.p_prime - params.q_prime - params.r_prime)}});
  return System({left_open, right_open, left_closed, right_closed}, std::move(bunches));
}

Rational ClosedFormReport::max_a() const { return *std::max_element(a.begin(), a.end()); }

ClosedFormReport closed_form_double_slit(const DoubleSlitParams& params) {
  require_valid(params);
  const Rational& p = params.p;
  const Rational& q = params.q;
  const Rational& pp = params.p_prime;
  const Rational& qp = params.q_prime;
  const Rational& rp = params.r_prime;

  ClosedFormReport report;
  report.a[0] = abs_value(1 + p - q - pp - qp);
  report.a[1] = abs_value(1 - p - q - pp - qp);
  report.a[2] = abs_value(1 - p + q - pp - qp);
  report.a[3] = abs_value(1 - p - q + pp + qp);
  report.b = 1 + abs_value(p - pp - rp) + abs_value(q - qp - rp);
  report.noncontextual = report.max_a() <= report.b;
  return report;
}

bool verify_eq9_equivalence(const DoubleSlitParams& params) {
  const System s = build_double_slit(params);
  const auto layout = detect_cycle(s);
  if (!layout) return false;
  const auto [verdict, report] = cyclic_criterion(s, *layout);
  return verdict.contextual == !closed_form_double_slit(params).noncontextual;
}

std::vector<DoubleSlitParams> sample_double_slit_params(std::size_t count, std::uint64_t seed) {
  constexpr std::uint64_t denominator = std::uint64_t{1} << 16;
  // Only raw engine output is used so the sequence is identical across
  // standard library implementations.
  std::mt19937_64 engine(seed);
  auto lattice = [&engine]() {
    while (true) {
      const std::uint64_t v = engine() >> 47;  // 17 bits
      if (v <= denominator) return v;
    }
  };
  auto one_in = [&engine](unsigned n) { return engine() % n == 0; };
  auto unit = [&]() -> Rational {
    if (one_in(16)) return Rational(engine() & 1);
    return Rational(static_cast<long long>(lattice()), static_cast<long long>(denominator));
  };

  std::vector<DoubleSlitParams> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    DoubleSlitParams params;
    params.p = unit();
    params.q = unit();
    const bool on_face = one_in(8);
    std::array<std::uint64_t, 3> cuts{lattice(), lattice(), on_face ? denominator : lattice()};
    std::sort(cuts.begin(), cuts.end());
    const auto den = static_cast<long long>(denominator);
    params.p_prime = Rational(static_cast<long long>(cuts[0]), den);
    params.q_prime = Rational(static_cast<long long>(cuts[1] - cuts[0]), den);
    params.r_prime = Rational(static_cast<long long>(cuts[2] - cuts[1]), den);
    out.push_back(std::move(params));
  }
  return out;
}

std::vector<DoubleSlitParams> double_slit_grid(const Rational& step) {
  if (step <= 0 || step > 1) throw std::invalid_argument("grid step must lie in (0, 1]");
  std::vector<Rational> values;
  for (Rational v = 0; v <= 1; v += step) values.push_back(v);

  std::vector<DoubleSlitParams> out;
  for (const auto& p : values) {
    for (const auto& q : values) {
      for (const auto& pp : values) {
        for (const auto& qp : values) {
          if (pp + qp > 1) break;
          for (const auto& rp : values) {
            if (pp + qp + rp > 1) break;
            out.push_back({p, q, pp, qp, rp});
          }
        }
      }
    }
  }
  return out;
}

// Triple slit ---------------------------------------------------------------

ContentId triple_slit_content(std::size_t slit, bool open) {
  std::string name = "q_...";
  name.at(2 + slit) = open ? 'o' : 'x';
  return {name};
}

ContextId triple_slit_context(const SlitPattern& pattern) {
  std::string name = "c_";
  for (bool open : pattern) name += open ? 'o' : 'x';
  return {name};
}

namespace {

// Row order of the published full system.
const std::array<SlitPattern, 8> full_order{{{false, false, false},
                                             {true, false, false},
                                             {false, true, false},
                                             {false, false, true},
                                             {true, false, true},
                                             {true, true, false},
                                             {false, true, true},
                                             {true, true, true}}};

std::size_t open_count(const SlitPattern& pattern) {
  return static_cast<std::size_t>(std::count(pattern.begin(), pattern.end(), true));
}

const TripleSlitContext& find_pattern(const TripleSlitSpec& spec, const SlitPattern& pattern) {
  const TripleSlitContext* found = nullptr;
  for (const auto& c : spec.contexts) {
    if (c.open != pattern) continue;
    if (found) throw std::invalid_argument("context " + triple_slit_context(pattern).name + " given twice");
    found = &c;
  }
  if (!found) throw std::invalid_argument("context " + triple_slit_context(pattern).name + " missing");
  return *found;
}

}  // namespace

Bunch::Table with_closed_slits(const SlitPattern& pattern, const Bunch::Table& open_table) {
  std::vector<std::size_t> open_slits;
  for (std::size_t s = 0; s < 3; ++s) {
    if (pattern[s]) open_slits.push_back(s);
  }
  Bunch::Table out;
  for (const auto& [a, p] : open_table) {
    if (a >> open_slits.size()) throw std::invalid_argument("assignment wider than the open slits");
    Assignment full = 0;
    for (std::size_t j = 0; j < open_slits.size(); ++j) {
      if (a & (Assignment{1} << j)) full |= Assignment{1} << open_slits[j];
    }
    out[full] += p;
  }
  return out;
}

System build_triple_slit(const TripleSlitSpec& spec) {
  std::vector<Bunch> bunches;
  std::vector<ContentId> contents;
  if (spec.reduced) {
    if (spec.contexts.size() != 4) throw std::invalid_argument("reduced triple-slit spec needs four contexts");
    for (std::size_t s = 0; s < 3; ++s) contents.push_back(triple_slit_content(s, true));
    for (const auto& pattern : full_order) {
      if (open_count(pattern) < 2) continue;
      const auto& c = find_pattern(spec, pattern);
      std::vector<ContentId> members;
      for (std::size_t s = 0; s < 3; ++s) {
        if (pattern[s]) members.push_back(triple_slit_content(s, true));
      }
      bunches.emplace_back(triple_slit_context(pattern), std::move(members), c.table);
    }
  } else {
    if (spec.contexts.size() != 8) throw std::invalid_argument("full triple-slit spec needs eight contexts");
    for (std::size_t s = 0; s < 3; ++s) contents.push_back(triple_slit_content(s, true));
    for (std::size_t s = 3; s-- > 0;) contents.push_back(triple_slit_content(s, false));
    for (const auto& pattern : full_order) {
      const auto& c = find_pattern(spec, pattern);
      std::vector<ContentId> members;
      Assignment closed = 0;
      for (std::size_t s = 0; s < 3; ++s) {
        members.push_back(triple_slit_content(s, pattern[s]));
        if (!pattern[s]) closed |= Assignment{1} << s;
      }
      for (const auto& [a, p] : c.table) {
        if (p != 0 && (a & closed)) {
          throw std::invalid_argument("context " + triple_slit_context(pattern).name +
                                      ": a closed-slit variable must equal -1 surely");
        }
      }
      bunches.emplace_back(triple_slit_context(pattern), std::move(members), c.table);
    }
  }
  return System(std::move(contents), std::move(bunches));
}

namespace {

// Table over two variables from P(first=+1), P(second=+1), P(both=+1).
Bunch::Table pair_table(const Rational& first, const Rational& second, const Rational& both) {
  return {{0b11, both}, {0b01, first - both}, {0b10, second - both}, {0b00, 1 - first - second + both}};
}

}  // namespace

TripleSlitSpec paper_triple_slit_spec() {
  const Rational milli = power_of_ten(-3);
  TripleSlitSpec spec;
  spec.reduced = true;
  spec.contexts.push_back({{true, false, true}, pair_table(milli, milli, power_of_ten(-5))});
  spec.contexts.push_back({{true, true, false}, pair_table(milli, 2 * milli, power_of_ten(-6))});
  spec.contexts.push_back({{false, true, true}, pair_table(2 * milli, milli, power_of_ten(-6))});

  Bunch::Table all_open;
  const Rational rest = 25 * power_of_ten(-5);
  for (Assignment a = 0; a < 8; ++a) all_open[a] = rest;
  all_open[0b000] = 95 * power_of_ten(-2);
  all_open[0b010] = 485 * power_of_ten(-4);
  spec.contexts.push_back({{true, true, true}, std::move(all_open)});
  return spec;
}

TripleSlitSpec paper_triple_slit_full_spec() {
  TripleSlitSpec spec;
  for (auto& c : paper_triple_slit_spec().contexts) {
    spec.contexts.push_back({c.open, with_closed_slits(c.open, c.table)});
  }
  const Rational milli = power_of_ten(-3);
  const std::array<Rational, 3> single{milli, 2 * milli, milli};
  for (std::size_t s = 0; s < 3; ++s) {
    SlitPattern pattern{false, false, false};
    pattern[s] = true;
    spec.contexts.push_back(
        {pattern, with_closed_slits(pattern, {{0b1, single[s]}, {0b0, Rational(1 - single[s])}})});
  }
  spec.contexts.push_back({{false, false, false}, {{0b000, Rational(1)}}});
  return spec;
}

System paper_triple_slit_example() { return build_triple_slit(paper_triple_slit_spec()); }

System triple_slit_pairwise_subsystem(const System& reduced) {
  std::vector<Bunch> bunches;
  for (const auto& b : reduced.bunches()) {
    if (b.size() == 2) bunches.push_back(b);
  }
  return System(reduced.contents(), std::move(bunches));
}

}  // namespace cbd
