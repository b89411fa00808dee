#include "cbd/commands.hpp"

#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "cbd/cyclic.hpp"
#include "cbd/document.hpp"
#include "cbd/reduce.hpp"
#include "cbd/slits.hpp"

namespace cbd::cli {

using nlohmann::ordered_json;

namespace {

// Rendering helpers ----------------------------------------------------------

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

ordered_json influences_json(const InfluenceMap& influences) {
  ordered_json out = ordered_json::array();
  for (const auto& [key, value] : influences) {
    out.push_back({{"content", key.content.name},
                   {"contexts", {key.first.name, key.second.name}},
                   {"value", to_string(value)}});
  }
  return out;
}

ordered_json detection_json(const System& s) {
  ordered_json out = ordered_json::array();
  for (const auto& b : s.bunches()) {
    out.push_back({{"context", b.context().name}, {"value", to_string(detection_probability(b))}});
  }
  return out;
}

ordered_json trace_json(const ReductionTrace& trace) {
  ordered_json out = ordered_json::array();
  for (const auto& step : trace.steps) {
    ordered_json item{{"kind", to_string(step.kind)}};
    if (step.variable) {
      item["content"] = step.variable->content.name;
      item["context"] = step.variable->context.name;
    } else if (step.context) {
      item["context"] = step.context->name;
    }
    out.push_back(std::move(item));
  }
  return out;
}

ordered_json witness_json(const Coupling& c) {
  ordered_json vars = ordered_json::array();
  for (const auto& v : c.variables) vars.push_back({{"content", v.content.name}, {"context", v.context.name}});
  ordered_json atoms = ordered_json::array();
  for (const auto& [atom, p] : c.atoms) {
    std::string signs(c.variables.size(), '-');
    for (std::size_t k = 0; k < c.variables.size(); ++k) {
      if ((atom >> k) & 1) signs[k] = '+';
    }
    atoms.push_back({{"assignment", signs}, {"probability", to_string(p)}});
  }
  return {{"variables", std::move(vars)}, {"atoms", std::move(atoms)}};
}

std::string trace_text(const ReductionTrace& trace) {
  std::ostringstream out;
  for (const auto& step : trace.steps) {
    out << "  " << to_string(step.kind) << ": ";
    if (step.variable) {
      out << "R[" << step.variable->content.name << "] in " << step.variable->context.name;
    } else if (step.context) {
      out << step.context->name;
    }
    out << "\n";
  }
  return out.str();
}

/// Two-variable bunches print as a joint/marginal matrix, wider ones as a
/// list of nonzero outcomes.
std::string bunch_text(const Bunch& b) {
  std::ostringstream out;
  out << "context " << b.context().name << "\n";
  if (b.size() == 2) {
    const auto& row = b.contents()[0].name;
    const auto& col = b.contents()[1].name;
    const std::size_t w = std::max<std::size_t>(12, row.size() + 5);
    const std::size_t cw = std::max<std::size_t>(12, col.size() + 5);
    out << "    " << pad("", w) << pad(col + "=+1", cw) << pad(col + "=-1", cw) << "\n";
    for (Assignment r : {Assignment{1}, Assignment{0}}) {
      out << "    " << pad(row + (r ? "=+1" : "=-1"), w);
      out << pad(to_string(b.probability(r | 0b10)), cw) << pad(to_string(b.probability(r)), cw);
      out << to_string(b.probability(r | 0b10) + b.probability(r)) << "\n";
    }
    out << "    " << pad("", w) << pad(to_string(b.probability(0b11) + b.probability(0b10)), cw)
        << to_string(b.probability(0b01) + b.probability(0b00)) << "\n";
  } else {
    out << "    contents:";
    for (const auto& q : b.contents()) out << " " << q.name;
    out << "\n";
    for (const auto& [a, p] : b.table()) out << "    " << pad(assignment_string(a, b.size()), 12) << to_string(p) << "\n";
  }
  out << "    PD = " << to_string(detection_probability(b)) << "\n";
  return out.str();
}

std::string system_text(const System& s) {
  std::ostringstream out;
  out << "System: " << s.contents().size() << " contents, " << s.bunches().size() << " contexts, "
      << s.variable_count() << " variables\n\n";
  for (const auto& b : s.bunches()) out << bunch_text(b) << "\n";
  return out.str();
}

std::string influences_text(const InfluenceMap& influences) {
  std::ostringstream out;
  for (const auto& [key, value] : influences) {
    out << "  " << pad(key.content.name, 8) << pad(key.first.name + " / " + key.second.name, 20) << to_string(value)
        << "\n";
  }
  return out.str();
}

// Analysis ---------------------------------------------------------------------

struct Analysis {
  System original;
  System analyzed;  // after reduction when the method is automatic
  std::optional<ReductionTrace> trace;
  Verdict verdict;
  std::optional<CyclicLayout> layout;
  std::optional<CriterionReport> criterion;
  Connectedness connectedness;
};

Analysis analyze_system(const System& s, const AnalyzeOptions& options) {
  Analysis a{s, s, std::nullopt, {}, std::nullopt, std::nullopt, consistent_connectedness(s)};
  bool use_cyclic = options.method == AnalysisMethod::cyclic;
  if (options.method == AnalysisMethod::automatic) {
    auto [reduced, trace] = reduce_fixpoint(s);
    a.analyzed = std::move(reduced);
    a.trace = std::move(trace);
    use_cyclic = !options.witness && detect_cycle(a.analyzed).has_value();
  }
  if (use_cyclic) {
    a.layout = detect_cycle(a.analyzed);
    if (!a.layout) throw std::invalid_argument("system is not cyclic; use --method lp or auto");
    auto [verdict, report] = cyclic_criterion(a.analyzed, *a.layout);
    a.verdict = std::move(verdict);
    a.criterion = std::move(report);
  } else {
    a.verdict = is_noncontextual_lp(a.analyzed, options.lp);
  }
  return a;
}

ordered_json analysis_json(const Analysis& a, bool include_witness) {
  ordered_json out;
  out["verdict"] = a.verdict.contextual ? "contextual" : "noncontextual";
  out["method"] = to_string(a.verdict.method);
  if (a.criterion) {
    out["rank"] = a.layout->rank();
    out["cycle"] = {{"contents", ordered_json::array()}, {"contexts", ordered_json::array()}};
    for (const auto& q : a.layout->contents) out["cycle"]["contents"].push_back(q.name);
    for (const auto& c : a.layout->contexts) out["cycle"]["contexts"].push_back(c.name);
    out["lhs"] = to_string(a.criterion->lhs);
    out["rhs"] = to_string(a.criterion->rhs);
    out["product_expectations"] = ordered_json::array();
    for (const auto& e : a.criterion->product_expectations) out["product_expectations"].push_back(to_string(e));
    out["influence_terms"] = ordered_json::array();
    for (const auto& e : a.criterion->influence_terms) out["influence_terms"].push_back(to_string(e));
  }
  out["consistently_connected"] = a.connectedness.consistent;
  out["direct_influences"] = influences_json(a.connectedness.influences);
  out["detection_probabilities"] = detection_json(a.original);
  if (a.trace) {
    out["reduction"] = {{"steps", trace_json(*a.trace)},
                        {"reduced_system", ordered_json::parse(serialize_system_document(a.analyzed))}};
  }
  if (include_witness && a.verdict.witness) out["witness"] = witness_json(*a.verdict.witness);
  return out;
}

std::string analysis_text(const Analysis& a, bool include_witness) {
  std::ostringstream out;
  out << system_text(a.original);
  if (a.trace) {
    out << "Reduction (" << a.trace->steps.size() << " steps):\n" << trace_text(*a.trace);
    out << "Reduced system: " << a.analyzed.bunches().size() << " contexts, " << a.analyzed.variable_count()
        << " variables\n\n";
  }
  out << "Method: " << to_string(a.verdict.method);
  if (a.criterion) {
    out << " (rank " << a.layout->rank() << ")\n";
    out << "  cycle:";
    for (std::size_t i = 0; i < a.layout->rank(); ++i) {
      out << " " << a.layout->contents[i].name << " -[" << a.layout->contexts[i].name << "]-";
    }
    out << "\n  product expectations:";
    for (const auto& e : a.criterion->product_expectations) out << " " << to_string(e);
    out << "\n  influence terms:";
    for (const auto& e : a.criterion->influence_terms) out << " " << to_string(e);
    out << "\n  lhs = " << to_string(a.criterion->lhs) << "\n  rhs = " << to_string(a.criterion->rhs) << "\n";
  } else {
    out << "\n  multimaximal coupling " << (a.verdict.contextual ? "does not exist" : "exists") << "\n";
  }
  out << "\nDirect influences |<R_q^c> - <R_q^c'>|:\n" << influences_text(a.connectedness.influences);
  out << "Consistently connected: " << (a.connectedness.consistent ? "yes" : "no") << "\n";
  if (include_witness && a.verdict.witness) {
    const auto& w = *a.verdict.witness;
    out << "\nWitness coupling over";
    for (const auto& v : w.variables) out << " " << v.content.name << "@" << v.context.name;
    out << ":\n";
    for (const auto& [atom, p] : w.atoms) {
      std::string signs(w.variables.size(), '-');
      for (std::size_t k = 0; k < w.variables.size(); ++k) {
        if ((atom >> k) & 1) signs[k] = '+';
      }
      out << "  " << signs << "  " << to_string(p) << "\n";
    }
  }
  out << "\nVerdict: " << (a.verdict.contextual ? "contextual" : "noncontextual") << "\n";
  return out.str();
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

CommandResult guarded(const std::function<std::string()>& body) {
  CommandResult result;
  try {
    result.output = body();
  } catch (const ResourceLimitError& e) {
    result.exit_code = exit_resource_limit;
    result.error = std::string("resource limit: ") + e.what() + "\n";
  } catch (const DocumentError& e) {
    result.exit_code = exit_input_error;
    result.error = std::string("parse error: ") + e.what() + "\n";
  } catch (const ValidationError& e) {
    result.exit_code = exit_input_error;
    result.error = std::string("validation error: ") + e.what() + "\n";
  } catch (const std::invalid_argument& e) {
    result.exit_code = exit_input_error;
    result.error = std::string("error: ") + e.what() + "\n";
  }
  return result;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DocumentError(path + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Rational parse_flag(const std::string& name, const std::string& value) {
  try {
    return parse_rational(value);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument("--" + name + ": " + e.what());
  }
}

ordered_json closed_form_json(const ClosedFormReport& r) {
  return {{"a1", to_string(r.a[0])}, {"a2", to_string(r.a[1])}, {"a3", to_string(r.a[2])},
          {"a4", to_string(r.a[3])}, {"max_a", to_string(r.max_a())}, {"b", to_string(r.b)},
          {"verdict", r.noncontextual ? "noncontextual" : "contextual"}};
}

std::string closed_form_text(const ClosedFormReport& r) {
  std::ostringstream out;
  for (std::size_t i = 0; i < 4; ++i) out << "  a" << i + 1 << " = " << to_string(r.a[i]) << "\n";
  out << "  max a = " << to_string(r.max_a()) << "\n  b = " << to_string(r.b) << "\n";
  out << "  max a <= b: " << (r.noncontextual ? "yes (noncontextual)" : "no (contextual)") << "\n";
  return out.str();
}

ordered_json params_json(const DoubleSlitParams& p) {
  return {{"p", to_string(p.p)}, {"q", to_string(p.q)}, {"pp", to_string(p.p_prime)},
          {"qp", to_string(p.q_prime)}, {"rp", to_string(p.r_prime)}};
}

}  // namespace

// Subcommands ------------------------------------------------------------------

CommandResult analyze_document(std::string_view document, const AnalyzeOptions& options) {
  return guarded([&] {
    const Analysis a = analyze_system(parse_system_document(document), options);
    return options.machine ? dump(analysis_json(a, options.witness)) : analysis_text(a, options.witness);
  });
}

CommandResult cmd_analyze(const std::string& path, const AnalyzeOptions& options) {
  std::string text;
  if (auto r = guarded([&] { text = read_file(path); return std::string(); }); r.exit_code != exit_ok) return r;
  return analyze_document(text, options);
}

CommandResult reduce_document(std::string_view document, const ReduceOptions& options) {
  return guarded([&] {
    const auto [reduced, trace] = reduce_fixpoint(parse_system_document(document));
    const std::string reduced_doc = serialize_system_document(reduced);
    if (options.output_path) {
      std::ofstream out(*options.output_path, std::ios::binary);
      if (!out) throw std::invalid_argument("cannot write " + *options.output_path);
      out << reduced_doc;
    }
    if (options.machine) {
      return dump({{"steps", trace_json(trace)}, {"system", ordered_json::parse(reduced_doc)}});
    }
    return "Reduction (" + std::to_string(trace.steps.size()) + " steps):\n" + trace_text(trace) +
           "\nReduced system:\n" + reduced_doc;
  });
}

CommandResult cmd_reduce(const std::string& path, const ReduceOptions& options) {
  std::string text;
  if (auto r = guarded([&] { text = read_file(path); return std::string(); }); r.exit_code != exit_ok) return r;
  return reduce_document(text, options);
}

CommandResult cmd_double_slit(const DoubleSlitOptions& options) {
  return guarded([&] {
    const DoubleSlitParams params{parse_flag("p", options.p), parse_flag("q", options.q),
                                  parse_flag("pp", options.p_prime), parse_flag("qp", options.q_prime),
                                  parse_flag("rp", options.r_prime)};
    const ClosedFormReport report = closed_form_double_slit(params);
    const System s = build_double_slit(params);
    const auto [verdict, criterion] = cyclic_criterion(s, *detect_cycle(s));
    if (options.machine) {
      ordered_json out{{"params", params_json(params)}, {"closed_form", closed_form_json(report)}};
      out["cyclic_criterion"] = {{"lhs", to_string(criterion.lhs)},
                                 {"rhs", to_string(criterion.rhs)},
                                 {"verdict", verdict.contextual ? "contextual" : "noncontextual"}};
      if (options.emit_system) out["system"] = ordered_json::parse(serialize_system_document(s));
      return dump(out);
    }
    std::ostringstream out;
    out << "Double-slit system p=" << to_string(params.p) << " q=" << to_string(params.q)
        << " p'=" << to_string(params.p_prime) << " q'=" << to_string(params.q_prime)
        << " r'=" << to_string(params.r_prime) << "\n\nClosed form:\n"
        << closed_form_text(report) << "\nCyclic criterion (rank 4):\n  lhs = " << to_string(criterion.lhs)
        << "\n  rhs = " << to_string(criterion.rhs) << "\n\nVerdict: "
        << (report.noncontextual ? "noncontextual" : "contextual") << "\n";
    if (options.emit_system) out << "\n" << serialize_system_document(s);
    return out.str();
  });
}

CommandResult cmd_sweep(const SweepOptions& options) {
  return guarded([&] {
    std::vector<DoubleSlitParams> points = sample_double_slit_params(options.samples, options.seed);
    std::size_t grid_points = 0;
    if (options.grid_step) {
      const auto grid = double_slit_grid(parse_flag("grid-step", *options.grid_step));
      grid_points = grid.size();
      points.insert(points.end(), grid.begin(), grid.end());
    }
    std::size_t contextual = 0, equivalence_failures = 0, lp_checked = 0, lp_disagreements = 0;
    ordered_json counterexamples = ordered_json::array();
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto report = closed_form_double_slit(points[i]);
      if (!report.noncontextual) {
        ++contextual;
        if (counterexamples.size() < 10) counterexamples.push_back(params_json(points[i]));
      }
      if (!verify_eq9_equivalence(points[i])) ++equivalence_failures;
      if (i < options.lp_subsample) {
        ++lp_checked;
        if (is_noncontextual_lp(build_double_slit(points[i])).contextual == report.noncontextual) ++lp_disagreements;
      }
    }
    ordered_json out{{"samples", options.samples},
                     {"seed", options.seed},
                     {"grid_step", options.grid_step ? ordered_json(*options.grid_step) : ordered_json(nullptr)},
                     {"grid_points", grid_points},
                     {"checked", points.size()},
                     {"noncontextual", points.size() - contextual},
                     {"contextual", contextual},
                     {"closed_form_vs_cyclic_mismatches", equivalence_failures},
                     {"lp_checked", lp_checked},
                     {"lp_disagreements", lp_disagreements},
                     {"counterexamples", counterexamples}};
    if (options.machine) return dump(out);
    std::ostringstream text;
    text << "Double-slit sweep\n"
         << "  random samples:   " << options.samples << " (seed " << options.seed << ")\n"
         << "  grid points:      " << grid_points;
    if (options.grid_step) text << " (step " << *options.grid_step << ")";
    text << "\n  checked:          " << points.size() << "\n  noncontextual:    " << points.size() - contextual
         << "\n  contextual:       " << contextual << "\n  closed form vs cyclic criterion mismatches: "
         << equivalence_failures << "\n  LP cross-checks:  " << lp_checked << " (" << lp_disagreements
         << " disagreements)\n";
    for (const auto& c : counterexamples) text << "  counterexample: " << c.dump() << "\n";
    return text.str();
  });
}

CommandResult cmd_demo(std::string_view name, bool machine) {
  return guarded([&]() -> std::string {
    AnalyzeOptions options;
    options.machine = machine;
    if (name == "double-slit-paper") {
      const DoubleSlitParams params{Rational(1, 2), Rational(1, 2), Rational(1, 4), Rational(1, 4), Rational(0)};
      const System s = build_double_slit(params);
      const auto report = closed_form_double_slit(params);
      const Analysis a = analyze_system(s, options);
      const Verdict lp = is_noncontextual_lp(s);
      if (machine) {
        return dump({{"demo", name},
                     {"params", params_json(params)},
                     {"closed_form", closed_form_json(report)},
                     {"analysis", analysis_json(a, false)},
                     {"unreduced_lp_verdict", lp.contextual ? "contextual" : "noncontextual"}});
      }
      return "Demo: double slit, p = q = 1/2, p' = q' = 1/4, r' = 0\n\n" + analysis_text(a, false) +
             "\nClosed form:\n" + closed_form_text(report) + "\nLP on the unreduced system: " +
             (lp.contextual ? "contextual" : "noncontextual") + "\n";
    }
    if (name == "triple-slit-paper") {
      const System full = build_triple_slit(paper_triple_slit_full_spec());
      const Analysis a = analyze_system(full, options);
      const System reduced = paper_triple_slit_example();
      const ContentId first = triple_slit_content(0, true), third = triple_slit_content(2, true);
      const Rational all_open = coincidence_probability(reduced.bunch(triple_slit_context({true, true, true})), first, third);
      const Rational middle_closed =
          coincidence_probability(reduced.bunch(triple_slit_context({true, false, true})), first, third);
      const System pairs = triple_slit_pairwise_subsystem(reduced);
      const bool pairs_consistent = consistent_connectedness(pairs).consistent;
      const bool pairs_contextual = is_noncontextual_lp(pairs).contextual;
      if (machine) {
        return dump({{"demo", name},
                     {"analysis", analysis_json(a, false)},
                     {"coincidence_c_ooo", to_string(all_open)},
                     {"coincidence_c_oxo", to_string(middle_closed)},
                     {"pairwise_subsystem",
                      {{"consistently_connected", pairs_consistent},
                       {"verdict", pairs_contextual ? "contextual" : "noncontextual"}}}});
      }
      std::ostringstream out;
      out << "Demo: triple slit\n\n" << analysis_text(a, false) << "\nProb[R_o.. = R_..o] in c_ooo = "
          << to_string(all_open) << "\nProb[R_o.. = R_..o] in c_oxo = " << to_string(middle_closed)
          << "\n  (equal marginals would force these to coincide in a multimaximal coupling)\n"
          << "Contexts c_oxo, c_oox, c_xoo alone: consistently connected " << (pairs_consistent ? "yes" : "no")
          << ", " << (pairs_contextual ? "contextual" : "noncontextual") << "\n";
      return out.str();
    }
    if (name == "pr-box") {
      const System s = pr_box_system();
      const Analysis a = analyze_system(s, options);
      const Verdict lp = is_noncontextual_lp(s);
      if (machine) {
        return dump({{"demo", name},
                     {"analysis", analysis_json(a, false)},
                     {"lp_verdict", lp.contextual ? "contextual" : "noncontextual"}});
      }
      return "Demo: rank-4 PR box\n\n" + analysis_text(a, false) +
             "LP cross-check: " + (lp.contextual ? "contextual" : "noncontextual") + "\n";
    }
    throw std::invalid_argument("unknown demo '" + std::string(name) +
                                "'; expected double-slit-paper, triple-slit-paper or pr-box");
  });
}

}  // namespace cbd::cli
