#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cbd/commands.hpp"
#include "cbd/document.hpp"
#include "cbd/slits.hpp"

using namespace cbd;
using namespace cbd::cli;
using nlohmann::json;

namespace {

const std::string data_dir = CBD_DATA_DIR;

json machine_json(const CommandResult& r) {
  REQUIRE(r.exit_code == exit_ok);
  return json::parse(r.output);
}

AnalyzeOptions machine(AnalysisMethod method = AnalysisMethod::automatic) {
  AnalyzeOptions o;
  o.method = method;
  o.machine = true;
  return o;
}

DoubleSlitOptions slit(std::string p, std::string q, std::string pp, std::string qp, std::string rp) {
  DoubleSlitOptions o;
  o.p = std::move(p);
  o.q = std::move(q);
  o.p_prime = std::move(pp);
  o.q_prime = std::move(qp);
  o.r_prime = std::move(rp);
  o.machine = true;
  return o;
}

}  // namespace

TEST_CASE("analyze the double slit") {
  const json j = machine_json(cmd_analyze(data_dir + "/double_slit.sys", machine()));
  CHECK(j["verdict"] == "noncontextual");
  const auto& steps = j["reduction"]["steps"];
  CHECK(steps.size() == 7);
  CHECK(j["reduction"]["reduced_system"]["contexts"].size() == 1);
  CHECK(j["reduction"]["reduced_system"]["contexts"][0]["name"] == "c_oo");
  CHECK(j["consistently_connected"] == false);
  CHECK(j["detection_probabilities"].size() == 4);

  const json cyc = machine_json(cmd_analyze(data_dir + "/double_slit.sys", machine(AnalysisMethod::cyclic)));
  CHECK(cyc["method"] == "cyclic-criterion");
  CHECK(cyc["rank"] == 4);
  CHECK(cyc["verdict"] == "noncontextual");
  const json lp = machine_json(cmd_analyze(data_dir + "/double_slit.sys", machine(AnalysisMethod::lp)));
  CHECK(lp["method"] == "coupling-lp");
  CHECK(lp["verdict"] == "noncontextual");
}

TEST_CASE("analyze the triple slit") {
  for (const char* file : {"/triple_slit_paper.sys", "/triple_slit_reduced.sys"}) {
    const json j = machine_json(cmd_analyze(data_dir + file, machine()));
    CHECK(j["verdict"] == "contextual");
    CHECK(j["method"] == "coupling-lp");
  }
}

TEST_CASE("analyze the PR box") {
  const json cyc = machine_json(cmd_analyze(data_dir + "/pr_box.sys", machine(AnalysisMethod::cyclic)));
  CHECK(cyc["lhs"] == "4");
  CHECK(cyc["rhs"] == "2");
  CHECK(cyc["verdict"] == "contextual");
  const json lp = machine_json(cmd_analyze(data_dir + "/pr_box.sys", machine(AnalysisMethod::lp)));
  CHECK(lp["verdict"] == "contextual");
}

TEST_CASE("witness output") {
  AnalyzeOptions o = machine();
  o.witness = true;
  const json j = machine_json(cmd_analyze(data_dir + "/double_slit.sys", o));
  CHECK(j["method"] == "coupling-lp");
  REQUIRE(j.contains("witness"));
  Rational total = 0;
  for (const auto& atom : j["witness"]["atoms"]) total += parse_rational(atom["probability"].get<std::string>());
  CHECK(total == 1);

  o.machine = false;
  const auto text = cmd_analyze(data_dir + "/double_slit.sys", o);
  CHECK(text.output.find("Witness coupling") != std::string::npos);
  CHECK(text.output.find("Verdict: noncontextual") != std::string::npos);
}

TEST_CASE("analyze output is byte-stable") {
  for (bool m : {false, true}) {
    AnalyzeOptions o = machine();
    o.machine = m;
    const auto a = cmd_analyze(data_dir + "/triple_slit_paper.sys", o);
    const auto b = cmd_analyze(data_dir + "/triple_slit_paper.sys", o);
    CHECK(a.exit_code == exit_ok);
    CHECK(a.output == b.output);
  }
}

TEST_CASE("human output") {
  AnalyzeOptions o;
  const auto r = cmd_analyze(data_dir + "/double_slit.sys", o);
  REQUIRE(r.exit_code == exit_ok);
  CHECK(r.output.find("context c_ox") != std::string::npos);
  CHECK(r.output.find("PD = 1/2") != std::string::npos);
  CHECK(r.output.find("Verdict: noncontextual") != std::string::npos);
}

TEST_CASE("input errors exit with 2") {
  CHECK(cmd_analyze(data_dir + "/missing.sys", {}).exit_code == exit_input_error);
  CHECK(analyze_document("{", {}).exit_code == exit_input_error);
  const auto bad = analyze_document(R"({"contents":["a"],"contexts":[{"name":"c","contents":["a"],"table":{"+":"1.2"}}]})", {});
  CHECK(bad.exit_code == exit_input_error);
  CHECK(bad.error.find("probability out of range") != std::string::npos);
  CHECK(cmd_analyze(data_dir + "/triple_slit_reduced.sys", machine(AnalysisMethod::cyclic)).exit_code ==
        exit_input_error);
  CHECK(reduce_document("[]", {}).exit_code == exit_input_error);
}

TEST_CASE("resource limit exits with 3") {
  AnalyzeOptions o = machine(AnalysisMethod::lp);
  o.lp.max_variables = 8;
  const auto r = cmd_analyze(data_dir + "/triple_slit_reduced.sys", o);
  CHECK(r.exit_code == exit_resource_limit);
  CHECK(r.output.empty());
}

TEST_CASE("reduce") {
  const auto r = cmd_reduce(data_dir + "/triple_slit_paper.sys", {true, std::nullopt});
  const json j = machine_json(r);
  CHECK(j["steps"].size() == 16);
  const System reduced = parse_system_document(j["system"].dump());
  CHECK(reduced == paper_triple_slit_example());

  const std::string out_path = "reduce_test_output.sys";
  ReduceOptions write{false, out_path};
  REQUIRE(cmd_reduce(data_dir + "/triple_slit_paper.sys", write).exit_code == exit_ok);
  CHECK(load_system_document(out_path) == paper_triple_slit_example());
  std::remove(out_path.c_str());

  std::ifstream in(data_dir + "/triple_slit_reduced.sys");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const json again = machine_json(reduce_document(buffer.str(), {true, std::nullopt}));
  CHECK(again["steps"].empty());
  CHECK(serialize_system_document(parse_system_document(again["system"].dump())) == buffer.str());
}

TEST_CASE("double-slit subcommand") {
  SUBCASE("defaults are all zero") {
    DoubleSlitOptions o;
    o.machine = true;
    const json j = machine_json(cmd_double_slit(o));
    CHECK(j["closed_form"]["a1"] == "1");
    CHECK(j["closed_form"]["b"] == "1");
    CHECK(j["closed_form"]["verdict"] == "noncontextual");
  }
  SUBCASE("one half") {
    const json j = machine_json(cmd_double_slit(slit("1/2", "1/2", "1/2", "1/2", "0")));
    CHECK(j["closed_form"]["max_a"] == "1");
    CHECK(j["closed_form"]["b"] == "1");
    CHECK(j["cyclic_criterion"]["lhs"] == "2");
    CHECK(j["cyclic_criterion"]["rhs"] == "2");
    CHECK(j["cyclic_criterion"]["verdict"] == "noncontextual");
  }
  SUBCASE("equality case, decimals accepted") {
    const json j = machine_json(cmd_double_slit(slit("1", "1", "0.5", "0.5", "0")));
    CHECK(j["closed_form"]["max_a"] == "2");
    CHECK(j["closed_form"]["b"] == "2");
  }
  SUBCASE("emit system") {
    DoubleSlitOptions o = slit("1/2", "1/2", "1/4", "1/4", "0");
    o.emit_system = true;
    const json j = machine_json(cmd_double_slit(o));
    CHECK(parse_system_document(j["system"].dump()) ==
          build_double_slit({Rational(1, 2), Rational(1, 2), Rational(1, 4), Rational(1, 4), Rational(0)}));
  }
  SUBCASE("invalid parameters") {
    const auto r = cmd_double_slit(slit("0", "0", "1/2", "1/2", "1/2"));
    CHECK(r.exit_code == exit_input_error);
    CHECK(cmd_double_slit(slit("abc", "0", "0", "0", "0")).exit_code == exit_input_error);
    CHECK(cmd_double_slit(slit("0", "0", "0", "0", "-1")).exit_code == exit_input_error);
  }
}

TEST_CASE("sweep") {
  SUBCASE("nothing to check") {
    SweepOptions o;
    o.samples = 0;
    o.machine = true;
    const json j = machine_json(cmd_sweep(o));
    CHECK(j["checked"] == 0);
    CHECK(j["contextual"] == 0);
    CHECK(j["counterexamples"].empty());
  }
  SUBCASE("grid plus samples with LP cross-checks") {
    SweepOptions o;
    o.samples = 200;
    o.grid_step = "1/8";
    o.lp_subsample = 20;
    o.machine = true;
    const json j = machine_json(cmd_sweep(o));
    CHECK(j["grid_points"] == 13365);
    CHECK(j["checked"] == 13365 + 200);
    CHECK(j["contextual"] == 0);
    CHECK(j["closed_form_vs_cyclic_mismatches"] == 0);
    CHECK(j["lp_checked"] == 20);
    CHECK(j["lp_disagreements"] == 0);
  }
  SUBCASE("same seed, same output") {
    SweepOptions o;
    o.samples = 100;
    o.seed = 5;
    CHECK(cmd_sweep(o).output == cmd_sweep(o).output);
  }
  SUBCASE("bad step") {
    SweepOptions o;
    o.samples = 0;
    o.grid_step = "2";
    CHECK(cmd_sweep(o).exit_code == exit_input_error);
  }
}

TEST_CASE("demos") {
  const json ds = machine_json(cmd_demo("double-slit-paper", true));
  CHECK(ds["analysis"]["verdict"] == "noncontextual");
  CHECK(ds["unreduced_lp_verdict"] == "noncontextual");

  const json ts = machine_json(cmd_demo("triple-slit-paper", true));
  CHECK(ts["analysis"]["verdict"] == "contextual");
  CHECK(ts["coincidence_c_ooo"] == "999/1000");
  CHECK(ts["coincidence_c_oxo"] == "49901/50000");
  CHECK(ts["pairwise_subsystem"]["consistently_connected"] == true);
  CHECK(ts["pairwise_subsystem"]["verdict"] == "noncontextual");

  const json pr = machine_json(cmd_demo("pr-box", true));
  CHECK(pr["analysis"]["verdict"] == "contextual");
  CHECK(pr["lp_verdict"] == "contextual");

  CHECK(cmd_demo("nope", false).exit_code == exit_input_error);
  CHECK(cmd_demo("pr-box", false).output.find("Verdict: contextual") != std::string::npos);
}
