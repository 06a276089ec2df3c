#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <ostream>

#include "elimdeg/errors.hpp"
#include "elimdeg/grid_minor.hpp"
#include "elimdeg/oracle.hpp"
#include "elimdeg/orders.hpp"
#include "elimdeg/pipeline.hpp"
#include "elimdeg/satisfaction.hpp"
#include "elimdeg/sequence.hpp"

namespace elimdeg::cli {

using nlohmann::json;

namespace {

json order_json(const TreeOrder& o) {
  json parents = json::array();
  for (auto& [v, p] : o.parents()) parents.push_back({v, p ? json(*p) : json(nullptr)});
  return {{"type", "elimination-order"}, {"depth", o.depth()}, {"parent", parents}};
}

json trace_json(const std::vector<TraceStep>& trace) {
  json out = json::array();
  for (const auto& s : trace) out.push_back({{"stage", s.stage}, {"detail", s.detail}, {"vertices", s.vertices}});
  return out;
}

json reductions_json(const std::vector<ReductionStep>& steps) {
  json out = json::array();
  for (const auto& s : steps) {
    json merges = json::array();
    for (auto m : s.merges) merges.push_back({m.row, m.col});
    out.push_back({{"m", s.m}, {"cell", {s.cell.row, s.cell.col}}, {"vertex", s.vertex}, {"merges", merges}});
  }
  return out;
}

json decision_json(const Decision& dec, int k, int d) {
  json j = {{"member", dec.member}, {"k", k}, {"d", d}, {"stage", dec.stage}, {"trace", trace_json(dec.trace)},
            {"witness", nullptr}};
  if (!dec.reductions.empty()) j["reductions"] = reductions_json(dec.reductions);
  if (dec.witness) j["witness"] = order_json(*dec.witness);
  if (dec.certificate) {
    j["reason"] = to_string(dec.certificate->reason);
    j["witness"] = {{"type", "certificate"}, {"vertices", dec.certificate->vertices}, {"reds", dec.certificate->reds}};
  } else if (!dec.case1_component.empty()) {
    j["reason"] = "case1";
    j["witness"] = {{"type", "case1-component"}, {"vertices", dec.case1_component}};
  }
  return j;
}

Decision oracle_decision(const Graph& g, int k, int d, const OracleConfig& cfg) {
  Decision dec;
  dec.member = member_exact(g, k, d, cfg);
  dec.stage = "oracle";
  dec.trace.push_back({"oracle", "exact recursion over " + std::to_string(g.size()) + " vertices", {}});
  if (dec.member) dec.witness = synthesize_order(g, k, d, cfg);
  return dec;
}

struct Flags {
  int k = -1;
  int d = -1;
  std::string input, ports, sequence, model, order, output;
  std::string mode = "auto";
  std::string style = "single";
  int guard = 64;
  int auto_threshold = 12;
  unsigned seed = 1;
  int m = 0;
  int hubs = 0;
  int hub_degree = -1;
  int subdivide = 0;
  int pendants = 0;
  bool json_flag = false;
};

void require_kd(const Flags& f, bool need_k) {
  if (need_k && f.k < 0) throw InputError("--k is required and must be non-negative");
  if (f.d < 0) throw InputError("--d is required and must be non-negative");
}

int cmd_decide(const Flags& f, std::ostream& out) {
  require_kd(f, true);
  Graph g = read_edge_list(f.input);
  OracleConfig cfg;
  cfg.max_vertices = f.guard;
  SolveOptions opt;
  if (!f.model.empty()) opt.model = read_model(f.model);
  json j;
  int code = kOk;
  if (f.mode == "oracle" || (f.mode == "auto" && g.size() < f.auto_threshold)) {
    j = decision_json(oracle_decision(g, f.k, f.d, cfg), f.k, f.d);
    j["mode"] = "oracle";
  } else if (f.mode == "pipeline" || f.mode == "auto") {
    j = decision_json(solve(g, f.k, f.d, opt), f.k, f.d);
    j["mode"] = "pipeline";
  } else if (f.mode == "both") {
    auto dec = solve(g, f.k, f.d, opt);
    bool exact = member_exact(g, f.k, f.d, cfg);
    j = decision_json(dec, f.k, f.d);
    j["mode"] = "both";
    j["oracle_member"] = exact;
    j["agree"] = exact == dec.member;
    if (exact != dec.member) code = kDisagreement;
  } else {
    throw InputError("unknown mode " + f.mode);
  }
  out << j.dump(2) << "\n";
  return code;
}

int cmd_oracle(const Flags& f, std::ostream& out) {
  require_kd(f, false);
  Graph g = read_edge_list(f.input);
  OracleConfig cfg;
  cfg.max_vertices = f.guard;
  json j = {{"ed", elim_distance_exact(g, f.d, cfg)}, {"d", f.d}, {"n", g.size()}};
  if (f.k >= 0) j["member"] = member_exact(g, f.k, f.d, cfg);
  out << j.dump(2) << "\n";
  return kOk;
}

int cmd_treedepth(const Flags& f, std::ostream& out) {
  Graph g = read_edge_list(f.input);
  OracleConfig cfg;
  cfg.max_vertices = f.guard;
  out << json{{"treedepth", treedepth_exact(g, cfg)}, {"n", g.size()}}.dump(2) << "\n";
  return kOk;
}

int cmd_label(const Flags& f, std::ostream& out) {
  require_kd(f, true);
  if (f.ports.empty() || f.sequence.empty()) throw InputError("label needs --ports and --sequence");
  PortedComponent pc;
  pc.graph = read_edge_list(f.input);
  pc.ports = read_ports(f.ports);
  KdSequence s = read_sequence(f.sequence);
  pc.p = s.p;
  std::optional<MinorModel> model;
  if (!f.model.empty()) model = read_model(f.model);
  OracleConfig cfg;
  cfg.max_vertices = f.guard;
  auto res = satisfies_traced(pc, s, f.k, f.d, model, cfg);
  json j = {{"satisfies", res.satisfies}, {"case", to_string(res.decided_by)}, {"deleted", res.deleted},
            {"length", s.length()}, {"p", s.p}};
  if (res.satisfies && res.deleted.empty()) {
    if (auto w = sequence_witness(pc.graph, pc.ports, s, f.d, cfg)) j["witness"] = order_json(*w);
  }
  out << j.dump(2) << "\n";
  return kOk;
}

int cmd_validate_order(const Flags& f, std::ostream& out) {
  require_kd(f, false);
  if (f.order.empty()) throw InputError("validate-order needs --order");
  Graph g = read_edge_list(f.input);
  TreeOrder o = read_tree_order(f.order);
  json j;
  if (!check_tree_order(g, o)) {
    j = {{"valid", false}, {"tree_order", false}, {"violations", json::array({"not a forest"})}};
  } else {
    auto rep = check_elimination_to_degree(g, o, f.d);
    json viol = json::array();
    for (auto& [v, why] : rep.violations) viol.push_back({{"vertex", v}, {"reason", why}});
    bool ok = rep.valid && (f.k < 0 || rep.depth <= f.k);
    j = {{"valid", ok}, {"tree_order", true}, {"depth", rep.depth}, {"violations", viol}};
    if (f.k >= 0 && rep.depth > f.k) j["violations"].push_back({{"vertex", nullptr}, {"reason", "depth exceeds k"}});
  }
  out << j.dump(2) << "\n";
  return kOk;
}

int cmd_validate_model(const Flags& f, std::ostream& out) {
  if (f.model.empty()) throw InputError("validate-model needs --model");
  Graph g = read_edge_list(f.input);
  auto rep = validate_model(g, read_model(f.model));
  out << json{{"valid", rep.valid}, {"violations", rep.violations}}.dump(2) << "\n";
  return kOk;
}

int cmd_gen_grid(const Flags& f, std::ostream& out) {
  if (f.k < 0 || f.d < 0) throw InputError("gen-grid needs --k and --d");
  Decorations dec;
  if (f.style == "brick")
    dec.style = CellStyle::Brick;
  else if (f.style != "single")
    throw InputError("unknown style " + f.style);
  dec.hubs = f.hubs;
  dec.hub_degree = f.hub_degree;
  dec.subdivide = f.subdivide;
  dec.pendants = f.pendants;
  auto inst = generate_decorated_grid(f.m, f.k, f.d, dec, f.seed);
  json j = {{"n", inst.graph.size()}, {"edges", inst.graph.num_edges()}, {"m", f.m},
            {"max_degree", inst.graph.max_degree()}, {"hubs", inst.hubs}};
  if (!f.output.empty()) {
    std::ofstream gout(f.output + ".txt"), mout(f.output + ".model");
    if (!gout || !mout) throw InputError("cannot write " + f.output + ".{txt,model}");
    write_edge_list(gout, inst.graph);
    write_model(mout, inst.model);
    j["graph_file"] = f.output + ".txt";
    j["model_file"] = f.output + ".model";
  }
  out << j.dump(2) << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Elimination distance to bounded degree"};
  app.require_subcommand(1);
  Flags f;
  auto input = [&](CLI::App* sub) { sub->add_option("--input", f.input, "edge-list file")->required(); };
  auto kd = [&](CLI::App* sub) {
    sub->add_option("--k", f.k, "elimination depth bound");
    sub->add_option("--d", f.d, "degree bound");
  };
  auto common = [&](CLI::App* sub) {
    sub->add_option("--guard", f.guard, "oracle vertex guard");
    sub->add_flag("--json", f.json_flag, "JSON output (always on)");
  };

  auto* decide = app.add_subcommand("decide", "decide membership in C_{k,d}");
  input(decide);
  kd(decide);
  common(decide);
  decide->add_option("--model", f.model, "grid minor model file");
  decide->add_option("--mode", f.mode, "auto|oracle|pipeline|both")
      ->check(CLI::IsMember({"auto", "oracle", "pipeline", "both"}));
  decide->add_option("--auto-threshold", f.auto_threshold, "auto mode uses the oracle below this many vertices");

  auto* oracle = app.add_subcommand("oracle", "exact elimination distance to degree d");
  input(oracle);
  kd(oracle);
  common(oracle);

  auto* td = app.add_subcommand("treedepth", "exact treedepth (counting deletions)");
  input(td);
  common(td);

  auto* label = app.add_subcommand("label", "does a ported component satisfy a sequence");
  input(label);
  kd(label);
  common(label);
  label->add_option("--ports", f.ports, "ports file")->required();
  label->add_option("--sequence", f.sequence, "sequence file")->required();
  label->add_option("--model", f.model, "grid minor model file");

  auto* vorder = app.add_subcommand("validate-order", "check an elimination order to degree d");
  input(vorder);
  kd(vorder);
  common(vorder);
  vorder->add_option("--order", f.order, "tree order file")->required();

  auto* vmodel = app.add_subcommand("validate-model", "check a grid minor model");
  input(vmodel);
  common(vmodel);
  vmodel->add_option("--model", f.model, "grid minor model file")->required();

  auto* gen = app.add_subcommand("gen-grid", "generate a decorated planar grid instance");
  kd(gen);
  common(gen);
  gen->add_option("--m", f.m, "grid side")->required();
  gen->add_option("--hubs", f.hubs, "number of planted hubs");
  gen->add_option("--hub-degree", f.hub_degree, "hub degree (default k+d+1)");
  gen->add_option("--subdivide", f.subdivide, "number of subdivided grid edges");
  gen->add_option("--pendants", f.pendants, "number of pendant leaves");
  gen->add_option("--seed", f.seed, "random seed");
  gen->add_option("--style", f.style, "single|brick");
  gen->add_option("--output", f.output, "write PREFIX.txt and PREFIX.model");

  std::vector<const char*> argv{"elimdeg"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    out << json{{"error", e.what()}}.dump(2) << "\n";
    return kInputError;
  }

  try {
    if (*decide) return cmd_decide(f, out);
    if (*oracle) return cmd_oracle(f, out);
    if (*td) return cmd_treedepth(f, out);
    if (*label) return cmd_label(f, out);
    if (*vorder) return cmd_validate_order(f, out);
    if (*vmodel) return cmd_validate_model(f, out);
    if (*gen) return cmd_gen_grid(f, out);
  } catch (const InputError& e) {
    out << json{{"error", e.what()}}.dump(2) << "\n";
    return kInputError;
  } catch (const ResourceError& e) {
    out << json{{"error", e.what()}, {"resource", true}}.dump(2) << "\n";
    return kResourceError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    out << json{{"error", e.what()}}.dump(2) << "\n";
    return kInternal;
  }
  return kInternal;
}

}  // namespace elimdeg::cli
