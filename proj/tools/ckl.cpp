// Command-line interface: verify the Champanerkar-Kofman-Lalin inequality on
// the example catalog, compute Mahler measures of user graphs, spanning-tree
// entropies of the shipped lattices, and the appendix identity checks.
//
// Exit codes: 0 all requested checks pass, 1 a verification failed,
// 2 usage or data error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ckl/catalog.hpp"
#include "ckl/kasteleyn.hpp"
#include "ckl/mahler.hpp"
#include "ckl/spanning_tree.hpp"
#include "ckl/verify.hpp"

namespace {

int run_list() {
  std::printf("%-22s %-22s %8s %8s %s\n", "example", "tait graph", "dimer V", "dimer E",
              "notes");
  for (const std::string& name : ckl::catalog::example_names()) {
    const auto ex = ckl::catalog::example_record(name);
    std::string notes;
    if (ex.isoradial) notes += "isoradial closed form; ";
    if (!ex.face_degrees.empty()) {
      notes += "link faces {";
      for (std::size_t i = 0; i < ex.face_degrees.size(); ++i)
        notes += (i ? "," : "") + std::to_string(ex.face_degrees[i]);
      notes += "}";
    }
    std::printf("%-22s %-22s %8zu %8zu %s\n", name.c_str(), ex.tait.name.c_str(),
                ex.dimer.vertices.size(), ex.dimer.edges.size(), notes.c_str());
  }
  std::printf("\nlattices for `ckl trees` / `ckl graph`:");
  for (const auto& [name, _] : ckl::catalog::lattice_registry()) std::printf(" %s", name.c_str());
  std::printf("\n");
  return 0;
}

void write_or_print(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open output file '" + out_path + "'");
  out << text;
}

int run_verify(std::vector<std::string> examples, bool all,
               const std::vector<std::string>& methods, int grid, std::vector<int> schedule,
               const std::string& format, const std::string& out_path) {
  ckl::VerifyConfig cfg;
  if (!methods.empty()) cfg.methods = methods;
  cfg.grid = grid;
  if (!schedule.empty()) cfg.n_schedule = schedule;

  bool want_appendix = all;
  if (all) {
    examples = ckl::catalog::example_names();
  } else {
    std::vector<std::string> keep;
    for (const auto& e : examples) {
      if (e == "appendix") want_appendix = true;
      else keep.push_back(e);
    }
    examples = keep;
  }
  if (examples.empty() && !want_appendix) {
    std::cerr << "nothing selected: use --example NAME or --all\n";
    return 2;
  }

  std::vector<ckl::CklReport> reports;
  for (const std::string& name : examples) {
    const auto ex = ckl::catalog::example_record(name);  // throws on unknown name
    reports.push_back(ckl::verify_ckl(ex, cfg));
    const ckl::CklReport& r = reports.back();
    std::printf("%-22s 2piM=%.9f", r.example.c_str(), r.two_pi_m);
    if (r.vol_bipyramid) std::printf("  vol=%.6f  margin=%+.6f", *r.vol_bipyramid, *r.margin);
    else std::printf("  vol=n/a");
    std::printf("  spread=%.1e  %s\n", r.agreement_spread, r.pass ? "pass" : "FAIL");
    if (!r.notes.empty()) std::printf("    note: %s\n", r.notes.c_str());
  }
  std::optional<ckl::AppendixReport> appendix;
  if (want_appendix) {
    appendix = ckl::appendix_identity_check();
    std::printf("%-22s %s\n", "appendix", appendix->pass ? "pass" : "FAIL");
  }

  if (!out_path.empty() || format == "csv") {
    const std::string text = format == "csv"
                                 ? ckl::report_csv(reports)
                                 : ckl::report_json(reports, appendix).dump(2);
    write_or_print(text, out_path);
  }
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.pass;
  if (appendix) ok = ok && appendix->pass;
  return ok ? 0 : 1;
}

int run_mahler(const std::string& path, int grid) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const ckl::PeriodicGraph g = ckl::load_graph(buf.str());
  const auto assignment = ckl::assign_kasteleyn_signs(g);
  const auto poly = ckl::char_poly(g, assignment);
  const auto jensen = ckl::mahler_jensen(poly);
  const auto quad = ckl::mahler_quadrature(poly, grid);
  nlohmann::json j;
  j["graph"] = g.name;
  j["characteristic_polynomial"] = poly.to_json(1e-12);
  j["mahler"] = {{"jensen", jensen.to_json()}, {"quadrature", quad.to_json()}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_trees(const std::string& lattice, std::vector<int> schedule) {
  const ckl::PeriodicGraph g = ckl::catalog::lattice_by_name(lattice);
  if (schedule.empty()) schedule = {16, 32, 64, 128};
  const ckl::TreeEntropy t = ckl::tree_entropy_fd(g, schedule);
  nlohmann::json j;
  j["lattice"] = lattice;
  j["per_fundamental_domain"] = t.per_fd;
  j["per_vertex"] = t.per_vertex;
  j["vertices_per_domain"] = t.n_v;
  j["method"] = t.method;
  j["error_estimate"] = t.error_estimate;
  j["schedule"] = t.schedule;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_appendix(double tol) {
  const ckl::AppendixReport rep = ckl::appendix_identity_check(tol);
  for (const auto& c : rep.checks)
    std::printf("%-42s residual=%.3e tol=%.1e %s\n", c.name.c_str(), c.residual, c.tolerance,
                c.pass ? "pass" : "FAIL");
  std::printf("closed forms: chang_shrock=%.12f dilog=%.12f\n", rep.chang_shrock,
              rep.dilog_form);
  return rep.pass ? 0 : 1;
}

int run_graph(const std::string& lattice, const std::string& out_path, bool lift) {
  ckl::PeriodicGraph g = ckl::catalog::lattice_by_name(lattice);
  if (lift) g = ckl::temperley_lift(g);
  write_or_print(ckl::save_graph(g), out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toroidal dimer models, Mahler measures and bipyramid volumes"};
  app.require_subcommand(1);

  app.add_subcommand("list", "List the example catalog");

  auto* verify = app.add_subcommand("verify", "Verify 2*pi*M(P) >= bipyramid volume");
  std::vector<std::string> examples;
  bool all = false;
  std::vector<std::string> methods;
  int grid = 512;
  std::vector<int> schedule;
  std::string format = "json", out_path;
  verify->add_option("--example", examples, "example name (repeatable; 'appendix' allowed)")
      ->delimiter(',');
  verify->add_flag("--all", all, "verify all examples plus the appendix identities");
  verify->add_option("--methods", methods, "subset of jensen,quadrature,isoradial,trees")
      ->delimiter(',');
  verify->add_option("--grid", grid, "quadrature grid size")->check(CLI::PositiveNumber);
  verify->add_option("--n-schedule", schedule, "tree-entropy quotient sizes")->delimiter(',');
  verify->add_option("--format", format, "report format")
      ->check(CLI::IsMember({"json", "csv"}));
  verify->add_option("--out", out_path, "write the report to this file");

  auto* mahler = app.add_subcommand("mahler", "Mahler measure of a graph file");
  std::string graph_path;
  int mahler_grid = 512;
  mahler->add_option("--graph", graph_path, "periodic graph JSON file")->required();
  mahler->add_option("--grid", mahler_grid, "quadrature grid size")->check(CLI::PositiveNumber);

  auto* trees = app.add_subcommand("trees", "Spanning-tree entropy of a lattice");
  std::string lattice;
  std::vector<int> trees_schedule;
  trees->add_option("--lattice", lattice, "lattice name (see `ckl list`)")->required();
  trees->add_option("--n-schedule", trees_schedule, "quotient sizes")->delimiter(',');

  auto* appendix = app.add_subcommand("appendix-check", "Verify the dilogarithm identities");
  double tol = 1e-9;
  appendix->add_option("--tol", tol, "residual tolerance")->check(CLI::PositiveNumber);

  auto* graph = app.add_subcommand("graph", "Export a lattice as a graph JSON file");
  std::string graph_lattice, graph_out;
  bool graph_lift = false;
  graph->add_option("--lattice", graph_lattice, "lattice name")->required();
  graph->add_option("--out", graph_out, "output path (stdout if omitted)");
  graph->add_flag("--lift", graph_lift, "export the Temperley lift instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand("list")) return run_list();
    if (app.got_subcommand("verify"))
      return run_verify(examples, all, methods, grid, schedule, format, out_path);
    if (app.got_subcommand("mahler")) return run_mahler(graph_path, mahler_grid);
    if (app.got_subcommand("trees")) return run_trees(lattice, trees_schedule);
    if (app.got_subcommand("appendix-check")) return run_appendix(tol);
    if (app.got_subcommand("graph")) return run_graph(graph_lattice, graph_out, graph_lift);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
