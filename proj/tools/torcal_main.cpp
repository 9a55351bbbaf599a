#include "CLI11.hpp"
#include "torcal/selftest.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

using namespace torcal;
using diagram::Level;
using gralg::Window;
using lattice::GroupName;
using lattice::GroupSpec;
using lattice::SubgroupPoset;

namespace {

struct CommonArgs {
  std::string group = "SO3";
  long N = 4;
  std::string window;
  int jobs = 1;
};

Window parse_window(const std::string& s, Window fallback) {
  std::string text = s;
  if (text.empty()) {
    const char* env = std::getenv("TORCAL_WINDOW");
    if (env) text = env;
  }
  if (text.empty()) return fallback;
  auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("window must be lo:hi");
  return {std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
}

struct Workspace {
  SubgroupPoset poset;
  diagram::RingDiagram ra, rinv, rtw;
  cells::CellContext ctx;
  explicit Workspace(const CommonArgs& args)
      : poset(lattice::build_poset(
            GroupSpec::get(*lattice::parse_group_name(args.group)),
            lattice::TruncationParams{args.N})),
        ra(diagram::build_Ra(poset, 1)),
        rinv(diagram::build_Rinv(poset, 1)),
        rtw(diagram::build_Rtw(poset, 1)) {
    ctx = {&poset, &ra, &rinv};
  }
};

GroupName require_group(const std::string& s) {
  auto g = lattice::parse_group_name(s);
  if (!g) throw std::invalid_argument("unknown group: " + s);
  return *g;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

diagram::DiagramModule load_module(const Workspace& ws, const std::string& module_file,
                                   const std::string& cell_expr, const std::string& level,
                                   Window win) {
  Level lv = level == "N" ? Level::N : Level::G;
  const diagram::RingDiagram& diag = lv == Level::G ? ws.rinv : ws.ra;
  if (!module_file.empty()) {
    auto spec = serialize::module_spec_from_json(diag, read_file(module_file));
    return diagram::assemble(diag, lv, spec, win);
  }
  auto expr = cells::parse_cell_expr(ws.poset, cell_expr);
  if (!expr) throw std::invalid_argument("cannot parse cell expression: " + cell_expr);
  return cells::pi_A_expr(ws.ctx, *expr, lv, win);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"torcal: exact calculations in the algebraic model of toral equivariant spectra"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string module_file, cell_x = "sphere", cell_y = "sphere", level = "G";
  std::string out_file, format = "tsv", which = "theta_star", target_group;
  bool list_cells = false, quick = false;
  unsigned long long seed = 7;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--group", args.group, "Circle, O2, SO3 (Torus2/SU3: lattice commands only)");
    cmd->add_option("--N", args.N, "truncation: include C_1..C_N and the torus");
    cmd->add_option("--window", args.window, "degree window lo:hi (or TORCAL_WINDOW)");
    cmd->add_option("--jobs", args.jobs, "parallelism knob");
  };

  auto* poset_cmd = app.add_subcommand("poset", "emit the truncated subgroup poset");
  add_common(poset_cmd);
  auto* structure_cmd = app.add_subcommand("structure", "component structures and verdicts");
  add_common(structure_cmd);
  auto* rings_cmd = app.add_subcommand("rings", "the three ring diagrams on flags");
  add_common(rings_cmd);
  auto* qce_cmd = app.add_subcommand("check-qce", "quasi-coherence/extension/continuity report");
  add_common(qce_cmd);
  qce_cmd->add_option("--module", module_file, "module literal (JSON)");
  qce_cmd->add_option("--cell", cell_x, "cell expression instead of a file");
  qce_cmd->add_option("--level", level, "G or N");
  auto* normal_cmd = app.add_subcommand("normal", "normality of the equivariant stalks");
  add_common(normal_cmd);
  normal_cmd->add_option("--module", module_file, "module literal (JSON)");
  normal_cmd->add_option("--cell", cell_x, "cell expression instead of a file");
  auto* resolve_cmd = app.add_subcommand("resolve", "injective resolution of a module");
  add_common(resolve_cmd);
  resolve_cmd->add_option("--module", module_file, "module literal (JSON)");
  resolve_cmd->add_option("--cell", cell_x, "cell expression instead of a file");
  auto* ext_cmd = app.add_subcommand("ext", "Ext table between cell images");
  add_common(ext_cmd);
  ext_cmd->add_option("--X", cell_x, "source cell expression");
  ext_cmd->add_option("--Y", cell_y, "target cell expression");
  ext_cmd->add_option("--out", out_file, "write the TSV table here");
  auto* e2_cmd = app.add_subcommand("e2", "Adams E2 page for a pair of cells");
  add_common(e2_cmd);
  e2_cmd->add_option("--X", cell_x, "source cell expression");
  e2_cmd->add_option("--Y", cell_y, "target cell expression");
  e2_cmd->add_option("--format", format, "tsv or json");
  e2_cmd->add_option("--out", out_file, "write the table here");
  auto* cells_cmd = app.add_subcommand("cells", "the cell catalog");
  add_common(cells_cmd);
  cells_cmd->add_flag("--list", list_cells, "list the catalog");
  auto* change_cmd = app.add_subcommand("change-groups", "equal-rank change of groups");
  add_common(change_cmd);
  change_cmd->add_option("--cell", cell_x, "cell expression");
  change_cmd->add_option("--to", target_group, "target group (equal rank)")->required();
  change_cmd->add_option("--which", which, "theta_star, theta_upper, theta_shriek");
  auto* selftest_cmd = app.add_subcommand("selftest", "run the acceptance suite");
  add_common(selftest_cmd);
  selftest_cmd->add_option("--seed", seed, "corpus seed");
  selftest_cmd->add_flag("--quick", quick, "trimmed corpus sizes");

  CLI11_PARSE(app, argc, argv);

  try {
    if (poset_cmd->parsed()) {
      Workspace ws(args);
      std::cout << serialize::poset_to_json(ws.poset) << "\n";
    } else if (structure_cmd->parsed()) {
      GroupName g = require_group(args.group);
      auto poset = lattice::build_poset(GroupSpec::get(g), lattice::TruncationParams{args.N});
      auto on_subs = lattice::component_structure(poset, 0, lattice::StructureKind::Lie, false);
      auto on_flags = lattice::component_structure(poset, 1);
      auto [d0, n0] = lattice::check_structure_flags(on_subs);
      auto [d1, n1] = lattice::check_structure_flags(on_flags);
      for (std::size_t i = 0; i < on_subs.flags.size(); ++i)
        std::cout << poset.subgroups[on_subs.flags[i].top()].label() << "\tW^e order "
                  << on_subs.we[i].size() << "\tW^d order " << on_subs.residual_order(int(i))
                  << "\n";
      std::cout << "subgroup level: decreasing=" << (d0 ? "yes" : "no")
                << " normal=" << (n0 ? "yes" : "no") << "\n";
      std::cout << "flag level: decreasing=" << (d1 ? "yes" : "no")
                << " normal=" << (n1 ? "yes" : "no") << "\n";
    } else if (rings_cmd->parsed()) {
      Workspace ws(args);
      std::cout << serialize::ring_tables_to_json(ws.ra, ws.rinv, ws.rtw) << "\n";
    } else if (qce_cmd->parsed()) {
      Workspace ws(args);
      Window win = parse_window(args.window, {-24, 4});
      auto m = load_module(ws, module_file, cell_x, level, win);
      auto rep = diagram::check_qce(m);
      std::cout << serialize::qce_report_to_json(m, rep) << "\n";
      return rep.qce() && rep.f_continuous ? 0 : 1;
    } else if (normal_cmd->parsed()) {
      Workspace ws(args);
      Window win = parse_window(args.window, {-24, 4});
      auto m = load_module(ws, module_file, cell_x, "N", win);
      bool all_normal = true;
      for (std::size_t i = 0; i < ws.ra.flags.size(); ++i) {
        if (ws.ra.flags[i].length() != 0) continue;
        if (!m.values[i].has_weyl) continue;
        auto rep = gralg::is_normal_module(m.values[i]);
        all_normal = all_normal && rep.normal;
        std::cout << ws.ra.flag_name(int(i)) << "\t" << (rep.normal ? "normal" : "not normal");
        if (rep.witness_degree) std::cout << "\twitness degree " << *rep.witness_degree;
        std::cout << "\n";
      }
      int wit = -1;
      std::cout << "counit: " << (diagram::counit_check(m, &wit) ? "isomorphism" : "fails")
                << "\n";
      return all_normal ? 0 : 1;
    } else if (resolve_cmd->parsed()) {
      Workspace ws(args);
      Window win = parse_window(args.window, {-36, 12});
      auto m = load_module(ws, module_file, cell_x, "G", win);
      auto res = homalg::injective_resolution(m, 1 + ws.poset.spec->rank, false);
      std::cout << "length " << res.length << ", exact " << (res.exact ? "yes" : "NO")
                << ", terminated " << (res.terminated ? "yes" : "NO") << "\n";
      for (std::size_t s = 0; s < res.terms.size(); ++s) {
        std::cout << "I^" << s << ":";
        for (auto& summand : res.terms[s].summands)
          std::cout << " f_(" << ws.poset.subgroups[summand.subgroup].label() << ")["
                    << summand.payload.summands.size() << " summands]";
        std::cout << "\n";
      }
      if (!res.terminated) throw std::logic_error("resolution exceeded the rank bound");
      return res.exact ? 0 : 1;
    } else if (ext_cmd->parsed()) {
      Workspace ws(args);
      Window tw = parse_window(args.window, {-16, 8});
      Window mw = tw.padded(20);
      auto mx = load_module(ws, "", cell_x, "G", mw);
      auto my = load_module(ws, "", cell_y, "G", mw);
      auto table = homalg::ext(mx, my, tw);
      std::string tsv = serialize::ext_table_to_tsv(table);
      if (!out_file.empty()) std::ofstream(out_file) << tsv;
      std::cout << tsv;
    } else if (e2_cmd->parsed()) {
      Workspace ws(args);
      Window tw = parse_window(args.window, {-16, 8});
      auto x = cells::parse_cell_expr(ws.poset, cell_x);
      auto y = cells::parse_cell_expr(ws.poset, cell_y);
      if (!x || !y) throw std::invalid_argument("cannot parse cell expressions");
      auto page = adams::e2_page(ws.ctx, *x, *y, tw, tw.padded(20));
      auto rep = adams::degeneracy_report(page);
      std::string text = format == "json" ? serialize::e2_page_to_json(page, rep)
                                          : serialize::ext_table_to_tsv(page.table);
      if (!out_file.empty()) std::ofstream(out_file) << text;
      std::cout << text;
      if (format != "json") {
        std::cout << "# collapse at E_" << page.collapse_at << "\n";
        for (auto& [line, total] : rep.converged)
          std::cout << "# converged t-s=" << line << ": " << total << "\n";
        for (int line : rep.ambiguous) std::cout << "# ambiguous t-s=" << line << "\n";
      }
    } else if (cells_cmd->parsed()) {
      Workspace ws(args);
      for (auto& cell : cells::catalog(ws.poset))
        std::cout << cells::cell_name(ws.poset, cell) << "\n";
    } else if (change_cmd->parsed()) {
      Workspace ws(args);
      Window win = parse_window(args.window, {-24, 8});
      CommonArgs target_args = args;
      target_args.group = target_group;
      Workspace wt(target_args);
      auto expr = cells::parse_cell_expr(ws.poset, cell_x);
      if (!expr) throw std::invalid_argument("cannot parse cell expression");
      cells::ChangeKind kind = which == "theta_upper" ? cells::ChangeKind::ThetaUpperStar
                               : which == "theta_shriek" ? cells::ChangeKind::ThetaShriek
                                                         : cells::ChangeKind::ThetaStar;
      diagram::DiagramModule m;
      if (kind == cells::ChangeKind::ThetaStar) {
        m = cells::pi_A_expr(ws.ctx, *expr, Level::G, win);
        std::cout << serialize::module_to_json(cells::change_groups(m, wt.ra, kind)) << "\n";
      } else {
        m = cells::pi_A_expr(ws.ctx, *expr, Level::N, win);
        std::cout << serialize::module_to_json(cells::change_groups(m, wt.rinv, kind)) << "\n";
      }
    } else if (selftest_cmd->parsed()) {
      selftest::Options opt;
      opt.seed = seed;
      opt.jobs = args.jobs;
      opt.quick = quick;
      auto results = selftest::run_acceptance(opt);
      std::cout << selftest::report_text(results);
      return selftest::all_passed(results) ? 0 : 1;
    }
  } catch (const std::logic_error& e) {
    std::cerr << "internal invariant violation: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
