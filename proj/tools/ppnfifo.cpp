#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ppnfifo/cli/report.hpp"
#include "ppnfifo/errors.hpp"

namespace {

namespace cli = ppnfifo::cli;

// Exit codes.
constexpr int kOk = 0;
constexpr int kInternal = 1;
constexpr int kInput = 2;
constexpr int kBudget = 3;
constexpr int kOracle = 4;

struct Common {
  std::string params;
  std::string format = "text";
  std::string out;
  bool no_oracle = false;
  std::string dump_trace;
  std::size_t budget = ppnfifo::presburger::kDefaultPointBudget;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--params", c.params, "Parameter values, k=v[,k=v]");
  cmd->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--out", c.out, "Write the report to FILE instead of stdout");
  cmd->add_flag("--no-oracle", c.no_oracle, "Skip the brute-force cross-check");
  cmd->add_option("--dump-trace", c.dump_trace, "Write per-channel traces (JSON) into DIR");
  cmd->add_option("--budget", c.budget, "Point budget for enumeration")->check(CLI::PositiveNumber);
}

cli::Options options(const Common& c) {
  cli::Options o;
  o.params = cli::parse_params(c.params);
  o.oracle = !c.no_oracle;
  if (!c.dump_trace.empty()) o.dump_trace = c.dump_trace;
  o.budget = c.budget;
  return o;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ppnfifo::ParseError("cannot write " + path);
  out << text;
}

int report_exit(const cli::Report& r) { return r.oracle_agreement.value_or(true) ? kOk : kOracle; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Channel pattern analysis and FIFO recovery for tiled process networks"};
  app.require_subcommand(1);

  Common ac;
  std::string a_model;
  std::string a_tiling;
  auto* analyze = app.add_subcommand("analyze", "Classify and size every channel");
  analyze->add_option("model", a_model, "Network model (JSON)")->required();
  analyze->add_option("--tiling", a_tiling, "Tiling description (JSON)");
  add_common(analyze, ac);

  Common fc;
  std::string f_model;
  std::string f_tiling;
  std::string f_network_out;
  auto* fifoize = app.add_subcommand("fifoize", "Split tiled channels and keep the ones that become FIFOs");
  fifoize->add_option("model", f_model, "Network model (JSON)")->required();
  fifoize->add_option("--tiling", f_tiling, "Tiling description (JSON)")->required();
  fifoize->add_option("--network-out", f_network_out, "Where to write the transformed network");
  add_common(fifoize, fc);

  std::vector<std::string> reports;
  std::optional<std::int64_t> d_fail;
  std::optional<std::int64_t> d_split;
  std::string d_format = "text";
  std::string d_out;
  std::string d_name = "-";
  auto* delta = app.add_subcommand("delta", "Storage change of split channels");
  delta->add_option("reports", reports, "ORIGINAL SPLIT report files (JSON)")->expected(0, 2);
  delta->add_option("--fail", d_fail, "size-fifo-fail");
  delta->add_option("--split", d_split, "size-fifo-split");
  delta->add_option("--name", d_name, "Kernel name for --fail/--split");
  delta->add_option("--format", d_format, "Output format")->check(CLI::IsMember({"text", "json"}));
  delta->add_option("--out", d_out, "Write to FILE instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (analyze->parsed()) {
      const auto net = ppnfifo::ppn::load_ppn(a_model);
      std::optional<ppnfifo::tiling::TilingMap> tilings;
      if (!a_tiling.empty()) tilings = ppnfifo::tiling::load_tilings(a_tiling);
      const auto r = cli::analyze(net, tilings ? &*tilings : nullptr, options(ac));
      emit(ac.format == "json" ? cli::to_json(r) : cli::to_text(r), ac.out);
      return report_exit(r);
    }
    if (fifoize->parsed()) {
      const auto net = ppnfifo::ppn::load_ppn(f_model);
      const auto tilings = ppnfifo::tiling::load_tilings(f_tiling);
      const auto run = cli::run_fifoize(net, tilings, options(fc));
      const std::string target =
          f_network_out.empty() ? std::filesystem::path(f_model).stem().stem().string() + ".fifo.ppn.json" : f_network_out;
      ppnfifo::ppn::save_ppn(run.network, target);
      emit(fc.format == "json" ? cli::to_json(run.report) : cli::to_text(run.report), fc.out);
      return report_exit(run.report);
    }
    if (delta->parsed()) {
      cli::SizeDelta d;
      std::string name = d_name;
      if (reports.size() == 2) {
        const auto original = cli::load_report(reports[0]);
        const auto split = cli::load_report(reports[1]);
        d = cli::delta_from_reports(original, split);
        name = original.network;
      } else if (reports.empty() && d_fail && d_split) {
        d = {*d_fail, *d_split};
      } else {
        throw ppnfifo::ParseError("delta needs two report files or both --fail and --split");
      }
      if (d_format == "json") {
        emit(nlohmann::json{{"kernel", name}, {"size_fifo_fail", d.fail}, {"size_fifo_split", d.split},
                            {"delta", d.delta()}}
                     .dump(2) +
                 "\n",
             d_out);
      } else {
        emit(cli::delta_table(name, d), d_out);
      }
      return kOk;
    }
  } catch (const ppnfifo::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const ppnfifo::BudgetError& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
