// Command-line front end: dist, transform, tune, roc and loci.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "compknn/cli.hpp"
#include "compknn/error.hpp"
#include "compknn/io.hpp"

using compknn::cli::Command;
using compknn::cli::Format;
using compknn::cli::RunConfig;

namespace {

struct RawOptions {
  std::string family = "esov";
  std::string alphas = "1";
  std::string ks = "1";
  std::string format;
  std::string label;
  std::vector<std::string> exclude;
  bool keep_all = false;
  std::string reference, x, w;
  std::uint64_t seed = 0;
};

void add_data_options(CLI::App* sub, RunConfig& cfg, RawOptions& raw) {
  sub->add_option("input,-i,--input", cfg.input, "CSV with a header row and a class column")
      ->check(CLI::ExistingFile);
  sub->add_option("--label", raw.label, "class column (default: last column)");
  sub->add_option("--exclude", raw.exclude, "columns to drop (default: RI)");
  sub->add_flag("--keep-all", raw.keep_all, "do not drop the RI column by default");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-NN classification of compositional data under power-transformed simplex metrics"};
  app.set_version_flag("--version", std::string(compknn::cli::kToolName) + " " +
                                        compknn::cli::kVersion);
  app.require_subcommand(1);

  RunConfig cfg;
  RawOptions raw;
  std::map<CLI::App*, Command> commands;

  auto add_metric = [&](CLI::App* sub, bool grid) {
    sub->add_option("--family", raw.family, "esov | tc | aitchison | hellinger | angular");
    sub->add_option(grid ? "--alphas,--alpha" : "--alpha", raw.alphas,
                    grid ? "alpha grid: start:end:step or a,b,c" : "power parameter");
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("-o,--output", cfg.output, "output path (default: stdout)");
    sub->add_option("--format", raw.format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  auto* dist = app.add_subcommand("dist", "distance between two compositions, or all rows of --input");
  add_metric(dist, false);
  dist->add_option("--x", raw.x, "first composition, comma separated");
  dist->add_option("--w", raw.w, "second composition, comma separated");
  add_data_options(dist, cfg, raw);
  add_output(dist);
  commands[dist] = Command::Dist;

  auto* transform = app.add_subcommand("transform", "power-transform a dataset (ternary coordinates for D = 3)");
  add_metric(transform, false);
  add_data_options(transform, cfg, raw);
  add_output(transform);
  commands[transform] = Command::Transform;

  auto* tune = app.add_subcommand("tune", "repeated stratified holdout over an (alpha, k) grid");
  add_metric(tune, true);
  add_data_options(tune, cfg, raw);
  tune->add_option("--k", raw.ks, "k grid: start:end[:step] or a,b,c");
  tune->add_option("--B", cfg.replications, "replications");
  tune->add_option("--test-n", cfg.test_total, "test rows per replication")->required();
  tune->add_option("--seed", raw.seed, "random seed")->required();
  tune->add_option("--threads", cfg.threads, "worker threads");
  add_output(tune);
  commands[tune] = Command::Tune;

  auto* roc = app.add_subcommand("roc", "leave-one-out membership scores and per-class ROC curves");
  add_metric(roc, false);
  add_data_options(roc, cfg, raw);
  roc->add_option("--k", raw.ks, "number of neighbours");
  roc->add_option("-o,--output", cfg.output, "output directory (default: .)");
  commands[roc] = Command::Roc;

  auto* loci = app.add_subcommand("loci", "distance field over the ternary lattice");
  add_metric(loci, false);
  loci->add_option("--n", cfg.resolution, "lattice resolution");
  loci->add_option("--reference", raw.reference, "reference composition (default: barycentre)");
  add_output(loci);
  commands[loci] = Command::Loci;

  CLI11_PARSE(app, argc, argv);

  try {
    CLI::App* chosen = app.get_subcommands().front();
    cfg.command = commands.at(chosen);
    const auto family = compknn::parse_family(raw.family);
    if (!family) {
      std::cerr << "error: unknown metric family '" << raw.family << "'\n";
      return 2;
    }
    cfg.family = *family;
    cfg.alphas = compknn::parse_real_grid(raw.alphas);
    cfg.ks = compknn::parse_count_grid(raw.ks);
    if (!raw.label.empty()) cfg.label_column = raw.label;
    if (raw.keep_all) cfg.exclude.clear();
    if (!raw.exclude.empty()) cfg.exclude = raw.exclude;
    if (cfg.command == Command::Tune) cfg.seed = raw.seed;
    if (raw.format.empty()) {
      cfg.format = cfg.command == Command::Loci ? Format::Csv : Format::Json;
    } else {
      cfg.format = raw.format == "csv" ? Format::Csv : Format::Json;
    }
    if (!raw.reference.empty()) cfg.reference = compknn::parse_real_list(raw.reference);
    if (!raw.x.empty()) cfg.x = compknn::parse_real_list(raw.x);
    if (!raw.w.empty()) cfg.w = compknn::parse_real_list(raw.w);
  } catch (const compknn::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return compknn::cli::run(cfg, std::cout, std::cerr);
}
