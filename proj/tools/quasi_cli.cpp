// quasi: check quasi-measure instances, compute exterior measures, extend
// to the generated algebra, and run the exponential interval example.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "quasi/cli.hpp"

int main(int argc, char** argv) {
  using namespace quasi;
  RunConfig cfg;
  std::string variant = "restricted";
  std::string cover_mode = "all";
  std::string format = "text";
  std::string seeds = "0..100";
  std::size_t max_cover = 0;
  double tol = static_cast<double>(kDefaultExampleTolerance);

  CLI::App app{"Quasi-measure verification and extension"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--variant", variant, "Witness pool for items (iii)/(iv)")
      ->check(CLI::IsMember({"literal", "restricted"}));
  app.add_option("--cover-mode", cover_mode, "Covers enumerated for item (v)")
      ->check(CLI::IsMember({"all", "disjoint-only"}));
  app.add_option("--max-n", cfg.max_n, "Largest ground set for exhaustive 2^n loops")->check(CLI::Range(1, 24));
  app.add_option("--max-cover", max_cover, "Largest cover size for item (v) (default: coat size)")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "machine"}));
  app.add_option("--out", cfg.out_path, "Write the report to this file");

  auto* check = app.add_subcommand("check", "Check the quasi-measure axioms of an instance");
  check->add_option("instance", cfg.input_path, "Instance file")->required();

  auto* outer_cmd = app.add_subcommand("outer", "Exterior quasi-measure of one set");
  outer_cmd->add_option("instance", cfg.input_path, "Instance file")->required();
  outer_cmd->add_option("--set", cfg.set_expr, "Element labels or a set expression")->required();

  auto* extend_cmd = app.add_subcommand("extend", "Extend to the generated algebra and verify");
  extend_cmd->add_option("instance", cfg.input_path, "Instance file")->required();

  auto* example = app.add_subcommand("example", "Exponential quasi-measure on the interval coat");
  example->add_option("--samples", cfg.samples, "Sampled endpoint tuples");
  example->add_option("--seed", cfg.seed, "Sampling seed");
  example->add_option("--tol", tol, "Tolerance for real identities")->check(CLI::PositiveNumber);

  auto* search = app.add_subcommand("search", "Seeded search for extension-theorem counterexamples");
  search->add_option("--seeds", seeds, "Half-open seed range A..B");
  search->add_option("--ground-max", cfg.search_max_n, "Largest generated ground set")->check(CLI::Range(1, 16));
  search->add_option("--coat-max", cfg.search_max_coat, "Largest generated coat")->check(CLI::Range(2, 16));

  try {
    app.parse(argc, argv);
    cfg.variant = variant == "literal" ? Variant::literal : Variant::restricted;
    cfg.cover_mode = cover_mode == "all" ? CoverMode::all : CoverMode::disjoint_only;
    cfg.format = format == "machine" ? OutputFormat::machine : OutputFormat::text;
    if (max_cover > 0) cfg.max_cover = max_cover;
    cfg.tol = static_cast<Real>(tol);
    std::tie(cfg.seeds_begin, cfg.seeds_end) = parse_seed_range(seeds);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  if (check->parsed()) cfg.command = Command::check;
  if (outer_cmd->parsed()) cfg.command = Command::outer;
  if (extend_cmd->parsed()) cfg.command = Command::extend;
  if (example->parsed()) cfg.command = Command::example;
  if (search->parsed()) cfg.command = Command::search;
  return run(cfg, std::cout, std::cerr);
}
