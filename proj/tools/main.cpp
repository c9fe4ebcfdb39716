#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "run.hpp"

int main(int argc, char** argv) {
  using namespace boolpow;
  cli::RunConfig cfg;
  CLI::App app{"Filtered Boolean powers: constructions and checks"};
  app.require_subcommand(1);
  const std::map<std::string, std::string> about{
      {"inspect-algebra", "simplicity, abelianness, idempotents, automorphisms, subalgebras, Mal'cev term"},
      {"build-power", "enumerate the elements of a filtered power up to a depth"},
      {"amalgamate", "amalgamate two embeddings of a finite power"},
      {"extend-homogeneity", "extend an embedding into the filtered power along an embedding of powers"},
      {"fraisse-chain", "stages of the limit chain and a back-and-forth run against a shifted copy"},
      {"free-algebra", "finite-rank free algebra, its product decomposition and theta classes"},
      {"reduce-idempotents", "isomorphism onto one point per automorphism orbit of filters"},
      {"demo-two-ends", "the two-ended exchange that has no extension to Cantor space"},
      {"factor-homeo", "write a point-fixing homeomorphism as a product of three stabilizer elements"},
      {"bergman-growth", "word growth of a generating set acting on cylinders of a depth"}};
  for (const auto& name : cli::command_names()) {
    auto* sub = app.add_subcommand(name, about.at(name));
    sub->add_option("--alg", cfg.alg, "algebra JSON file");
    sub->add_option("--builtin", cfg.builtin, "builtin algebra name");
    sub->add_option("--rank", cfg.rank, "free algebra rank")->capture_default_str();
    sub->add_option("--depth", cfg.depth, "truncation depth or number of stages")->capture_default_str();
    sub->add_option("--budget", cfg.budget, "search and size budget")->capture_default_str();
    sub->add_option("--seed", cfg.seed, "seed for sampled inputs")->capture_default_str();
    sub->add_option("--out", cfg.out, "write the report here instead of stdout");
    sub->add_option("--points", cfg.points, "number of distinguished points")->capture_default_str();
    sub->add_option("--filters", cfg.filters, "filter idempotent for each point");
    sub->add_option("--phi", cfg.phi, "embedding JSON file");
    sub->add_option("--psi", cfg.psi, "embedding JSON file");
    sub->add_option("--sigma", cfg.sigma, "homeomorphism JSON file");
    sub->add_option("--partition", cfg.partition, "good partition JSON file");
    sub->add_option("--gens", cfg.gens, "generators JSON file");
    sub->add_option("--steps", cfg.steps, "word length bound")->capture_default_str();
    sub->add_option("--limit", cfg.limit, "elements listed")->capture_default_str();
    sub->callback([&cfg, name] { cfg.command = name; });
  }
  CLI11_PARSE(app, argc, argv);

  io::Json report;
  int code = 0;
  try {
    report = cli::run(cfg);
    code = report.value("verified", false) ? 0 : 1;
  } catch (const Error& e) {
    report = {{"command", cfg.command}, {"error", std::string(errc_name(e.code()))}, {"message", e.what()}};
    code = 2;
  }
  std::string text = report.dump(2) + "\n";
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.out);
    if (!out) {
      std::cerr << "cannot write " << cfg.out << "\n";
      return 2;
    }
    out << text;
  }
  return code;
}
