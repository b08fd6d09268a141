#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "bfss/pipeline.hpp"

using nlohmann::json;

namespace {

std::string kh_json(const bfss::PlatDiagram& d) {
  json ranks = json::object();
  for (auto [w, n] : bfss::reduced_kh(d, bfss::kFrozenKhGrading)) ranks[std::to_string(w)] = n;
  json j{{"schema_version", bfss::kSchemaVersion},
         {"input", {{"strands", d.strands}, {"braid", bfss::braid_str(d.word)}}},
         {"reduced_kh", ranks}};
  return j.dump(2);
}

void print_table(int genus, bool as_json) {
  bfss::StrandsAlgebra A(bfss::Pmc::linear(genus));
  const auto t = bfss::algebra_table(A, genus);
  if (as_json) {
    json prods = json::array(), ds = json::array();
    for (auto [a, b, c] : t.products) prods.push_back({t.names[a], t.names[b], t.names[c]});
    for (const auto& [x, d] : t.differentials) {
      json terms = json::array();
      for (int y : d) terms.push_back(t.names[y]);
      ds.push_back({{"of", t.names[x]}, {"terms", terms}});
    }
    json j{{"schema_version", bfss::kSchemaVersion},
           {"genus", genus},
           {"basis", t.names},
           {"products", prods},
           {"differentials", ds}};
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::cout << "A(Z) genus " << genus << ", weight " << genus << ": " << t.names.size() << " basic elements\n";
  for (const auto& n : t.names) std::cout << "  " << n << "\n";
  std::cout << "non-zero products:\n";
  for (auto [a, b, c] : t.products) std::cout << "  " << t.names[a] << " * " << t.names[b] << " = " << t.names[c] << "\n";
  if (t.differentials.empty()) {
    std::cout << "all differentials zero\n";
  } else {
    std::cout << "differentials:\n";
    for (const auto& [x, d] : t.differentials) {
      std::cout << "  d " << t.names[x] << " =";
      for (std::size_t i = 0; i < d.size(); ++i) std::cout << (i ? " + " : " ") << t.names[d[i]];
      std::cout << "\n";
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral sequence from reduced Khovanov homology to HF-hat of the branched double cover"};
  app.require_subcommand(1);

  int strands = 4;
  std::string braid, format = "text", dump_dir;
  bool oracle = false, no_reduce = false;
  int jobs = 1;
  auto* compute = app.add_subcommand("compute", "run the bordered pipeline on a plat closure");
  compute->add_option("--strands", strands, "number of strands (even, >= 4)")->required();
  compute->add_option("--braid", braid, "braid word, e.g. \"s2 s2^-1 s1\"")->required();
  compute->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
  compute->add_flag("--oracle", oracle, "compare E2 with reduced Khovanov homology");
  compute->add_option("--dump-stage", dump_dir, "write each intermediate object as JSON into DIR");
  compute->add_flag("--no-reduce", no_reduce, "skip cancellation between stages");
  compute->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  auto* kh = app.add_subcommand("kh", "reduced Khovanov homology of a plat closure");
  kh->add_option("--strands", strands)->required();
  kh->add_option("--braid", braid)->required();

  int genus = 1;
  bool table_json = false;
  auto* algebra = app.add_subcommand("algebra", "strands algebra utilities");
  algebra->require_subcommand(1);
  auto* table = algebra->add_subcommand("table", "multiplication table of the strands algebra");
  table->add_option("--genus", genus)->required()->check(CLI::Range(1, 4));
  table->add_flag("--json", table_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*compute) {
      bfss::PipelineOptions opts;
      opts.reduce = !no_reduce;
      opts.oracle = oracle;
      opts.dump_dir = dump_dir;
      opts.jobs = jobs;
      const auto report = bfss::run_pipeline(bfss::parse_braid(braid, strands), opts);
      std::cout << (format == "json" ? bfss::to_json(report) : bfss::to_text(report));
      if (format == "json") std::cout << "\n";
    } else if (*kh) {
      std::cout << kh_json(bfss::parse_braid(braid, strands)) << "\n";
    } else if (*table) {
      print_table(genus, table_json);
    }
  } catch (const bfss::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const bfss::InvariantError& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
