#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "bfss/bordered.hpp"
#include "bfss/khovanov.hpp"
#include "bfss/sscube.hpp"

namespace bfss {

PlatDiagram parse_braid(const std::string& text, int strands);
std::string braid_str(const std::vector<Generator>& word);

struct PipelineOptions {
  bool reduce = true;
  bool oracle = false;
  std::string dump_dir;  // empty: no dumps
  int jobs = 1;
};

struct StageInfo {
  std::string name;
  int generators = 0;
  std::size_t terms = 0;
  double seconds = 0;
};

enum class Verdict { Pass, Fail, Skipped };
const char* verdict_str(Verdict v);

struct PipelineReport {
  PlatDiagram input;
  int genus = 0;
  std::vector<StageInfo> stages;
  SpectralSequence ss;
  Verdict verdict = Verdict::Skipped;
  std::map<int, int> kh;  // oracle ranks when requested
};

inline constexpr int kSchemaVersion = 1;

// Holds the genus-dependent pieces (algebra, CFAA(Id), CFA of the plat, DA
// bimodules per crossing) so that many braids of one genus share them.
class Pipeline {
 public:
  explicit Pipeline(int genus, PipelineOptions opts = {});

  int genus() const { return genus_; }
  const StrandsAlgebra& algebra() const { return *alg_; }

  // CFDA of the Dehn twist for s_index^sign, reduced unless disabled.
  const DABimodule& dehn_twist(int index, int sign);
  const AInfModule& cfa();
  // CFD of the plat handlebody on the tau side after applying word[start..].
  const DS& suffix(const std::vector<Generator>& word, std::size_t start);

  ChainComplex complex(const PlatDiagram& d);
  PipelineReport run(const PlatDiagram& d);

 private:
  void stage(const std::string& name, int gens, std::size_t terms, double secs);
  void prepare(const std::vector<Generator>& word);

  int genus_;
  PipelineOptions opts_;
  std::unique_ptr<StrandsAlgebra> alg_;
  std::unique_ptr<AABimodule> mor_;
  std::unique_ptr<AInfModule> cfa_;
  std::map<std::pair<int, int>, DABimodule> das_;
  std::map<std::vector<Generator>, DS> suffixes_;
  std::vector<StageInfo> stages_;
  std::mutex mu_;
};

PipelineReport run_pipeline(const PlatDiagram& d, const PipelineOptions& opts = {});

std::string to_json(const PipelineReport& r);
std::string to_text(const PipelineReport& r);

}  // namespace bfss
