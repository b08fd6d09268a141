#include "bfss/pipeline.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

#include "json.hpp"

namespace bfss {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::size_t terms(const AInfModule& M) { return M.num_terms(); }

}  // namespace

PlatDiagram parse_braid(const std::string& text, int strands) {
  if (strands % 2) throw ValidationError("strand count must be even, got " + std::to_string(strands));
  if (strands < 4) throw ValidationError("plat closures need at least 4 strands");
  static const std::regex tok(R"(s(\d+)(?:\^([+-]?1))?)");
  PlatDiagram d;
  d.strands = strands;
  std::istringstream is(text);
  std::string t;
  while (is >> t) {
    std::smatch m;
    if (!std::regex_match(t, m, tok)) throw ValidationError("malformed braid token '" + t + "'");
    const int i = std::stoi(m[1].str());
    const int sign = (m[2].matched && m[2].str()[0] == '-') ? -1 : 1;
    if (i == strands - 1)
      throw ValidationError("generator s" + std::to_string(i) + " is not allowed on " + std::to_string(strands) +
                            " strands: in the plat convention the last strand takes part in no crossing");
    if (i < 1 || i > strands - 2)
      throw ValidationError("generator s" + std::to_string(i) + " out of range for " + std::to_string(strands) +
                            " strands");
    d.word.push_back({i, sign});
  }
  return d;
}

std::string braid_str(const std::vector<Generator>& word) {
  std::string s;
  for (const auto& g : word) {
    if (!s.empty()) s += ' ';
    s += "s" + std::to_string(g.index);
    if (g.sign < 0) s += "^-1";
  }
  return s;
}

const char* verdict_str(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Skipped: return "skipped";
  }
  return "?";
}

Pipeline::Pipeline(int genus, PipelineOptions opts) : genus_(genus), opts_(std::move(opts)) {
  if (genus < 1) throw ValidationError("genus must be positive");
  alg_ = std::make_unique<StrandsAlgebra>(Pmc::linear(genus));
}

void Pipeline::stage(const std::string& name, int gens, std::size_t nterms, double secs) {
  std::lock_guard lk(mu_);
  stages_.push_back({name, gens, nterms, secs});
}

namespace {

void dump(const std::string& dir, const std::string& name, const std::string& body) {
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  std::ofstream(std::filesystem::path(dir) / (name + ".json")) << body << "\n";
}

std::string letter_name(int index, int sign) { return "s" + std::to_string(index) + (sign < 0 ? "m" : "p"); }

}  // namespace

const DABimodule& Pipeline::dehn_twist(int index, int sign) {
  {
    std::lock_guard lk(mu_);
    if (auto it = das_.find({index, sign}); it != das_.end()) return it->second;
  }
  prepare({{index, sign}});
  std::lock_guard lk(mu_);
  return das_.at({index, sign});
}

void Pipeline::prepare(const std::vector<Generator>& word) {
  if (!mor_) {
    auto t0 = Clock::now();
    DD id = cfdd_identity(*alg_);
    stage("cfdd_identity", id.size(), id.num_terms(), since(t0));
    dump(opts_.dump_dir, "1_cfdd_identity", to_json(id));
    t0 = Clock::now();
    mor_ = std::make_unique<AABimodule>(mor_dd_to_alg(id));
    stage("cfaa_identity", mor_->size(), mor_->num_terms(), since(t0));
    dump(opts_.dump_dir, "3_cfaa_identity", to_json(*mor_));
  }
  std::vector<std::pair<int, int>> todo;
  for (const auto& g : word) {
    std::pair key{g.index, g.sign};
    std::lock_guard lk(mu_);
    if (!das_.count(key) && std::find(todo.begin(), todo.end(), key) == todo.end()) todo.push_back(key);
  }
  if (todo.empty()) return;
  std::vector<DABimodule> built(todo.size());
  auto work = [&](std::size_t i) {
    auto [index, sign] = todo[i];
    auto t0 = Clock::now();
    DD cone = cfdd_dehn_twist(*alg_, curve_data(*alg_, index), sign);
    stage("cfdd_cone " + letter_name(index, sign), cone.size(), cone.num_terms(), since(t0));
    dump(opts_.dump_dir, "2_cfdd_cone_" + letter_name(index, sign), to_json(cone));
    t0 = Clock::now();
    DABimodule da = box(*mor_, cone);
    if (opts_.reduce) da = reduce(da);
    stage("cfda " + letter_name(index, sign), da.size(), da.num_terms(), since(t0));
    dump(opts_.dump_dir, "4_cfda_" + letter_name(index, sign), to_json(da));
    built[i] = std::move(da);
  };
  if (opts_.jobs > 1 && todo.size() > 1) {
    tbb::task_arena arena(opts_.jobs);
    arena.execute([&] { tbb::parallel_for(std::size_t(0), todo.size(), work); });
  } else {
    for (std::size_t i = 0; i < todo.size(); ++i) work(i);
  }
  std::lock_guard lk(mu_);
  for (std::size_t i = 0; i < todo.size(); ++i) das_.emplace(todo[i], std::move(built[i]));
}

const AInfModule& Pipeline::cfa() {
  if (!cfa_) {
    auto t0 = Clock::now();
    cfa_ = std::make_unique<AInfModule>(cfa_plat(*alg_));
    stage("cfa_plat", cfa_->size(), terms(*cfa_), since(t0));
    dump(opts_.dump_dir, "5_cfa_plat", to_json(*cfa_));
  }
  return *cfa_;
}

const DS& Pipeline::suffix(const std::vector<Generator>& word, std::size_t start) {
  std::vector<Generator> key(word.begin() + start, word.end());
  if (auto it = suffixes_.find(key); it != suffixes_.end()) return it->second;
  DS P;
  if (start == word.size()) {
    P = cfd_plat(*alg_, PlatSide::Tau);
    dump(opts_.dump_dir, "5_cfd_plat", to_json(P));
  } else {
    const DS& rest = suffix(word, start + 1);
    const auto& da = dehn_twist(word[start].index, word[start].sign);
    P = box(da, rest);
    if (opts_.reduce) P = reduce(P);
  }
  return suffixes_.emplace(std::move(key), std::move(P)).first->second;
}

ChainComplex Pipeline::complex(const PlatDiagram& d) {
  if (d.strands != 2 * genus_ + 2) throw ValidationError("strand count does not match the pipeline genus");
  for (const auto& g : d.word)
    if (g.index < 1 || g.index > d.strands - 2) throw ValidationError("braid generator out of range");
  prepare(d.word);
  auto t0 = Clock::now();
  const DS& P = suffix(d.word, 0);
  stage("cfd_tower", P.size(), P.num_terms(), since(t0));
  dump(opts_.dump_dir, "5_cfd_tower", to_json(P));
  const AInfModule& A = cfa();
  t0 = Clock::now();
  ChainComplex C = box(A, P);
  if (opts_.reduce) C = reduce(C, true);
  stage("final_complex", C.size(), C.num_terms(), since(t0));
  dump(opts_.dump_dir, "6_final_complex", to_json(C));
  return C;
}

PipelineReport Pipeline::run(const PlatDiagram& d) {
  {
    std::lock_guard lk(mu_);
    stages_.clear();
  }
  PipelineReport r;
  r.input = d;
  r.genus = genus_;
  ChainComplex C = complex(d);
  auto t0 = Clock::now();
  r.ss = spectral_sequence(C);
  stage("spectral_sequence", C.size(), C.num_terms(), since(t0));
  if (opts_.oracle) {
    t0 = Clock::now();
    r.kh = reduced_kh(d, kFrozenKhGrading);
    stage("khovanov_oracle", 0, 0, since(t0));
    const Page& e2 = r.ss.page(2);
    bool ok = true;
    for (int w = 0; w <= static_cast<int>(d.word.size()); ++w) {
      auto a = e2.ranks_by_weight.find(w);
      auto b = r.kh.find(w);
      ok &= (a == e2.ranks_by_weight.end() ? 0 : a->second) == (b == r.kh.end() ? 0 : b->second);
    }
    r.verdict = ok ? Verdict::Pass : Verdict::Fail;
  }
  std::lock_guard lk(mu_);
  r.stages = stages_;
  return r;
}

PipelineReport run_pipeline(const PlatDiagram& d, const PipelineOptions& opts) {
  if (d.strands < 4 || d.strands % 2) throw ValidationError("plat closures need an even number of at least 4 strands");
  Pipeline p(d.strands / 2 - 1, opts);
  return p.run(d);
}

std::string to_json(const PipelineReport& r) {
  using nlohmann::json;
  json stages = json::array();
  for (const auto& s : r.stages)
    stages.push_back({{"name", s.name}, {"generators", s.generators}, {"terms", s.terms}, {"seconds", s.seconds}});
  json kh = json::object();
  for (auto [w, n] : r.kh) kh[std::to_string(w)] = n;
  json j{{"schema_version", kSchemaVersion},
         {"input", {{"strands", r.input.strands}, {"braid", braid_str(r.input.word)}}},
         {"genus", r.genus},
         {"stages", stages},
         {"spectral_sequence", json::parse(to_json(r.ss))},
         {"oracle", {{"verdict", verdict_str(r.verdict)}, {"reduced_kh", kh}}}};
  return j.dump(2);
}

std::string to_text(const PipelineReport& r) {
  std::ostringstream os;
  os << "braid: " << (r.input.word.empty() ? "(empty)" : braid_str(r.input.word)) << " on " << r.input.strands
     << " strands (genus " << r.genus << ")\n";
  for (const auto& s : r.stages)
    os << "  " << s.name << ": " << s.generators << " generators, " << s.terms << " terms, " << s.seconds << " s\n";
  os << render_grid(r.ss);
  if (r.verdict != Verdict::Skipped) {
    os << "reduced Kh:";
    for (auto [w, n] : r.kh) os << " " << w << ":" << n;
    os << "  oracle " << verdict_str(r.verdict) << "\n";
  }
  return os.str();
}

}  // namespace bfss
