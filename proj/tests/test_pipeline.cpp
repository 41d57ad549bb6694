#include "grips/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "grips/config.hpp"
#include "grips/errors.hpp"
#include "grips/model_io.hpp"

using namespace grips;
namespace fs = std::filesystem;

namespace {

const char* kDinftyModel =
    "name = dinfty\n"
    "kind = free-product\n"
    "factor = cyclic 2 a\n"
    "factor = cyclic 2 b\n"
    "peripheral = factor 0\n"
    "peripheral = factor 1\n";

fs::path scratch() {
  fs::path p = fs::temp_directory_path() / "grips-pipeline-test";
  fs::create_directories(p);
  return p;
}

std::string write(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RunConfig base_config(const std::string& model, const std::string& out) {
  RunConfig c;
  c.origin = "test";
  c.model_path = model;
  c.output_dir = out;
  c.radius = 4;
  c.n = 2;
  c.fineness_L = 6;
  c.hull_r = 1;
  c.hull_core = 2;
  for (const std::string& s : pipeline_stage_names()) c.stages.insert(s);
  return c;
}

}  // namespace

TEST_CASE("model files parse and validate") {
  ModelFile mf = parse_model_text(kDinftyModel, "dinfty");
  CHECK(mf.name == "dinfty");
  CHECK(mf.model->kind() == ModelKind::free_product);
  CHECK(mf.model->peripheral_count() == 2);
  CHECK(!mf.model->order().has_value());

  ModelFile table = parse_model_text(
      "kind = table\nletters = st\nrow = 1 0 4 5 2 3\nrow = 2 3 5 4 1 0\n",
      "s3");
  CHECK(table.model->order() == std::size_t{6});

  CHECK_THROWS_WITH_AS(parse_model_text("kind = free\n", "m"),
                       doctest::Contains("needs 'letters'"), input_error);
  CHECK_THROWS_WITH_AS(parse_model_text("letters = ab\n", "m"),
                       doctest::Contains("missing 'kind'"), input_error);
  CHECK_THROWS_WITH_AS(
      parse_model_text("kind = free\nletters = ab\nbogus = 1\n", "m"),
      doctest::Contains("m:3: unknown key 'bogus'"), input_error);
  CHECK_THROWS_WITH_AS(
      parse_model_text("kind = free-product\nfactor = cyclic 2 a\n", "m"),
      doctest::Contains("at least two"), input_error);
  CHECK_THROWS_WITH_AS(
      parse_model_text(
          "kind = free\nletters = xy\nperipheral = generated q\n", "m"),
      doctest::Contains("not in the model alphabet"), input_error);
  CHECK_THROWS_WITH_AS(parse_model_text("kind = free\nletters = xx\n", "m"),
                       doctest::Contains("duplicate generator"), input_error);
}

TEST_CASE("config parsing and validation") {
  RunConfig c = parse_config_text(
      "model = m.model\noutput = out\nradius = 6\nn = 2\n", "cfg");
  CHECK_NOTHROW(validate(c));
  CHECK(c.stages.count("graph") == 1);
  CHECK(c.stages.count("hulls") == 0);  // not in the default stage set
  CHECK(c.samples == 0);

  SUBCASE("sampling requires a seed") {
    RunConfig s = parse_config_text(
        "model = m\noutput = o\nradius = 6\nn = 2\nsamples = 500\n", "cfg");
    CHECK_THROWS_WITH_AS(validate(s), doctest::Contains("seed"), input_error);
    s.has_seed = true;
    s.seed = 7;
    CHECK_NOTHROW(validate(s));
  }
  SUBCASE("rejects unknown keys with position") {
    CHECK_THROWS_WITH_AS(parse_config_text("radius = 6\nwat = 1\n", "cfg"),
                         doctest::Contains("cfg:2: unknown key"), input_error);
  }
  SUBCASE("rejects duplicate keys") {
    CHECK_THROWS_WITH_AS(parse_config_text("radius = 6\nradius = 7\n", "cfg"),
                         doctest::Contains("duplicate key"), input_error);
  }
  SUBCASE("rejects unknown stages") {
    RunConfig s = parse_config_text(
        "model = m\noutput = o\nradius = 6\nn = 2\nstages = graph,boop\n",
        "cfg");
    CHECK_THROWS_WITH_AS(validate(s), doctest::Contains("unknown stage"),
                         input_error);
  }
  SUBCASE("requires positive sizes") {
    RunConfig s = parse_config_text("model = m\noutput = o\nn = 2\n", "cfg");
    CHECK_THROWS_WITH_AS(validate(s), doctest::Contains("radius"),
                         input_error);
  }
}

TEST_CASE("pipeline bundle on the dihedral model") {
  fs::path dir = scratch();
  std::string model = write(dir / "dinfty.model", kDinftyModel);
  RunConfig c = base_config(model, (dir / "bundle").string());
  fs::remove_all(c.output_dir);

  PipelineResult res = run_pipeline(c);
  CHECK(res.exit_code == 0);
  CHECK(res.summary.at("stable.R_hat") == "2");
  CHECK(res.summary.at("stable.D_hat") == "0");
  CHECK(res.summary.at("stable.dismantlable") == "true [truncated]");
  CHECK(res.summary.at("stage.fineness") == "ok");

  for (const char* f :
       {"manifest.txt", "coned.txt", "orbits.txt", "graph.txt", "complex.txt",
        "estimation.txt", "dismantle.txt", "fixed_points.txt", "fineness.txt",
        "hulls.txt", "delta.txt", "summary.txt"})
    CHECK(fs::exists(fs::path(c.output_dir) / f));

  // uncertified fringe distances are marked, never silent
  CHECK(slurp(fs::path(c.output_dir) / "graph.txt").find("[truncated]") !=
        std::string::npos);

  // estimation report carries the fixture value
  std::string est = slurp(fs::path(c.output_dir) / "estimation.txt");
  CHECK(est.find("R.value = 2") != std::string::npos);
  CHECK(est.find("D.value = 0") != std::string::npos);
}

TEST_CASE("pipeline runs are byte-identical") {
  fs::path dir = scratch();
  std::string model = write(dir / "dinfty.model", kDinftyModel);

  RunConfig a = base_config(model, (dir / "run_a").string());
  a.has_seed = true;
  a.seed = 99;
  a.samples = 25;
  RunConfig b = a;
  b.output_dir = (dir / "run_b").string();
  fs::remove_all(a.output_dir);
  fs::remove_all(b.output_dir);

  PipelineResult ra = run_pipeline(a);
  PipelineResult rb = run_pipeline(b);
  REQUIRE(ra.files == rb.files);
  for (const std::string& f : ra.files)
    CHECK(slurp(fs::path(a.output_dir) / f) ==
          slurp(fs::path(b.output_dir) / f));

  ReportDiff diff = diff_reports(a.output_dir, b.output_dir);
  CHECK(diff.identical());
}

TEST_CASE("diff rejects bundles from different models or n") {
  fs::path dir = scratch();
  std::string dinfty = write(dir / "dinfty.model", kDinftyModel);
  std::string z = write(dir / "z.model", "name = z\nkind = free\nletters = t\n");

  RunConfig a = base_config(dinfty, (dir / "diff_a").string());
  RunConfig b = base_config(z, (dir / "diff_b").string());
  b.fineness_L = 0;
  RunConfig c = base_config(dinfty, (dir / "diff_c").string());
  c.n = 3;
  for (RunConfig* cfg : {&a, &b, &c}) {
    fs::remove_all(cfg->output_dir);
    run_pipeline(*cfg);
  }

  CHECK_THROWS_WITH_AS(diff_reports(a.output_dir, b.output_dir),
                       doctest::Contains("disagree on model"), input_error);
  CHECK_THROWS_WITH_AS(diff_reports(a.output_dir, c.output_dir),
                       doctest::Contains("disagree on n"), input_error);
}

TEST_CASE("resource errors surface per stage and keep partial output") {
  fs::path dir = scratch();
  std::string model = write(dir / "dinfty.model", kDinftyModel);
  RunConfig c = base_config(model, (dir / "capped").string());
  c.complex_cap = 10;
  fs::remove_all(c.output_dir);

  PipelineResult res = run_pipeline(c);
  CHECK(res.exit_code == 2);
  CHECK(res.summary.at("stage.complex").rfind("resource-error", 0) == 0);
  CHECK(res.summary.at("stage.graph") == "ok");
  CHECK(res.summary.at("stage.dismantle") == "ok");
  CHECK(fs::exists(fs::path(c.output_dir) / "graph.txt"));
  CHECK(slurp(fs::path(c.output_dir) / "complex.txt").find("error = resource") !=
        std::string::npos);
  CHECK(fs::exists(fs::path(c.output_dir) / "summary.txt"));
}

TEST_CASE("finite models give whole-group fixed point complexes") {
  fs::path dir = scratch();
  std::string model = write(
      dir / "s3.model",
      "name = s3\nkind = table\nletters = st\nrow = 1 0 4 5 2 3\n"
      "row = 2 3 5 4 1 0\nperipheral = generated t\n");
  RunConfig c = base_config(model, (dir / "s3").string());
  c.radius = 3;
  c.n = 1;
  c.fineness_L = 4;
  fs::remove_all(c.output_dir);

  PipelineResult res = run_pipeline(c);
  CHECK(res.exit_code == 0);
  std::string fp = slurp(fs::path(c.output_dir) / "fixed_points.txt");
  // the whole finite group is representable, so no subgroup line needs the
  // truncation escape hatch
  CHECK(fp.find("not-representable") == std::string::npos);
  CHECK(fp.find("fixed_point_complex.verdict = contractible-evidence") !=
        std::string::npos);
}
