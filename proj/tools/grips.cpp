#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "grips/config.hpp"
#include "grips/errors.hpp"
#include "grips/model_io.hpp"
#include "grips/pipeline.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::string& output_override) {
  grips::RunConfig config = grips::load_config_file(config_path);
  if (!output_override.empty()) config.output_dir = output_override;
  grips::PipelineResult result = grips::run_pipeline(config);
  for (const std::string& f : result.files)
    std::cout << "wrote " << result.dir << "/" << f << "\n";
  for (const auto& [k, v] : result.summary)
    if (k.rfind("stage.", 0) == 0 || k.rfind("stable.", 0) == 0)
      std::cout << k << " = " << v << "\n";
  return result.exit_code;
}

int cmd_diff(const std::string& dir_a, const std::string& dir_b,
             const std::string& only) {
  grips::ReportDiff diff = grips::diff_reports(dir_a, dir_b);
  int shown = 0;
  for (const auto& e : diff.changed) {
    if (!only.empty() && e.key.rfind(only, 0) != 0) continue;
    std::cout << "changed " << e.key << ": " << e.a << " -> " << e.b << "\n";
    ++shown;
  }
  for (const auto& k : diff.only_a) {
    if (!only.empty() && k.rfind(only, 0) != 0) continue;
    std::cout << "only-a " << k << "\n";
    ++shown;
  }
  for (const auto& k : diff.only_b) {
    if (!only.empty() && k.rfind(only, 0) != 0) continue;
    std::cout << "only-b " << k << "\n";
    ++shown;
  }
  if (shown == 0) std::cout << "identical\n";
  return 0;
}

int cmd_model(const std::string& path) {
  grips::ModelFile mf = grips::load_model_file(path);
  std::cout << "name = " << mf.name << "\n"
            << grips::describe_model(*mf.model);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated coned-off Cayley graphs: pipelines and reports"};
  app.require_subcommand(1);

  std::string config_path, output_override;
  CLI::App* run = app.add_subcommand("run", "Run a pipeline from a config file");
  run->add_option("config", config_path, "config file")->required();
  run->add_option("-o,--output", output_override,
                  "override the configured output directory");

  std::string dir_a, dir_b, only;
  CLI::App* diff =
      app.add_subcommand("diff", "Compare the stable rows of two bundles");
  diff->add_option("bundle_a", dir_a, "first bundle directory")->required();
  diff->add_option("bundle_b", dir_b, "second bundle directory")->required();
  diff->add_option("--only", only, "restrict to keys with this prefix");

  std::string model_path;
  CLI::App* model =
      app.add_subcommand("model", "Validate and describe a model file");
  model->add_option("file", model_path, "model file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, output_override);
    if (diff->parsed()) return cmd_diff(dir_a, dir_b, only);
    return cmd_model(model_path);
  } catch (const grips::input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const grips::resource_error& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 2;
  } catch (const grips::truncation_error& e) {
    std::cerr << "truncation error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
