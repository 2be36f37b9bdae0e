#include <string>

#include "CLI11.hpp"

#include "e2ecd/cli/commands.hpp"
#include "e2ecd/simd/kernels.hpp"

namespace e2ecd::cli {
namespace {

// Records an option into `flags` under `key` only when it is given, so file
// values survive unless overridden.
void bind_flag(CLI::App* app, KeyValues& flags, const std::string& name, const std::string& key,
          const std::string& help) {
  app->add_option_function<std::string>(
      name, [&flags, key](const std::string& v) { flags[key] = v; }, help);
}

void add_common(CLI::App* app, KeyValues& flags, std::string& config_file) {
  app->add_option("--config", config_file, "key = value config file; flags take precedence");
  bind_flag(app, flags, "--seed", "seed", "Random seed (u64)");
  bind_flag(app, flags, "--workers", "workers", "Worker threads");
  bind_flag(app, flags, "--output,-o", "output", "Output directory");
}

}  // namespace

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"End-to-end registration and change detection for bi-temporal image pairs", "e2ecd"};
  app.require_subcommand(1);
  std::string simd;
  app.add_option("--simd", simd, "Kernel backend: scalar, avx2 or neon (default: best available)");

  KeyValues flags;
  std::string config_file;

  auto* fixture = app.add_subcommand("fixture", "Write the procedural 3-pair input corpus");
  add_common(fixture, flags, config_file);
  bind_flag(fixture, flags, "--size", "fixture_size", "Image side in pixels");

  auto* synth = app.add_subcommand("synth", "Synthesize training samples from registered pairs");
  add_common(synth, flags, config_file);
  bind_flag(synth, flags, "input", "input", "Directory with manifest.csv and pairs");
  bind_flag(synth, flags, "--min-positive", "min_positive", "Drop samples with fewer valid changed pixels");
  bind_flag(synth, flags, "--max-rotation-deg", "max_rotation_deg", "Rotation range (+/- degrees)");
  bind_flag(synth, flags, "--scale-min", "scale_min", "Lower scale bound");
  bind_flag(synth, flags, "--scale-max", "scale_max", "Upper scale bound");
  bind_flag(synth, flags, "--max-translation-frac", "max_translation_frac", "Translation range per axis");
  bind_flag(synth, flags, "--max-shear-deg", "max_shear_deg", "Shear range (+/- degrees)");

  auto* forward = app.add_subcommand("forward", "Predict flow and change maps for a corpus");
  add_common(forward, flags, config_file);
  bind_flag(forward, flags, "corpus", "input", "Synthesized corpus directory");
  bind_flag(forward, flags, "--weights", "weights", "Weight container; seeded init when omitted");
  bind_flag(forward, flags, "--arch", "arch", "Architecture config file");
  bind_flag(forward, flags, "--threshold", "threshold", "Binarization threshold on p(changed)");

  auto* eval = app.add_subcommand("eval", "Score predictions against ground truth");
  add_common(eval, flags, config_file);
  bind_flag(eval, flags, "pred", "pred", "Prediction directory");
  bind_flag(eval, flags, "gt", "gt", "Ground-truth corpus directory");
  bind_flag(eval, flags, "--radii", "radii", "Comma-separated relaxation radii");
  bind_flag(eval, flags, "--delta", "delta", "PCK threshold as a fraction of max(H, W)");
  bind_flag(eval, flags, "--threshold", "threshold", "Binarization threshold on p(changed)");

  auto* stats = app.add_subcommand("stats", "Image and pixel counts per event and split");
  add_common(stats, flags, config_file);
  bind_flag(stats, flags, "corpus", "input", "Synthesized corpus directory");

  auto* inspect = app.add_subcommand("inspect", "Write visual panels for samples");
  add_common(inspect, flags, config_file);
  bind_flag(inspect, flags, "corpus", "input", "Synthesized corpus directory");
  bind_flag(inspect, flags, "--pred", "pred", "Prediction directory");
  bind_flag(inspect, flags, "--sample", "sample", "Only this sample id");
  bind_flag(inspect, flags, "--threshold", "threshold", "Binarization threshold on p(changed)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (!simd.empty()) {
      const simd::Backend b = simd::parse_backend(simd);
      if (!simd::backend_available(b)) throw ConfigError("kernel backend '" + simd + "' is not available");
      simd::select_backend(b);
    }
    const std::string command = app.get_subcommands().front()->get_name();
    const KeyValues file = config_file.empty() ? KeyValues{} : read_key_values(config_file);
    const RunConfig config = resolve_config(command, file, flags);
    return run_command(config, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}

}  // namespace e2ecd::cli
