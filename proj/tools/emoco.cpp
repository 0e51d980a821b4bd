// emoco: ingest, validate, serve and export emotion coherence models.

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "emoco/bundle.hpp"
#include "emoco/errors.hpp"
#include "emoco/service.hpp"
#include "emoco/store.hpp"

namespace fs = std::filesystem;

namespace {

int run_ingest(const std::vector<std::string>& bundles, const std::string& store_dir,
               double threshold) {
  std::vector<fs::path> paths(bundles.begin(), bundles.end());
  emoco::LoadOptions options;
  options.laughter_threshold = threshold;
  auto ids = emoco::CorpusStore::ingest(store_dir, paths, options);
  for (const auto& id : ids) std::cout << "ingested " << id << '\n';
  return 0;
}

int run_validate(const std::string& bundle) {
  try {
    auto video = emoco::load_bundle(emoco::BundleManifest::from_directory(bundle));
    std::cout << bundle << ": ok (" << video.segments.size() << " segments, "
              << video.frames.size() << " frames)\n";
    return 0;
  } catch (const emoco::ValidationFailure& e) {
    std::cout << bundle << ": " << e.report().violations.size() << " violation(s)\n"
              << e.report().to_string();
    return 1;
  }
}

int run_serve(const std::string& store_dir, const std::string& host, int port) {
  auto store = std::make_shared<const emoco::CorpusStore>(emoco::CorpusStore::open(store_dir));
  emoco::Service service(store);
  emoco::serve_http(service, host, port);
  return 0;
}

int run_export(const std::string& id, const std::string& store_dir, const std::string& what,
               std::string out, const std::map<std::string, std::string>& projection_query) {
  auto store = std::make_shared<const emoco::CorpusStore>(emoco::CorpusStore::open(store_dir));
  emoco::Service service(store);

  emoco::HttpRequest request;
  if (what == "summary") {
    request.path = "/videos/" + id;
  } else if (what == "sankey") {
    request.path = "/videos/" + id + "/sankey";
  } else if (what == "projection") {
    request.path = "/videos/" + id + "/projection";
    request.query = projection_query;
  } else if (what == "words") {
    request.path = "/videos/" + id + "/words";
  } else {
    throw emoco::Error(emoco::ErrorCode::kUsage, "unknown export '" + what + "'");
  }

  auto response = service.handle(request);
  if (response.status != 200) {
    std::cerr << response.body << '\n';
    return 1;
  }
  if (out.empty()) out = id + "-" + what + ".json";
  if (out == "-") {
    std::cout << response.body << '\n';
    return 0;
  }
  std::ofstream file(out, std::ios::trunc);
  if (!file) throw emoco::Error(emoco::ErrorCode::kIo, "cannot write " + out);
  file << response.body << '\n';
  std::cout << "wrote " << out << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Emotion coherence analytics for presentation videos"};
  app.require_subcommand(1);

  std::vector<std::string> bundles;
  std::string store_dir;
  double threshold = 0.5;
  auto* ingest = app.add_subcommand("ingest", "Validate bundles and add them to a store");
  ingest->add_option("bundles", bundles, "Bundle directories")->required()->check(CLI::ExistingDirectory);
  ingest->add_option("--store", store_dir, "Store directory")->required();
  ingest->add_option("--laughter-threshold", threshold,
                     "Fraction of a segment covered by laughter that clears its audio emotion")
      ->check(CLI::Range(0.0, 1.0));

  std::string bundle;
  auto* validate = app.add_subcommand("validate", "Check a bundle and list invariant violations");
  validate->add_option("bundle", bundle, "Bundle directory")->required()->check(CLI::ExistingDirectory);

  std::string host = "127.0.0.1";
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Serve a store over HTTP");
  serve->add_option("--store", store_dir, "Store directory")->required()->check(CLI::ExistingDirectory);
  serve->add_option("--port", port, "TCP port")->check(CLI::Range(0, 65535));
  serve->add_option("--host", host, "Bind address");

  std::string id;
  std::string what;
  std::string out;
  std::string mode;
  std::string perplexity;
  std::string seed;
  std::string iterations;
  auto* exp = app.add_subcommand("export", "Write a derived model body to a file");
  exp->add_option("id", id, "Video id")->required();
  exp->add_option("--store", store_dir, "Store directory")->required()->check(CLI::ExistingDirectory);
  exp->add_option("--what", what, "Model to export")
      ->required()
      ->check(CLI::IsMember({"sankey", "projection", "summary", "words"}));
  exp->add_option("--out", out, "Output file ('-' for stdout)");
  exp->add_option("--mode", mode, "Projection vector mode (concat, literal3)");
  exp->add_option("--perplexity", perplexity, "Projection perplexity");
  exp->add_option("--seed", seed, "Projection seed");
  exp->add_option("--iterations", iterations, "Projection iterations");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) return run_ingest(bundles, store_dir, threshold);
    if (*validate) return run_validate(bundle);
    if (*serve) return run_serve(store_dir, host, port);
    if (*exp) {
      std::map<std::string, std::string> query;
      if (!mode.empty()) query["mode"] = mode;
      if (!perplexity.empty()) query["perplexity"] = perplexity;
      if (!seed.empty()) query["seed"] = seed;
      if (!iterations.empty()) query["iterations"] = iterations;
      return run_export(id, store_dir, what, out, query);
    }
  } catch (const emoco::Error& e) {
    std::cerr << "emoco: " << emoco::to_string(e.code()) << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "emoco: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
