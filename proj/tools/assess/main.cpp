#include <pthread.h>

#include <array>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "assess/http_api.hpp"
#include "assess/knowledge_base.hpp"
#include "assess/metrics_config.hpp"
#include "assess/profile.hpp"
#include "assess/questionnaires.hpp"
#include "assess/recommender.hpp"
#include "assess/report.hpp"
#include "assess/session_store.hpp"
#include "assess/trace.hpp"

namespace {

using namespace assess;

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kUsage = 2;

struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  std::ostringstream out;
  if (path == "-") {
    out << std::cin.rdbuf();
    return out.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path);
  out << in.rdbuf();
  return out.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) throw InvalidInput("cannot write " + path);
}

KnowledgeBase kb_from(const std::string& path) {
  return path.empty() ? builtin_kb() : load_kb(read_input(path));
}

MetricsConfig config_from(const std::string& path, const std::vector<std::string>& overrides) {
  MetricsConfig config = path.empty() ? MetricsConfig{} : parse_config(read_input(path));
  for (const auto& assignment : overrides) apply_override(config, assignment);
  return config;
}

AssessmentTrace trace_from(const std::string& path) {
  const std::string text = read_input(path);
  return parse_trace(std::string_view(text));
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::istringstream in(read_input(path));
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<std::string> cells;
    std::stringstream cols(line);
    std::string cell;
    while (std::getline(cols, cell, ',')) {
      const auto b = cell.find_first_not_of(" \t\"");
      const auto e = cell.find_last_not_of(" \t\"");
      cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    rows.push_back(std::move(cells));
  }
  return rows;
}

bool numeric(const std::string& cell) {
  if (cell.empty()) return false;
  char* end = nullptr;
  std::strtod(cell.c_str(), &end);
  return *end == '\0';
}

// Drops a leading header row (any non-numeric cell).
void drop_header(std::vector<std::vector<std::string>>& rows) {
  if (rows.empty()) return;
  for (const auto& cell : rows.front()) {
    if (!numeric(cell)) {
      rows.erase(rows.begin());
      return;
    }
  }
}

std::string row_error(std::size_t row, const std::string& message) {
  return "row " + std::to_string(row) + ": " + message;
}

int score_sus(const std::string& in_path, const std::string& out_path) {
  auto rows = read_csv(in_path);
  drop_header(rows);
  if (rows.empty()) throw InvalidInput("no SUS responses");
  ordered_json respondents = ordered_json::array();
  double total = 0.0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::vector<int> items;
    for (const auto& cell : rows[r]) {
      if (!numeric(cell)) throw InvalidInput(row_error(r + 1, "non-numeric item '" + cell + "'"));
      const double v = std::strtod(cell.c_str(), nullptr);
      if (v != static_cast<int>(v)) throw InvalidInput(row_error(r + 1, "item '" + cell + "' is not an integer"));
      items.push_back(static_cast<int>(v));
    }
    SusResult result;
    try {
      result = evaluate_sus(make_sus_response(items));
    } catch (const QuestionnaireError& e) {
      throw InvalidInput(row_error(r + 1, e.what()));
    }
    total += result.score;
    respondents.push_back(to_json(result));
  }
  const double mean = total / static_cast<double>(rows.size());
  ordered_json out = {{"respondents", rows.size()},
                      {"score", mean},
                      {"adjective", sus_adjective(mean)},
                      {"responses", std::move(respondents)}};
  write_output(out_path, out.dump(2) + "\n");
  return kOk;
}

int score_tlx(const std::string& in_path, const std::string& weights_path, const std::string& out_path) {
  auto rows = read_csv(in_path);
  drop_header(rows);
  if (rows.empty()) throw InvalidInput("no TLX ratings");

  std::vector<std::vector<std::string>> pairs;
  if (!weights_path.empty()) {
    pairs = read_csv(weights_path);
    if (!pairs.empty() && !parse_tlx_dimension(pairs.front().at(0))) pairs.erase(pairs.begin());
    if (pairs.size() != rows.size() * kTlxPairCount) {
      throw InvalidInput("expected " + std::to_string(rows.size() * kTlxPairCount) +
                         " pairwise rows, got " + std::to_string(pairs.size()));
    }
  }

  ordered_json respondents = ordered_json::array();
  double raw_total = 0.0;
  double weighted_total = 0.0;
  std::array<double, kTlxDimensionCount> mean_ratings{};
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != kTlxDimensionCount) {
      throw InvalidInput(row_error(r + 1, "expected 6 ratings"));
    }
    TlxResponse response;
    for (std::size_t d = 0; d < kTlxDimensionCount; ++d) {
      if (!numeric(rows[r][d])) throw InvalidInput(row_error(r + 1, "non-numeric rating '" + rows[r][d] + "'"));
      response.ratings[d] = std::strtod(rows[r][d].c_str(), nullptr);
      mean_ratings[d] += response.ratings[d];
    }
    if (!pairs.empty()) {
      std::vector<PairwiseChoice> choices;
      for (std::size_t i = 0; i < kTlxPairCount; ++i) {
        const auto& row = pairs[r * kTlxPairCount + i];
        const auto a = row.size() == 3 ? parse_tlx_dimension(row[0]) : std::nullopt;
        const auto b = row.size() == 3 ? parse_tlx_dimension(row[1]) : std::nullopt;
        const auto w = row.size() == 3 ? parse_tlx_dimension(row[2]) : std::nullopt;
        if (!a || !b || !w) {
          throw InvalidInput("weights " + row_error(r * kTlxPairCount + i + 1, "expected first,second,winner"));
        }
        choices.push_back({*a, *b, *w});
      }
      response.weights = std::move(choices);
    }
    TlxResult result;
    try {
      result = evaluate_tlx(response);
    } catch (const QuestionnaireError& e) {
      throw InvalidInput(row_error(r + 1, e.what()));
    }
    raw_total += result.raw.workload;
    if (result.weighted) weighted_total += *result.weighted;
    respondents.push_back(to_json(result));
  }
  const double n = static_cast<double>(rows.size());
  ordered_json bands = ordered_json::object();
  for (std::size_t d = 0; d < kTlxDimensionCount; ++d) {
    bands[std::string(to_string(static_cast<TlxDimension>(d)))] = to_string(tlx_band(mean_ratings[d] / n));
  }
  ordered_json out = {{"respondents", rows.size()}, {"workload", raw_total / n}};
  out["weighted_workload"] = pairs.empty() ? ordered_json() : ordered_json(weighted_total / n);
  out["bands"] = std::move(bands);
  out["responses"] = std::move(respondents);
  write_output(out_path, out.dump(2) + "\n");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ability assessment and assistive-technology recommendation"};
  app.require_subcommand(1);

  std::string kb_path, config_path, trace_path, out_path, in_path, weights_path, data_dir, web_root;
  std::string host = "127.0.0.1";
  std::vector<std::string> overrides;
  int port = 8080;

  auto* serve = app.add_subcommand("serve", "Run the HTTP session service");
  serve->add_option("--port", port, "Port to listen on (0 picks a free port)");
  serve->add_option("--host", host, "Address to bind");
  serve->add_option("--data", data_dir, "Data directory (default $ASSESS_DATA_DIR or ./data)");
  serve->add_option("--kb", kb_path, "Knowledge base JSON (default: builtin)");
  serve->add_option("--config", config_path, "metrics.toml");
  serve->add_option("--set", overrides, "Config override key=value");
  serve->add_option("--web", web_root, "Static files served under /");

  auto* run = app.add_subcommand("run", "Offline pipeline: trace to report");
  run->add_option("--trace", trace_path, "JSONL trace, '-' for stdin")->required();
  run->add_option("--kb", kb_path, "Knowledge base JSON (default: builtin)");
  run->add_option("--out", out_path, "Report path (default stdout)");
  run->add_option("--config", config_path, "metrics.toml");
  run->add_option("--set", overrides, "Config override key=value");

  auto* profile = app.add_subcommand("profile", "Trace to ability profile only");
  profile->add_option("--trace", trace_path, "JSONL trace, '-' for stdin")->required();
  profile->add_option("--kb", kb_path, "Knowledge base JSON (default: builtin)");
  profile->add_option("--out", out_path, "Profile path (default stdout)");
  profile->add_option("--config", config_path, "metrics.toml");
  profile->add_option("--set", overrides, "Config override key=value");

  auto* kb_cmd = app.add_subcommand("kb", "Knowledge base tools");
  kb_cmd->require_subcommand(1);
  auto* kb_validate = kb_cmd->add_subcommand("validate", "Check a knowledge base file");
  kb_validate->add_option("file", kb_path, "Knowledge base JSON")->required();
  auto* kb_export = kb_cmd->add_subcommand("export", "Print the builtin knowledge base");
  kb_export->add_option("--out", out_path, "Output path (default stdout)");

  auto* trace_cmd = app.add_subcommand("trace", "Trace tools");
  trace_cmd->require_subcommand(1);
  auto* trace_validate = trace_cmd->add_subcommand("validate", "Check a JSONL trace");
  trace_validate->add_option("file", trace_path, "JSONL trace, '-' for stdin")->required();

  auto* config_cmd = app.add_subcommand("config", "Metric constants");
  config_cmd->require_subcommand(1);
  auto* config_export = config_cmd->add_subcommand("export", "Print effective constants as TOML");
  config_export->add_option("--config", config_path, "metrics.toml");
  config_export->add_option("--set", overrides, "Config override key=value");

  auto* sus = app.add_subcommand("sus", "System Usability Scale");
  sus->require_subcommand(1);
  auto* sus_score_cmd = sus->add_subcommand("score", "Score ten-item responses, one respondent per row");
  sus_score_cmd->add_option("--in", in_path, "CSV of responses")->required();
  sus_score_cmd->add_option("--out", out_path, "Output path (default stdout)");

  auto* tlx = app.add_subcommand("tlx", "NASA Task Load Index");
  tlx->require_subcommand(1);
  auto* tlx_score_cmd = tlx->add_subcommand("score", "Score six ratings per row");
  tlx_score_cmd->add_option("--in", in_path, "CSV of ratings: mental,physical,temporal,performance,effort,frustration")
      ->required();
  tlx_score_cmd->add_option("--weights", weights_path, "CSV of first,second,winner; 15 rows per respondent");
  tlx_score_cmd->add_option("--out", out_path, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*run || *profile) {
      const KnowledgeBase kb = kb_from(kb_path);
      const MetricsConfig config = config_from(config_path, overrides);
      const AbilityProfile p = build_profile(trace_from(trace_path), kb, config);
      if (*profile) {
        write_output(out_path, to_json(p).dump(2) + "\n");
      } else {
        write_output(out_path, dump_report(build_report(p, recommend(p, kb), kb, config)));
      }
      return kOk;
    }
    if (*kb_validate) {
      const KnowledgeBase kb = load_kb(read_input(kb_path));
      std::cout << "ok: " << kb.version << ", " << kb.targets.size() << " targets, " << kb.mediums.size()
                << " mediums, " << kb.technologies.size() << " technologies\n";
      return kOk;
    }
    if (*kb_export) {
      write_output(out_path, serialize(builtin_kb()));
      return kOk;
    }
    if (*trace_validate) {
      const AssessmentTrace trace = trace_from(trace_path);
      std::cout << "ok: " << trace.records.size() << " records, " << trace.windows.size() << " windows, "
                << trace.manual_entries.size() << " manual entries\n";
      return kOk;
    }
    if (*config_export) {
      std::cout << to_toml(config_from(config_path, overrides));
      return kOk;
    }
    if (*sus_score_cmd) return score_sus(in_path, out_path);
    if (*tlx_score_cmd) return score_tlx(in_path, weights_path, out_path);
    if (*serve) {
      if (data_dir.empty()) {
        const char* env = std::getenv("ASSESS_DATA_DIR");
        data_dir = env && *env ? env : "data";
      }
      SessionStore store(data_dir, kb_from(kb_path), config_from(config_path, overrides));
      Api api(store, web_root.empty() ? std::nullopt : std::optional<std::filesystem::path>(web_root));
      // Block the shutdown signals before the server threads exist so only sigwait sees them.
      sigset_t signals;
      sigemptyset(&signals);
      sigaddset(&signals, SIGINT);
      sigaddset(&signals, SIGTERM);
      pthread_sigmask(SIG_BLOCK, &signals, nullptr);
      HttpServer server(api);
      const int bound = server.start(host, port);
      std::cout << "listening on http://" << host << ":" << bound << " data=" << data_dir << std::endl;
      int received = 0;
      sigwait(&signals, &received);
      server.stop();
      return kOk;
    }
  } catch (const TraceError& e) {
    std::cerr << "invalid trace: " << e.what() << "\n";
    return kInvalid;
  } catch (const KbError& e) {
    std::cerr << "invalid knowledge base: " << e.what() << "\n";
    return kInvalid;
  } catch (const ConfigError& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return kInvalid;
  } catch (const InvalidInput& e) {
    std::cerr << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kUsage;
}
