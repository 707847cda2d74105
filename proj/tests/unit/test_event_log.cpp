#include <filesystem>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "assess/event_log.hpp"
#include "temp_dir.hpp"

using namespace assess;
using nlohmann::json;

namespace fs = std::filesystem;

namespace {

std::string read_all(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void write_all(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
}

}  // namespace

TEST(EventLog, AppendAndReload) {
  test::TempDir dir;
  const fs::path path = dir.path() / "s.jsonl";
  {
    EventLog log(path, "s");
    EXPECT_TRUE(log.records().empty());
    EXPECT_EQ(log.append("created", {{"created_at_ms", 5}}, 5).sequence, 0u);
    EXPECT_EQ(log.append("manual", {{"ability", "suck"}, {"detected", true}}, 6).sequence, 1u);
  }
  EventLog reopened(path, "s");
  ASSERT_EQ(reopened.records().size(), 2u);
  EXPECT_EQ(reopened.records()[1].kind, "manual");
  EXPECT_EQ(reopened.records()[1].payload["ability"], "suck");
  EXPECT_EQ(reopened.next_sequence(), 2u);
  EXPECT_EQ(read_event_log(path, "s"), reopened.records());
  EXPECT_EQ(reopened.append("compute", json::object(), 7).sequence, 2u);
}

TEST(EventLog, TornTailIsDropped) {
  test::TempDir dir;
  const fs::path path = dir.path() / "s.jsonl";
  {
    EventLog log(path, "s");
    log.append("created", json::object(), 1);
    log.append("trace", {{"text", "x"}}, 2);
  }
  const std::string intact = read_all(path);
  write_all(path, intact + R"({"session":"s","seq":2,"ki)");
  {
    EventLog log(path, "s");
    EXPECT_EQ(log.records().size(), 2u);
    EXPECT_EQ(read_all(path), intact);
    log.append("compute", json::object(), 3);
  }
  EXPECT_EQ(read_event_log(path, "s").size(), 3u);
}

TEST(EventLog, CorruptionIsAnError) {
  test::TempDir dir;
  const fs::path path = dir.path() / "s.jsonl";
  write_all(path, "not json\n");
  EXPECT_THROW(EventLog(path, "s"), EventLogError);

  write_all(path, R"({"session":"s","seq":0,"kind":"created","payload":{},"ts":0})"
                  "\n"
                  R"({"session":"s","seq":2,"kind":"created","payload":{},"ts":0})"
                  "\n");
  EXPECT_THROW(read_event_log(path, "s"), EventLogError);

  write_all(path, R"({"session":"other","seq":0,"kind":"created","payload":{},"ts":0})"
                  "\n");
  EXPECT_THROW(read_event_log(path, "s"), EventLogError);

  write_all(path, R"({"session":"s","seq":0})"
                  "\n");
  EXPECT_THROW(read_event_log(path, "s"), EventLogError);
}

TEST(EventLog, MissingFileIsEmpty) {
  test::TempDir dir;
  EXPECT_TRUE(read_event_log(dir.path() / "absent.jsonl", "s").empty());
}

TEST(EventLogProperty, CrashAtAnyByteReloadsACommittedPrefix) {
  test::TempDir dir;
  const fs::path path = dir.path() / "s.jsonl";
  std::vector<EventLogRecord> written;
  {
    EventLog log(path, "s");
    for (int i = 0; i < 12; ++i) written.push_back(log.append("e", {{"i", i}, {"pad", std::string(i * 3, 'x')}}, i));
  }
  const std::string full = read_all(path);
  std::vector<std::size_t> ends;
  for (std::size_t i = 0; i < full.size(); ++i) {
    if (full[i] == '\n') ends.push_back(i + 1);
  }
  ASSERT_EQ(ends.size(), written.size());

  for (std::size_t cut = 0; cut <= full.size(); ++cut) {
    write_all(path, full.substr(0, cut));
    std::size_t expected = 0;
    while (expected < ends.size() && ends[expected] <= cut) ++expected;
    EventLog log(path, "s");
    ASSERT_EQ(log.records().size(), expected) << cut;
    for (std::size_t i = 0; i < expected; ++i) ASSERT_EQ(log.records()[i], written[i]);
    // After recovery the file holds exactly the committed prefix and accepts appends.
    ASSERT_EQ(read_all(path), full.substr(0, expected == 0 ? 0 : ends[expected - 1]));
  }
}
