/*
 * Copyright 2026 The vrsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <thread>

#include "vrsim/cases.hpp"
#include "vrsim/error.hpp"

namespace vrsim {
namespace {

namespace fs = std::filesystem;

void write_bytes(const fs::path& path, const std::string& bytes) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error(Errc::kIo, "cannot open " + path.string() + " for writing");
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!os) throw Error(Errc::kIo, "failed writing " + path.string());
}

void make_dirs(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw Error(Errc::kIo, "cannot create directory " + dir.string() + (ec ? ": " + ec.message() : ""));
  }
}

}  // namespace

void export_report(const RunReport& report, const std::string& dir) {
  make_dirs(dir);
  for (const auto& a : report.artifacts) write_bytes(fs::path(dir) / a.name, a.content);
  write_bytes(fs::path(dir) / "report.json", report_to_json(report));
}

std::vector<ExportEntry> simulate_plan(const Plan& plan, const std::string& out_dir, unsigned jobs) {
  make_dirs(out_dir);
  const std::size_t count = plan.scenarios.size();
  std::vector<ExportEntry> entries(count);
  std::vector<std::exception_ptr> failures(count);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        const auto& cfg = plan.scenarios[i];
        const RunReport report = run_scenario(cfg);
        const std::string dir = (fs::path(out_dir) / cfg.name).string();
        export_report(report, dir);
        entries[i] = {cfg.name, cfg.name, report.status, sha256_hex(report_to_json(report))};
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  nlohmann::ordered_json manifest;
  manifest["seed"] = plan.seed;
  manifest["count"] = count;
  auto list = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    list.push_back({{"name", e.name}, {"directory", e.directory}, {"status", e.status}, {"report_sha256", e.report_sha256}});
  }
  manifest["scenarios"] = list;
  write_bytes(fs::path(out_dir) / "manifest.json", manifest.dump(2) + "\n");
  return entries;
}

}  // namespace vrsim
