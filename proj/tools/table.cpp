#include "table.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace casimir::cli {

namespace {

constexpr double kSpeedOfLight = 299792458.0;  // m/s
constexpr double kHbar = 1.054571817e-34;      // J s

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

UnitScale UnitScale::si(double reference_frequency) {
  const double w = reference_frequency;
  UnitScale s;
  s.length = kSpeedOfLight / w;
  s.frequency = w;
  s.force = kHbar * w * w * w * w / (kSpeedOfLight * kSpeedOfLight * kSpeedOfLight);
  s.energy = kHbar * w * w * w / (kSpeedOfLight * kSpeedOfLight);
  return s;
}

double UnitScale::factor(Unit unit) const {
  switch (unit) {
    case Unit::length: return length;
    case Unit::frequency: return frequency;
    case Unit::force: return force;
    case Unit::energy: return energy;
    case Unit::none: break;
  }
  return 1.0;
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) throw std::logic_error("row width does not match header");
  rows_.push_back(std::move(row));
}

void Table::write(std::ostream& out, OutputFormat format, const UnitScale& scale) const {
  auto scaled = [&](std::size_t c, double v) { return v * scale.factor(columns_[c].unit); };
  if (format == OutputFormat::csv) {
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      out << (c ? "," : "") << columns_[c].name;
    }
    out << '\n';
    for (const auto& row : rows_) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) out << ',';
        if (const auto* d = std::get_if<double>(&row[c])) {
          out << format_double(scaled(c, *d));
        } else if (const auto* n = std::get_if<long>(&row[c])) {
          out << *n;
        } else {
          out << csv_field(std::get<std::string>(row[c]));
        }
      }
      out << '\n';
    }
    return;
  }
  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (const auto& row : rows_) {
    nlohmann::ordered_json rec = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      const std::string& key = columns_[c].name;
      if (const auto* d = std::get_if<double>(&row[c])) {
        const double v = scaled(c, *d);
        rec[key] = std::isfinite(v) ? nlohmann::ordered_json(v == 0.0 ? 0.0 : v)
                                    : nlohmann::ordered_json(nullptr);
      } else if (const auto* n = std::get_if<long>(&row[c])) {
        rec[key] = *n;
      } else {
        rec[key] = std::get<std::string>(row[c]);
      }
    }
    records.push_back(std::move(rec));
  }
  out << records.dump(2) << '\n';
}

unsigned worker_count() {
  if (const char* env = std::getenv("CASIMIR_STACK_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const std::size_t threads = std::min<std::size_t>(worker_count(), n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace casimir::cli
