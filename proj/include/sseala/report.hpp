#pragma once

#include <chrono>
#include <string>
#include <vector>

#include <json.hpp>

namespace sseala {

using Json = nlohmann::ordered_json;

enum class Status { Pass, Fail, Skip };
std::string to_string(Status s);

struct CheckRecord {
  std::string suite;
  std::string id;
  Status status = Status::Pass;
  Json payload = Json::object();
  std::string counterexample;  // canonical rendering; required when status is Fail
  double elapsed_ms = 0;
};

class VerificationReport {
 public:
  void add(CheckRecord r);
  void check(const std::string& suite, const std::string& id, bool ok, Json payload,
             const std::string& counterexample = {});
  void skip(const std::string& suite, const std::string& id, const std::string& reason);
  void merge(const VerificationReport& other);

  const std::vector<CheckRecord>& records() const { return records_; }
  std::vector<CheckRecord>& records() { return records_; }
  std::size_t count(Status s) const;
  bool ok() const { return count(Status::Fail) == 0; }
  const CheckRecord* find(const std::string& suite, const std::string& id) const;

  // Deterministic body: no timings.  The digest hashes the serialized checks array.
  Json to_json(const Json& config) const;
  Json timings_json() const;
  std::string to_text() const;

 private:
  std::vector<CheckRecord> records_;
};

// Sets elapsed_ms on every record added to the report while it is alive.
class ScopedTimer {
 public:
  explicit ScopedTimer(VerificationReport& r) : report_(r), first_(r.records().size()), t0_(clock::now()) {}
  ~ScopedTimer();

 private:
  using clock = std::chrono::steady_clock;
  VerificationReport& report_;
  std::size_t first_;
  clock::time_point t0_;
};

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kSamplerName = "splitmix64(seed ^ splitmix64(fnv1a(stream)), index)";

}  // namespace sseala
