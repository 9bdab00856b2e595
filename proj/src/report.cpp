#include "sseala/report.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "sseala/sampling.hpp"

namespace sseala {

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skip: return "skip";
  }
  return "?";
}

void VerificationReport::add(CheckRecord r) {
  if (r.status == Status::Fail && r.counterexample.empty())
    throw std::logic_error("failed check " + r.suite + "/" + r.id + " has no counterexample");
  records_.push_back(std::move(r));
}

void VerificationReport::check(const std::string& suite, const std::string& id, bool ok, Json payload,
                               const std::string& counterexample) {
  CheckRecord r;
  r.suite = suite;
  r.id = id;
  r.status = ok ? Status::Pass : Status::Fail;
  r.payload = std::move(payload);
  if (!ok) r.counterexample = counterexample.empty() ? std::string("(see payload)") : counterexample;
  add(std::move(r));
}

void VerificationReport::skip(const std::string& suite, const std::string& id, const std::string& reason) {
  CheckRecord r;
  r.suite = suite;
  r.id = id;
  r.status = Status::Skip;
  r.payload = Json{{"reason", reason}};
  add(std::move(r));
}

void VerificationReport::merge(const VerificationReport& other) {
  records_.insert(records_.end(), other.records_.begin(), other.records_.end());
}

std::size_t VerificationReport::count(Status s) const {
  std::size_t n = 0;
  for (const auto& r : records_) n += r.status == s;
  return n;
}

const CheckRecord* VerificationReport::find(const std::string& suite, const std::string& id) const {
  for (const auto& r : records_)
    if (r.suite == suite && r.id == id) return &r;
  return nullptr;
}

Json VerificationReport::to_json(const Json& config) const {
  Json checks = Json::array();
  for (const auto& r : records_) {
    Json c;
    c["suite"] = r.suite;
    c["id"] = r.id;
    c["status"] = to_string(r.status);
    c["payload"] = r.payload;
    if (!r.counterexample.empty()) c["counterexample"] = r.counterexample;
    checks.push_back(std::move(c));
  }
  char digest[17];
  std::snprintf(digest, sizeof digest, "%016llx", static_cast<unsigned long long>(fnv1a(checks.dump())));
  Json j;
  j["tool"] = "sseala";
  j["version"] = kToolVersion;
  j["sampler"] = kSamplerName;
  j["config"] = config;
  j["summary"] = {{"pass", count(Status::Pass)}, {"fail", count(Status::Fail)}, {"skip", count(Status::Skip)}};
  j["digest"] = digest;
  j["checks"] = std::move(checks);
  return j;
}

Json VerificationReport::timings_json() const {
  Json t = Json::array();
  for (const auto& r : records_) t.push_back({{"suite", r.suite}, {"id", r.id}, {"elapsed_ms", r.elapsed_ms}});
  return t;
}

std::string VerificationReport::to_text() const {
  std::ostringstream out;
  for (const auto& r : records_) {
    out << (r.status == Status::Pass ? "PASS" : r.status == Status::Fail ? "FAIL" : "SKIP") << "  " << r.suite << "/"
        << r.id;
    if (!r.counterexample.empty()) out << "  counterexample: " << r.counterexample;
    out << "\n";
  }
  out << "summary: " << count(Status::Pass) << " pass, " << count(Status::Fail) << " fail, " << count(Status::Skip)
      << " skip\n";
  return out.str();
}

ScopedTimer::~ScopedTimer() {
  double ms = std::chrono::duration<double, std::milli>(clock::now() - t0_).count();
  auto& recs = report_.records();
  if (recs.size() <= first_) return;
  double each = ms / static_cast<double>(recs.size() - first_);
  for (std::size_t i = first_; i < recs.size(); ++i)
    if (recs[i].elapsed_ms == 0) recs[i].elapsed_ms = each;
}

}  // namespace sseala
