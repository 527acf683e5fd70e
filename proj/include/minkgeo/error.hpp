#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace minkgeo {

// Single error type so the CLI can map any failure to {"error": {"kind", "detail"}}.
// kind: "schema" (malformed input), "domain" (precondition), "numeric" (breakdown), "io".
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& detail)
      : std::runtime_error(detail), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

[[noreturn]] inline void fail_schema(const std::string& detail) { throw Error("schema", detail); }
[[noreturn]] inline void fail_domain(const std::string& detail) { throw Error("domain", detail); }
[[noreturn]] inline void fail_numeric(const std::string& detail) { throw Error("numeric", detail); }
[[noreturn]] inline void fail_io(const std::string& detail) { throw Error("io", detail); }

}  // namespace minkgeo
