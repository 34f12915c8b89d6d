#pragma once

#include <stdexcept>
#include <string>

namespace ainf {

// Every module error carries a stable name (e.g. "NotAField") so front-ends
// can surface it verbatim.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

}  // namespace ainf
