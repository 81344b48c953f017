#pragma once

#include <stdexcept>
#include <string>

namespace ppacert {

/// Thrown when an exact verification step fails. The message names the
/// failing stage (primal / dual / gap) and the offending index or entry.
class CertificationError : public std::runtime_error {
public:
  explicit CertificationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ppacert
