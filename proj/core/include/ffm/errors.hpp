#pragma once

#include <stdexcept>
#include <string>

namespace ffm {

// Thrown when a configured memory/time budget (sweep cap, table cap, field
// size cap) would be exceeded. The CLI maps this to exit code 3.
class resource_error : public std::runtime_error {
 public:
  explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ffm
