#pragma once

#include <stdexcept>
#include <string>

namespace cesforge {

enum class Errc {
  parameter_pole,       // b of F(a,b;z) hits a non-positive integer
  no_convergence,       // Kummer series did not reach tolerance
  domain,               // argument outside the operation's domain
  invalid_argument,
  ground_state_violation,
  node_in_domain,
  unclassifiable,
  null_result,          // intertwined function vanished (E = epsilon)
  confinement,          // state not bound on the grid
  discretization,       // Richardson check failed
};

const char* to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace cesforge
