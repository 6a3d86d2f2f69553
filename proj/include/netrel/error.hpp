#pragma once

#include <stdexcept>
#include <string>

namespace netrel {

// Input problems (bad probabilities, malformed graphs, invalid parameters)
// are reported as std::invalid_argument. Everything below is a failure of
// the computation itself on otherwise valid input.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CapExceededError : public Error {
 public:
  CapExceededError(std::size_t edges, std::size_t cap)
      : Error("graph has " + std::to_string(edges) +
              " edges: too large for exact enumeration (cap " +
              std::to_string(cap) + ")"),
        edges_(edges),
        cap_(cap) {}

  std::size_t edges() const noexcept { return edges_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t edges_;
  std::size_t cap_;
};

class DivergenceError : public Error {
 public:
  using Error::Error;
};

class NoGiantComponentError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class NoCrossingError : public Error {
 public:
  explicit NoCrossingError(double horizon)
      : Error("reliability curve does not cross the threshold before horizon t=" +
              std::to_string(horizon)),
        horizon_(horizon) {}

  double horizon() const noexcept { return horizon_; }

 private:
  double horizon_;
};

}  // namespace netrel
