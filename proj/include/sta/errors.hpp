#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace sta {

// Base class for every error raised by the library, so callers can catch
// the whole family with one handler.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidParameterError : Error {
  std::string field;
  InvalidParameterError(std::string field_name, const std::string& what)
      : Error(what), field(std::move(field_name)) {}
};

struct UnknownPresetError : Error {
  using Error::Error;
};

struct PlacementError : Error {
  using Error::Error;
};

struct InvalidActionError : Error {
  int agent;
  int action;
  InvalidActionError(int agent_id, int action_code, const std::string& what)
      : Error(what), agent(agent_id), action(action_code) {}
};

struct DegenerateSampleError : Error {
  using Error::Error;
};

}  // namespace sta
