#ifndef NETVEIL_ERRORS_HPP
#define NETVEIL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace netveil {

// Stable error codes surfaced by the CLI and the loaders. Each validation
// failure maps to exactly one code.
enum class ErrorCode {
    schema,             // malformed document / wrong JSON types
    missing_field,      // required field absent
    duplicate_site,     // two elements occupy the same site
    disconnected,       // topology graph is not connected
    negative_distance,  // public edge distance < 0
    unknown_id,         // node/edge/element id out of range
    shape_mismatch,     // vector lengths or network shapes disagree
    bad_parameter,      // parameter outside its documented domain
    topology,           // unreachable pair on a graph assumed connected
    io,                 // file not readable / directory not writable
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

}  // namespace netveil

#endif
