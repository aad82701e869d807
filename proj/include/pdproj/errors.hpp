#pragma once

#include <stdexcept>
#include <string>

namespace pdproj {

// Failure taxonomy. Geometric degeneracies and numerical non-convergence are
// reported as exceptions carrying one of these codes so callers (and the CLI,
// which maps them to in-band diagnostics) can react by kind rather than by
// message text.
enum class errc {
  degenerate_origin,            // point coincides with the focus
  degenerate_on_axis,           // point (or an interior segment point) on the w-axis
  degenerate_line_through_focus,// line passes through the focus
  not_elliptic,                 // elliptic-only operation on a non-elliptic section
  not_on_plane,                 // point does not lie on the section plane
  span_too_large,               // angular span out of the supported range
  out_of_range,                 // scalar argument outside its domain
  no_convergence,               // refinement / adaptive subdivision exhausted
  region_inverted,              // boundary corners do not bound a simple region
  parse_error,                  // malformed scene text or unknown/duplicate fields
  validation_error,             // analytic value disagrees with its oracle
  invalid_argument,             // contract violation not covered above
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] void raise(errc code, const std::string& what);

}  // namespace pdproj
