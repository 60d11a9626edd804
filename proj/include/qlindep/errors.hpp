#ifndef QLINDEP_ERRORS_HPP_
#define QLINDEP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace qlindep {

/* Error hierarchy mirrored by the CLI exit codes:
 *   input_error      -> exit 3 (malformed/invalid input)
 *   hypothesis_error -> exit 2 (a mode's hypothesis fails, or the base is
 *                       neither Pisot nor Salem)
 *   precision_error  -> exit 4 (precision exhausted before a certifiable
 *                       answer; never downgraded to a guess)
 */
struct input_error : std::runtime_error {
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

struct hypothesis_error : std::runtime_error {
  explicit hypothesis_error(const std::string& what) : std::runtime_error(what) {}
};

struct precision_error : std::runtime_error {
  explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

/* Internal invariant violations (certificate re-checks that can only fail on a
 * bug). Kept separate so callers can distinguish "bad input" from "bad us". */
struct internal_error : std::logic_error {
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace qlindep

#endif
