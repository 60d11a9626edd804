#include "qlindep/numbers.hpp"

#include <cctype>

namespace qlindep {

Rat rat_parse(const std::string& text) {
  if (text.empty()) throw input_error("empty rational literal");
  // Shape check first: mpq_class(str) aborts on garbage instead of throwing.
  std::size_t i = 0;
  auto digits = [&](std::size_t from) {
    std::size_t k = from;
    while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
    return k;
  };
  if (text[i] == '+' || text[i] == '-') ++i;
  std::size_t after_num = digits(i);
  if (after_num == i) throw input_error("bad rational literal: " + text);
  if (after_num < text.size()) {
    if (text[after_num] != '/')
      throw input_error("bad rational literal: " + text);
    std::size_t den_start = after_num + 1;
    std::size_t after_den = digits(den_start);
    if (after_den == den_start || after_den != text.size())
      throw input_error("bad rational literal: " + text);
  }
  Rat r;
  if (mpq_set_str(r.get_mpq_t(), text.c_str(), 10) != 0)
    throw input_error("bad rational literal: " + text);
  if (r.get_den() == 0) throw input_error("zero denominator: " + text);
  r.canonicalize();
  return r;
}

std::string rat_str(const Rat& r) {
  return r.get_str();
}

Rat rat_pow(const Rat& r, long e) {
  if (e == 0) return Rat(1);
  if (r == 0 && e < 0) throw input_error("0 raised to a negative power");
  unsigned long mag = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  Rat out;
  mpz_pow_ui(out.get_num_mpz_t(), r.get_num_mpz_t(), mag);
  mpz_pow_ui(out.get_den_mpz_t(), r.get_den_mpz_t(), mag);
  if (e < 0) {
    mpq_inv(out.get_mpq_t(), out.get_mpq_t());
  }
  // Inputs canonical => power is canonical; inversion fixes the sign.
  return out;
}

std::optional<Int> int_dth_root(const Int& a, unsigned long d) {
  if (d == 0) throw input_error("0th root");
  if (a < 0) return std::nullopt;
  Int r;
  mpz_root(r.get_mpz_t(), a.get_mpz_t(), d);
  if (int_pow(r, d) != a) return std::nullopt;
  return r;
}

}  // namespace qlindep
