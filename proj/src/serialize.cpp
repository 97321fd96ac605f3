#include "conjulab/serialize.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace conjulab {
namespace {

double number_at(const Json& j, const std::string& field) {
  if (!j.is_number()) throw ParameterError(field + ": expected a number");
  return j.get<double>();
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2)
    throw ParameterError(field + ": expected [re, im]");
  return Complex(number_at(j[0], field + "[0]"), number_at(j[1], field + "[1]"));
}

Json blaschke_to_json(const BlaschkeProduct& b) {
  Json j;
  j["lambda"] = complex_to_json(b.lambda());
  Json zeros = Json::array();
  const auto& zs = b.zeros();
  for (std::size_t i = 0; i < zs.size();) {
    std::size_t run = 1;
    while (i + run < zs.size() && std::abs(zs[i + run] - zs[i]) < kZeroPairingTol) ++run;
    zeros.push_back(Json::array({zs[i].real(), zs[i].imag(), run}));
    i += run;
  }
  j["zeros"] = std::move(zeros);
  return j;
}

BlaschkeProduct blaschke_from_json(const Json& j) {
  if (!j.is_object()) throw ParameterError("blaschke: expected an object");
  for (const auto& [key, _] : j.items())
    if (key != "lambda" && key != "zeros")
      throw ParameterError("blaschke: unknown field '" + key + "'");

  Complex lambda(1.0, 0.0);
  if (j.contains("lambda")) lambda = complex_from_json(j.at("lambda"), "lambda");
  if (std::abs(std::abs(lambda) - 1.0) > 1e-9)
    throw ParameterError("lambda: modulus must equal 1");
  lambda /= std::abs(lambda);

  std::vector<Complex> zeros;
  if (j.contains("zeros")) {
    const Json& zj = j.at("zeros");
    if (!zj.is_array()) throw ParameterError("zeros: expected an array");
    for (std::size_t i = 0; i < zj.size(); ++i) {
      const std::string field = "zeros[" + std::to_string(i) + "]";
      const Json& entry = zj[i];
      if (!entry.is_array() || (entry.size() != 2 && entry.size() != 3))
        throw ParameterError(field + ": expected [re, im] or [re, im, multiplicity]");
      const Complex a(number_at(entry[0], field + "[0]"), number_at(entry[1], field + "[1]"));
      long mult = 1;
      if (entry.size() == 3) {
        if (!entry[2].is_number_integer() || entry[2].get<long>() < 1)
          throw ParameterError(field + "[2]: multiplicity must be a positive integer");
        mult = entry[2].get<long>();
      }
      if (std::abs(a) >= 1.0)
        throw ParameterError(field + ": zero must lie in the open unit disk");
      for (long m = 0; m < mult; ++m) zeros.push_back(a);
    }
  }
  return BlaschkeProduct(lambda, std::move(zeros));
}

Json config_to_json(const RunConfig& c) {
  Json j;
  j["grid_log2"] = c.grid_log2;
  j["band"] = c.band;
  j["tol_construct"] = c.tol_construct;
  j["tol_composed"] = c.tol_composed;
  j["demo_floor"] = c.demo_floor;
  j["seed"] = c.seed;
  j["max_degree"] = c.max_degree;
  j["trials"] = c.trials;
  return j;
}

RunConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw ParameterError("config: expected an object");
  RunConfig c;
  for (const auto& [key, value] : j.items()) {
    if (key == "grid_log2") c.grid_log2 = value.get<int>();
    else if (key == "band") c.band = value.get<int>();
    else if (key == "tol_construct") c.tol_construct = value.get<double>();
    else if (key == "tol_composed") c.tol_composed = value.get<double>();
    else if (key == "demo_floor") c.demo_floor = value.get<double>();
    else if (key == "seed") c.seed = value.get<std::uint64_t>();
    else if (key == "max_degree") c.max_degree = value.get<int>();
    else if (key == "trials") c.trials = value.get<int>();
    else throw ParameterError("config: unknown field '" + key + "'");
  }
  c.validate();
  return c;
}

Complex parse_complex(const std::string& text) {
  if (text.empty()) throw ParameterError("empty complex literal");
  // Split off a trailing imaginary term: the last +/- that is not an
  // exponent sign and not the leading sign starts the second component.
  const bool imaginary_tail = text.back() == 'i' || text.back() == 'I';
  std::size_t split = std::string::npos;
  for (std::size_t p = text.size(); p-- > 1;) {
    const char c = text[p];
    if ((c == '+' || c == '-') && text[p - 1] != 'e' && text[p - 1] != 'E') {
      split = p;
      break;
    }
  }

  auto to_double = [](std::string s, const char* what) {
    if (s.empty() || s == "+" || s == "-") s += "1";  // bare sign before 'i'
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == nullptr || *end != '\0')
      throw ParameterError(std::string("bad ") + what + " part in complex literal");
    return v;
  };

  if (split == std::string::npos) {
    if (imaginary_tail) {
      std::string body = text.substr(0, text.size() - 1);
      return Complex(0.0, to_double(body.empty() ? "1" : body, "imaginary"));
    }
    return Complex(to_double(text, "real"), 0.0);
  }

  if (!imaginary_tail)
    throw ParameterError("complex literal with two terms must end in 'i'");
  const std::string re = text.substr(0, split);
  std::string im = text.substr(split, text.size() - split - 1);
  return Complex(to_double(re, "real"), to_double(im, "imaginary"));
}

}  // namespace conjulab
