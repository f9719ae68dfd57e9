#include "conemet/divisor.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace conemet {

const char* err_name(Err c) {
  switch (c) {
    case Err::InvalidDivisor: return "InvalidDivisor";
    case Err::TwoIntegers: return "TwoIntegers";
    case Err::PoleHit: return "PoleHit";
    case Err::DegenerateDerivative: return "DegenerateDerivative";
    case Err::PathTooClose: return "PathTooClose";
    case Err::StepUnderflow: return "StepUnderflow";
    case Err::ReducibleInput: return "ReducibleInput";
    case Err::NotUnitarizable: return "NotUnitarizable";
    case Err::NoInvariantForm: return "NoInvariantForm";
    case Err::ParityError: return "ParityError";
    case Err::ConditionViolated: return "ConditionViolated";
    case Err::FitDiverged: return "FitDiverged";
    case Err::Indeterminate: return "Indeterminate";
    case Err::IntegrationObstruction: return "IntegrationObstruction";
    case Err::NonUnitaryMonodromy: return "NonUnitaryMonodromy";
    case Err::SingularityTooClose: return "SingularityTooClose";
    case Err::BadArgument: return "BadArgument";
  }
  return "Unknown";
}

const char* reducibility_name(ReducibilityClass c) {
  switch (c) {
    case ReducibilityClass::Irreducible: return "Irreducible";
    case ReducibilityClass::H1Reducible: return "H1Reducible";
    case ReducibilityClass::H3Reducible: return "H3Reducible";
  }
  return "Unknown";
}

Divisor make_divisor(double b1, double b2, double b3) {
  Divisor d;
  d.beta = {b1, b2, b3};
  for (double b : d.beta) {
    if (!(b > -1.0) || !std::isfinite(b))
      throw Error(Err::InvalidDivisor,
                  "conical order must be a finite number > -1 (got " + std::to_string(b) + ")");
  }
  return d;
}

namespace {

double parse_entry(const std::string& tok, signed char& hint) {
  auto slash = tok.find('/');
  if (slash != std::string::npos) {
    char* end = nullptr;
    long num = std::strtol(tok.c_str(), &end, 10);
    if (end != tok.c_str() + slash)
      throw Error(Err::InvalidDivisor, "bad rational order '" + tok + "'");
    long den = std::strtol(tok.c_str() + slash + 1, &end, 10);
    if (*end != '\0' || den == 0)
      throw Error(Err::InvalidDivisor, "bad rational order '" + tok + "'");
    hint = (num % den == 0) ? 1 : 0;
    return static_cast<double>(num) / static_cast<double>(den);
  }
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    throw Error(Err::InvalidDivisor, "bad order '" + tok + "'");
  }
  if (pos != tok.size()) throw Error(Err::InvalidDivisor, "bad order '" + tok + "'");
  hint = -1;
  return v;
}

}  // namespace

Divisor parse_divisor(const std::string& text) {
  std::array<double, 3> b;
  std::array<signed char, 3> hints;
  std::stringstream ss(text);
  std::string tok;
  int n = 0;
  while (std::getline(ss, tok, ',')) {
    if (n >= 3) throw Error(Err::InvalidDivisor, "expected three comma-separated orders");
    b[n] = parse_entry(tok, hints[n]);
    ++n;
  }
  if (n != 3) throw Error(Err::InvalidDivisor, "expected three comma-separated orders");
  Divisor d = make_divisor(b[0], b[1], b[2]);
  d.int_hint = hints;
  return d;
}

bool integer_order(const Divisor& d, int j, double tol) {
  if (d.int_hint[j] >= 0) return d.int_hint[j] == 1;
  return std::abs(d.beta[j] - std::round(d.beta[j])) < tol;
}

ReducibilityClass classify_reducibility(const Divisor& d, double tol) {
  int n = 0;
  for (int j = 0; j < 3; ++j) n += integer_order(d, j, tol) ? 1 : 0;
  switch (n) {
    case 0: return ReducibilityClass::Irreducible;
    case 1: return ReducibilityClass::H1Reducible;
    case 3: return ReducibilityClass::H3Reducible;
    default:
      throw Error(Err::TwoIntegers,
                  "exactly two integer orders: no metric with this divisor exists in any class");
  }
}

double trace_condition_value(const Divisor& d) {
  double c1 = std::cos(d.B(0)), c2 = std::cos(d.B(1)), c3 = std::cos(d.B(2));
  return c1 * c1 + c2 * c2 + c3 * c3 + 2.0 * c1 * c2 * c3;
}

ExistenceVerdict irreducible_exists(const Divisor& d) {
  double L = trace_condition_value(d);
  return {L < 1.0, 1.0 - L};
}

}  // namespace conemet
