// Symbol file format and builtin presets.
//
// JSON schema: {"kind": "fourier"|"singular", "alpha": <real, singular only>,
//              "coeffs": [[j, value], ...], "s": <decay exponent>}
// Unknown keys are rejected (strict parsing).
//
// Presets: "tridiag" (2 - 2 cos theta), "loop1" (f1(x) = x + x^2/4),
//          "halpha:<alpha>[:<cpreset>]" with cpreset "one" (default) or "cos"
//          (c(theta) = 1 + 0.3 cos theta).
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toepspec/phase.hpp"
#include "toepspec/symbols.hpp"

namespace toepspec {

struct LoadedSymbol {
  std::string name;
  std::optional<FourierSymbol> fourier;
  std::optional<SingularSymbol> singular;  // built lazily at a given order
  double alpha = 0.0;                      // singular kind only
  std::optional<FourierSymbol> c;          // singular kind only
  bool band_limited = false;               // presets: coefficients exact, pad freely

  bool is_singular() const { return c.has_value(); }

  // First column h^(0..n). Closed form for singular symbols; the declared
  // truncation order gates fourier symbols unless band-limited.
  std::vector<double> column(int n) const;

  // Loop view for the characteristic-equation solver. Fourier symbols are
  // checked against the simple-loop hypotheses here.
  LoopView view() const;

 private:
  std::optional<SimpleLoopSymbol> loop_;
  friend LoadedSymbol make_preset(const std::string&);
  friend LoadedSymbol load_symbol_json(const std::string&);
};

// Parses a preset name; throws std::invalid_argument for unknown ones.
LoadedSymbol make_preset(const std::string& spec);

// Parses the JSON text of a symbol file (strict schema).
LoadedSymbol load_symbol_json(const std::string& text);

// Inverse of load_symbol_json for fourier symbols.
std::string symbol_to_json(const FourierSymbol& sym);

}  // namespace toepspec
