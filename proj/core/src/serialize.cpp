#include "toepspec/serialize.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace toepspec {

using nlohmann::json;

std::vector<double> LoadedSymbol::column(int n) const {
  if (is_singular()) {
    const SingularSymbol s(alpha, *c, n);
    std::vector<double> col(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) col[static_cast<std::size_t>(j)] = s.coeff(j);
    return col;
  }
  if (!fourier) throw std::logic_error("LoadedSymbol: empty");
  if (!band_limited && fourier->order() < n)
    throw std::invalid_argument("symbol truncation order below requested N");
  std::vector<double> col(static_cast<std::size_t>(n) + 1, 0.0);
  for (int j = 0; j <= n; ++j) col[static_cast<std::size_t>(j)] = fourier->coeff(j);
  return col;
}

LoopView LoadedSymbol::view() const {
  if (is_singular()) {
    const SingularSymbol s(alpha, *c, 8);
    return LoopView::from(s);
  }
  if (loop_) return LoopView::from(*loop_);
  if (!fourier) throw std::logic_error("LoadedSymbol: empty");
  LoopView v = LoopView::from(SimpleLoopSymbol::from_fourier(*fourier));
  if (band_limited) {
    const FourierSymbol f = *fourier;
    v.column = [f](int n) {
      std::vector<double> col(static_cast<std::size_t>(n) + 1, 0.0);
      for (int j = 0; j <= n; ++j) col[static_cast<std::size_t>(j)] = f.coeff(j);
      return col;
    };
  }
  return v;
}

namespace {

FourierSymbol c_preset(const std::string& name) {
  if (name == "one" || name.empty()) return FourierSymbol({1.0}, 0.0, "one");
  if (name == "cos") return FourierSymbol({1.0, 0.15}, 0.0, "cos");  // 1 + 0.3 cos
  throw std::invalid_argument("unknown c preset: " + name);
}

}  // namespace

LoadedSymbol make_preset(const std::string& spec) {
  LoadedSymbol out;
  if (spec == "tridiag") {
    out.name = "tridiag";
    out.fourier = FourierSymbol({2.0, -1.0}, 0.0, "tridiag");
    out.band_limited = true;
    out.loop_ = SimpleLoopSymbol([](double x) { return 2.0 * x; },
                                 [](double) { return 2.0; }, 2.0, -2.0, "tridiag");
    return out;
  }
  if (spec == "loop1") {
    out.name = "loop1";
    out.fourier = FourierSymbol({11.0 / 8.0, -0.75, 1.0 / 16.0}, 0.0, "loop1");
    out.band_limited = true;
    out.loop_ = SimpleLoopSymbol([](double x) { return x + 0.25 * x * x; },
                                 [](double x) { return 1.0 + 0.5 * x; }, 1.0, -2.0, "loop1");
    return out;
  }
  if (spec.rfind("halpha:", 0) == 0) {
    const std::string rest = spec.substr(7);
    const auto colon = rest.find(':');
    const std::string astr = colon == std::string::npos ? rest : rest.substr(0, colon);
    const std::string cstr = colon == std::string::npos ? "" : rest.substr(colon + 1);
    double a = 0.0;
    try {
      a = std::stod(astr);
    } catch (const std::exception&) {
      throw std::invalid_argument("halpha preset: bad alpha '" + astr + "'");
    }
    out.name = spec;
    out.alpha = a;
    out.c = c_preset(cstr);
    // constructor validates alpha and positivity
    (void)SingularSymbol(a, *out.c, 2);
    return out;
  }
  throw std::invalid_argument("unknown preset: " + spec);
}

LoadedSymbol load_symbol_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("symbol file: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("symbol file: expected a JSON object");
  for (const auto& [key, _] : j.items())
    if (key != "kind" && key != "alpha" && key != "coeffs" && key != "s")
      throw std::invalid_argument("symbol file: unknown key '" + key + "'");
  const std::string kind = j.at("kind").get<std::string>();
  const double s = j.value("s", 0.0);

  std::vector<double> coeffs;
  long max_j = 0;
  for (const auto& pair : j.at("coeffs")) {
    if (!pair.is_array() || pair.size() != 2)
      throw std::invalid_argument("symbol file: coeffs entries must be [j, value]");
    max_j = std::max(max_j, std::abs(pair[0].get<long>()));
  }
  coeffs.assign(static_cast<std::size_t>(max_j) + 1, 0.0);
  for (const auto& pair : j.at("coeffs")) {
    const long idx = pair[0].get<long>();
    const double v = pair[1].get<double>();
    if (!std::isfinite(v)) throw std::invalid_argument("symbol file: non-finite coefficient");
    const std::size_t a = static_cast<std::size_t>(std::abs(idx));
    if (coeffs[a] != 0.0 && coeffs[a] != v)
      throw std::invalid_argument("symbol file: c(j) and c(-j) disagree (symbol must be even)");
    coeffs[a] = v;
  }

  LoadedSymbol out;
  if (kind == "fourier") {
    out.name = "fourier-file";
    out.fourier = FourierSymbol(std::move(coeffs), s, out.name);
    return out;
  }
  if (kind == "singular") {
    if (!j.contains("alpha")) throw std::invalid_argument("symbol file: singular kind needs alpha");
    out.name = "singular-file";
    out.alpha = j.at("alpha").get<double>();
    out.c = FourierSymbol(std::move(coeffs), s, "c-file");
    (void)SingularSymbol(out.alpha, *out.c, 2);
    return out;
  }
  throw std::invalid_argument("symbol file: kind must be 'fourier' or 'singular'");
}

std::string symbol_to_json(const FourierSymbol& sym) {
  json j;
  j["kind"] = "fourier";
  j["s"] = sym.decay_exponent();
  json arr = json::array();
  for (int k = 0; k <= sym.order(); ++k)
    arr.push_back(json::array({k, sym.coeff(k)}));
  j["coeffs"] = arr;
  return j.dump(2);
}

}  // namespace toepspec
