#include "opcalc/spec_io.hpp"

#include <charconv>
#include <map>
#include <sstream>
#include <vector>

#include "opcalc/errors.hpp"
#include "opcalc/expression.hpp"

namespace opcalc {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<Rational> parse_row(const std::string& value, std::size_t n, std::size_t line) {
  std::istringstream in(value);
  std::vector<Rational> row;
  std::string tok;
  while (in >> tok) {
    try {
      row.push_back(parse_rational(tok));
    } catch (const DomainError& e) {
      throw ParseError(e.what(), line);
    }
  }
  if (row.size() != n)
    throw ParseError("expected " + std::to_string(n) + " entries, got " + std::to_string(row.size()), line);
  return row;
}

std::string row_text(const std::vector<Rational>& row) {
  std::string out;
  for (const auto& v : row) {
    if (!out.empty()) out += ' ';
    out += to_string(v);
  }
  return out;
}

void append_common(std::ostringstream& out, const OneForm& omega, const AffineMap& phi) {
  for (std::size_t i = 0; i < omega.dim(); ++i) out << "omega" << i + 1 << " = " << omega[i].to_string() << '\n';
  for (std::size_t i = 0; i < phi.dim(); ++i) out << "row" << i + 1 << " = " << row_text(phi.matrix()[i]) << '\n';
  out << "offset = " << row_text(phi.offset()) << '\n';
}

}  // namespace

AutoSpec parse_auto_spec(std::string_view text, std::optional<std::size_t> n) {
  std::map<std::string, std::pair<std::string, std::size_t>> entries;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string_view line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no);
    std::string key(trim(line.substr(0, eq)));
    if (entries.count(key)) throw ParseError("duplicate key '" + key + "'", line_no);
    entries.emplace(key, std::make_pair(std::string(trim(line.substr(eq + 1))), line_no));
  }

  auto take = [&](const std::string& key) -> std::optional<std::pair<std::string, std::size_t>> {
    auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    auto v = it->second;
    entries.erase(it);
    return v;
  };
  auto rational_key = [&](const std::string& key, Rational fallback) {
    auto v = take(key);
    if (!v) return fallback;
    try {
      return parse_rational(v->first);
    } catch (const DomainError& e) {
      throw ParseError(e.what(), v->second);
    }
  };

  const auto family = take("family");
  if (!family) throw ParseError("missing 'family'", 0);
  if (auto dim = take("dim")) {
    std::size_t declared = 0;
    const std::string& t = dim->first;
    const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), declared);
    if (ec != std::errc{} || end != t.data() + t.size() || declared < 1 || declared > kMaxDim)
      throw ParseError("dim must be an integer in 1.." + std::to_string(kMaxDim), dim->second);
    if (n && *n != declared) throw DimensionMismatch(*n, declared);
    n = declared;
  }
  if (!n) throw ParseError("dimension unknown: add 'dim = n'", 0);
  const std::size_t dim = *n;

  std::vector<Polynomial> omega_parts;
  for (std::size_t i = 0; i < dim; ++i) {
    auto v = take("omega" + std::to_string(i + 1));
    omega_parts.push_back(v ? parse_polynomial(v->first, dim) : Polynomial(dim));
  }
  RationalMatrix matrix = AffineMap::identity(dim).matrix();
  for (std::size_t i = 0; i < dim; ++i)
    if (auto v = take("row" + std::to_string(i + 1))) matrix[i] = parse_row(v->first, dim, v->second);
  std::vector<Rational> offset(dim, Rational(0));
  if (auto v = take("offset")) offset = parse_row(v->first, dim, v->second);

  OneForm omega(std::move(omega_parts));
  AffineMap phi(std::move(matrix), std::move(offset));

  AutoSpec result = [&]() -> AutoSpec {
    if (family->first == "d1") {
      Rational kappa = rational_key("kappa", 1);
      Rational lambda = rational_key("lambda", 0);
      return D1AutoSpec(kappa, lambda, omega, phi);
    }
    if (family->first == "d") {
      const Rational a = rational_key("a", 0);
      if (a != 0 && a != 1) throw DomainError("a must be 0 or 1");
      return DAutoSpec(phi, a == 1 ? 1 : 0, omega);
    }
    if (family->first == "s") return SAutoSpec(rational_key("kappa", 1), phi, omega);
    throw ParseError("unknown family '" + family->first + "'", family->second);
  }();
  if (!entries.empty()) {
    const auto& [key, value] = *entries.begin();
    throw ParseError("unknown or inapplicable key '" + key + "'", value.second);
  }
  return result;
}

std::string format_auto_spec(const AutoSpec& spec) {
  std::ostringstream out;
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, D1AutoSpec>) {
          out << "family = d1\ndim = " << s.dim() << "\nkappa = " << to_string(s.kappa)
              << "\nlambda = " << to_string(s.lambda) << '\n';
        } else if constexpr (std::is_same_v<S, DAutoSpec>) {
          out << "family = d\ndim = " << s.dim() << "\na = " << s.a << '\n';
        } else {
          out << "family = s\ndim = " << s.dim() << "\nkappa = " << to_string(s.kappa) << '\n';
        }
        append_common(out, s.omega, s.phi);
      },
      spec);
  return out.str();
}

}  // namespace opcalc
