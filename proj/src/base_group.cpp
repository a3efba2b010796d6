#include "forge/base_group.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <deque>
#include <functional>
#include <map>
#include <numeric>

#include "forge/errors.hpp"

namespace forge {

namespace {

std::int64_t mod_floor(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

void validate_spec(const BaseGroupSpec& spec) {
  switch (spec.kind) {
    case BaseKind::Cyclic:
    case BaseKind::Symmetric:
      if (spec.param < 1) throw UsageError("group parameter must be >= 1");
      if (!spec.factors.empty()) throw UsageError("unexpected factors");
      break;
    case BaseKind::FreeAbelian:
      if (spec.param < 1) throw UsageError("free-abelian rank must be >= 1");
      if (!spec.factors.empty()) throw UsageError("unexpected factors");
      break;
    case BaseKind::Product:
      if (spec.factors.size() != 2)
        throw UsageError("prod takes exactly two factors");
      validate_spec(spec.factors[0]);
      validate_spec(spec.factors[1]);
      break;
  }
}

// Geodesic table for one symmetric group: element -> (norm, geodesic).
// Generators: a = (0 1), b = (0 1 ... n-1). Built once per degree by BFS.
struct SymTable {
  std::map<BaseElement, std::pair<std::int64_t, std::vector<std::pair<int, int>>>>
      entries;
};

const SymTable& sym_table(std::int64_t n) {
  static std::map<std::int64_t, SymTable> tables;
  auto it = tables.find(n);
  if (it != tables.end()) return it->second;
  if (n > 9) throw BudgetExceeded("symmetric base group degree too large");

  BaseGroupSpec spec{BaseKind::Symmetric, n, {}};
  auto gens = base_generators(spec);
  SymTable table;
  BaseElement id = base_identity(spec);
  table.entries[id] = {0, {}};
  std::deque<BaseElement> queue{id};
  while (!queue.empty()) {
    BaseElement cur = queue.front();
    queue.pop_front();
    auto [norm, word] = table.entries[cur];
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      for (int sign : {+1, -1}) {
        BaseElement next = base_multiply(
            spec, cur,
            sign > 0 ? gens[gi].second : base_inverse(spec, gens[gi].second));
        if (table.entries.count(next)) continue;
        auto next_word = word;
        next_word.emplace_back(static_cast<int>(gi), sign);
        table.entries[next] = {norm + 1, std::move(next_word)};
        queue.push_back(next);
      }
    }
  }
  return tables.emplace(n, std::move(table)).first->second;
}

}  // namespace

bool BaseGroupSpec::operator==(const BaseGroupSpec& o) const {
  return kind == o.kind && param == o.param && factors == o.factors;
}

std::string positional_name(std::size_t index) {
  // 25 letters a..y per block; "z" is reserved.
  std::string name;
  while (true) {
    name.insert(name.begin(), static_cast<char>('a' + index % 25));
    if (index < 25) break;
    index = index / 25 - 1;
  }
  return name;
}

BaseGroupSpec parse_base_spec(const std::string& text) {
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto parse_int = [&]() -> std::int64_t {
    skip_ws();
    std::size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) throw UsageError("expected integer in group spec: " + text);
    return std::stoll(text.substr(start, pos - start));
  };

  std::function<BaseGroupSpec()> parse = [&]() -> BaseGroupSpec {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
    std::string head = text.substr(start, pos - start);
    skip_ws();
    BaseGroupSpec spec;
    if (head == "cyclic" || head == "sym" || head == "zfree") {
      if (pos >= text.size() || text[pos] != ':')
        throw UsageError("expected ':' after '" + head + "'");
      ++pos;
      spec.param = parse_int();
      spec.kind = head == "cyclic"  ? BaseKind::Cyclic
                  : head == "sym"   ? BaseKind::Symmetric
                                    : BaseKind::FreeAbelian;
    } else if (head == "prod") {
      if (pos >= text.size() || text[pos] != '(')
        throw UsageError("expected '(' after 'prod'");
      ++pos;
      spec.kind = BaseKind::Product;
      spec.factors.push_back(parse());
      skip_ws();
      if (pos >= text.size() || text[pos] != ',')
        throw UsageError("expected ',' in prod(...)");
      ++pos;
      spec.factors.push_back(parse());
      skip_ws();
      if (pos >= text.size() || text[pos] != ')')
        throw UsageError("expected ')' in prod(...)");
      ++pos;
    } else {
      throw UsageError("unknown base group kind '" + head + "' in: " + text);
    }
    return spec;
  };

  BaseGroupSpec spec = parse();
  skip_ws();
  if (pos != text.size()) throw UsageError("trailing input in group spec: " + text);
  validate_spec(spec);
  return spec;
}

std::string to_string(const BaseGroupSpec& spec) {
  switch (spec.kind) {
    case BaseKind::Cyclic:
      return "cyclic:" + std::to_string(spec.param);
    case BaseKind::Symmetric:
      return "sym:" + std::to_string(spec.param);
    case BaseKind::FreeAbelian:
      return "zfree:" + std::to_string(spec.param);
    case BaseKind::Product:
      return "prod(" + to_string(spec.factors[0]) + "," + to_string(spec.factors[1]) + ")";
  }
  return {};
}

std::size_t base_flat_size(const BaseGroupSpec& spec) {
  switch (spec.kind) {
    case BaseKind::Cyclic:
      return 1;
    case BaseKind::Symmetric:
      return static_cast<std::size_t>(spec.param);
    case BaseKind::FreeAbelian:
      return static_cast<std::size_t>(spec.param);
    case BaseKind::Product:
      return base_flat_size(spec.factors[0]) + base_flat_size(spec.factors[1]);
  }
  return 0;
}

std::optional<std::uint64_t> base_order(const BaseGroupSpec& spec) {
  switch (spec.kind) {
    case BaseKind::Cyclic:
      return static_cast<std::uint64_t>(spec.param);
    case BaseKind::Symmetric: {
      std::uint64_t f = 1;
      for (std::int64_t i = 2; i <= spec.param; ++i) f *= static_cast<std::uint64_t>(i);
      return f;
    }
    case BaseKind::FreeAbelian:
      return std::nullopt;
    case BaseKind::Product: {
      auto a = base_order(spec.factors[0]);
      auto b = base_order(spec.factors[1]);
      if (!a || !b) return std::nullopt;
      return *a * *b;
    }
  }
  return std::nullopt;
}

bool base_is_valid(const BaseGroupSpec& spec, const BaseElement& a) {
  if (a.size() != base_flat_size(spec)) return false;
  switch (spec.kind) {
    case BaseKind::Cyclic:
      return a[0] >= 0 && a[0] < spec.param;
    case BaseKind::Symmetric: {
      std::vector<bool> seen(static_cast<std::size_t>(spec.param), false);
      for (auto v : a) {
        if (v < 0 || v >= spec.param || seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = true;
      }
      return true;
    }
    case BaseKind::FreeAbelian:
      return true;
    case BaseKind::Product: {
      std::size_t cut = base_flat_size(spec.factors[0]);
      return base_is_valid(spec.factors[0], BaseElement(a.begin(), a.begin() + cut)) &&
             base_is_valid(spec.factors[1], BaseElement(a.begin() + cut, a.end()));
    }
  }
  return false;
}

BaseElement base_identity(const BaseGroupSpec& spec) {
  validate_spec(spec);
  switch (spec.kind) {
    case BaseKind::Cyclic:
      return {0};
    case BaseKind::Symmetric: {
      BaseElement e(static_cast<std::size_t>(spec.param));
      std::iota(e.begin(), e.end(), 0);
      return e;
    }
    case BaseKind::FreeAbelian:
      return BaseElement(static_cast<std::size_t>(spec.param), 0);
    case BaseKind::Product: {
      BaseElement e = base_identity(spec.factors[0]);
      BaseElement f = base_identity(spec.factors[1]);
      e.insert(e.end(), f.begin(), f.end());
      return e;
    }
  }
  return {};
}

BaseElement base_multiply(const BaseGroupSpec& spec, const BaseElement& a,
                          const BaseElement& b) {
  if (a.size() != base_flat_size(spec) || b.size() != base_flat_size(spec))
    throw std::invalid_argument("element does not match group spec");
  switch (spec.kind) {
    case BaseKind::Cyclic:
      return {mod_floor(a[0] + b[0], spec.param)};
    case BaseKind::Symmetric: {
      // (ab)(i) = a(b(i))
      BaseElement r(a.size());
      for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[static_cast<std::size_t>(b[i])];
      return r;
    }
    case BaseKind::FreeAbelian: {
      BaseElement r(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
      return r;
    }
    case BaseKind::Product: {
      std::size_t cut = base_flat_size(spec.factors[0]);
      BaseElement r = base_multiply(spec.factors[0],
                                    BaseElement(a.begin(), a.begin() + cut),
                                    BaseElement(b.begin(), b.begin() + cut));
      BaseElement s = base_multiply(spec.factors[1],
                                    BaseElement(a.begin() + cut, a.end()),
                                    BaseElement(b.begin() + cut, b.end()));
      r.insert(r.end(), s.begin(), s.end());
      return r;
    }
  }
  return {};
}

BaseElement base_inverse(const BaseGroupSpec& spec, const BaseElement& a) {
  if (a.size() != base_flat_size(spec))
    throw std::invalid_argument("element does not match group spec");
  switch (spec.kind) {
    case BaseKind::Cyclic:
      return {mod_floor(-a[0], spec.param)};
    case BaseKind::Symmetric: {
      BaseElement r(a.size());
      for (std::size_t i = 0; i < a.size(); ++i)
        r[static_cast<std::size_t>(a[i])] = static_cast<std::int64_t>(i);
      return r;
    }
    case BaseKind::FreeAbelian: {
      BaseElement r(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
      return r;
    }
    case BaseKind::Product: {
      std::size_t cut = base_flat_size(spec.factors[0]);
      BaseElement r = base_inverse(spec.factors[0], BaseElement(a.begin(), a.begin() + cut));
      BaseElement s = base_inverse(spec.factors[1], BaseElement(a.begin() + cut, a.end()));
      r.insert(r.end(), s.begin(), s.end());
      return r;
    }
  }
  return {};
}

std::vector<std::pair<std::string, BaseElement>> base_generators(
    const BaseGroupSpec& spec) {
  validate_spec(spec);
  std::vector<BaseElement> raw;
  switch (spec.kind) {
    case BaseKind::Cyclic:
      if (spec.param > 1) raw.push_back({1});
      break;
    case BaseKind::Symmetric: {
      std::int64_t n = spec.param;
      if (n >= 2) {
        BaseElement swap01 = base_identity(spec);
        std::swap(swap01[0], swap01[1]);
        raw.push_back(swap01);
        BaseElement cycle(static_cast<std::size_t>(n));
        for (std::int64_t i = 0; i < n; ++i)
          cycle[static_cast<std::size_t>(i)] = (i + 1) % n;
        raw.push_back(cycle);
      }
      break;
    }
    case BaseKind::FreeAbelian:
      for (std::int64_t i = 0; i < spec.param; ++i) {
        BaseElement e(static_cast<std::size_t>(spec.param), 0);
        e[static_cast<std::size_t>(i)] = 1;
        raw.push_back(e);
      }
      break;
    case BaseKind::Product: {
      std::size_t left = base_flat_size(spec.factors[0]);
      std::size_t right = base_flat_size(spec.factors[1]);
      BaseElement id_left = base_identity(spec.factors[0]);
      BaseElement id_right = base_identity(spec.factors[1]);
      for (auto& [name, g] : base_generators(spec.factors[0])) {
        (void)name;
        BaseElement e = g;
        e.insert(e.end(), id_right.begin(), id_right.end());
        raw.push_back(e);
      }
      for (auto& [name, g] : base_generators(spec.factors[1])) {
        (void)name;
        BaseElement e = id_left;
        e.insert(e.end(), g.begin(), g.end());
        raw.push_back(e);
      }
      (void)left;
      (void)right;
      break;
    }
  }

  BaseElement id = base_identity(spec);
  std::vector<std::pair<std::string, BaseElement>> out;
  for (auto& g : raw) {
    if (g == id) continue;
    bool dup = false;
    for (auto& [n, h] : out) {
      (void)n;
      if (h == g) { dup = true; break; }
    }
    if (dup) continue;
    out.emplace_back(positional_name(out.size()), g);
  }
  return out;
}

std::int64_t base_norm(const BaseGroupSpec& spec, const BaseElement& a) {
  switch (spec.kind) {
    case BaseKind::Cyclic:
      return std::min(a[0], spec.param - a[0]);
    case BaseKind::Symmetric:
      return sym_table(spec.param).entries.at(a).first;
    case BaseKind::FreeAbelian: {
      std::int64_t n = 0;
      for (auto v : a) n += std::abs(v);
      return n;
    }
    case BaseKind::Product: {
      std::size_t cut = base_flat_size(spec.factors[0]);
      return base_norm(spec.factors[0], BaseElement(a.begin(), a.begin() + cut)) +
             base_norm(spec.factors[1], BaseElement(a.begin() + cut, a.end()));
    }
  }
  return 0;
}

std::vector<std::pair<int, int>> base_geodesic(const BaseGroupSpec& spec,
                                               const BaseElement& a) {
  std::vector<std::pair<int, int>> word;
  switch (spec.kind) {
    case BaseKind::Cyclic: {
      // minimal |exponent|, positive on ties
      std::int64_t r = a[0];
      std::int64_t e = (r <= spec.param - r) ? r : r - spec.param;
      for (std::int64_t i = 0; i < std::abs(e); ++i) word.emplace_back(0, e > 0 ? 1 : -1);
      break;
    }
    case BaseKind::Symmetric:
      return sym_table(spec.param).entries.at(a).second;
    case BaseKind::FreeAbelian:
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::int64_t j = 0; j < std::abs(a[i]); ++j)
          word.emplace_back(static_cast<int>(i), a[i] > 0 ? 1 : -1);
      break;
    case BaseKind::Product: {
      std::size_t cut = base_flat_size(spec.factors[0]);
      int offset = static_cast<int>(base_generators(spec.factors[0]).size());
      word = base_geodesic(spec.factors[0], BaseElement(a.begin(), a.begin() + cut));
      for (auto [gi, sign] : base_geodesic(spec.factors[1], BaseElement(a.begin() + cut, a.end())))
        word.emplace_back(gi + offset, sign);
      break;
    }
  }
  return word;
}

}  // namespace forge
