#include <boolpres/text_io.hpp>

#include <algorithm>
#include <charconv>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace boolpres {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string_view> words;
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    auto end = text.find('\n');
    auto line = text.substr(0, end);
    text = end == std::string_view::npos ? std::string_view{} : text.substr(end + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    Line l{number, {}};
    std::size_t k = 0;
    while (k < line.size()) {
      while (k < line.size() && is_space(line[k])) ++k;
      auto start = k;
      while (k < line.size() && !is_space(line[k])) ++k;
      if (k > start) l.words.push_back(line.substr(start, k - start));
    }
    if (!l.words.empty()) out.push_back(std::move(l));
  }
  return out;
}

[[noreturn]] void fail(const Line& l, const std::string& what) {
  throw ParseError("line " + std::to_string(l.number) + ": " + what);
}

std::uint64_t parse_natural(std::string_view w, const std::string& where) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
  if (ec != std::errc{} || ptr != w.data() + w.size())
    throw ParseError(where + "expected a natural number, got '" + std::string(w) + "'");
  return v;
}

std::uint64_t natural(const Line& l, std::string_view w) {
  return parse_natural(w, "line " + std::to_string(l.number) + ": ");
}

Index index(const Line& l, std::string_view w) {
  auto v = natural(l, w);
  if (v > std::numeric_limits<Index>::max()) fail(l, "index too large");
  return static_cast<Index>(v);
}

// "3=1"
std::pair<Index, bool> literal(const Line& l, std::string_view w) {
  auto eq = w.find('=');
  if (eq == std::string_view::npos || eq + 2 != w.size() || (w.back() != '0' && w.back() != '1'))
    fail(l, "expected i=0 or i=1, got '" + std::string(w) + "'");
  return {index(l, w.substr(0, eq)), w.back() == '1'};
}

// "gens: 0 1 2"; fills `rest` with the words after the header
bool header(const Line& l, std::string_view key, std::vector<std::string_view>& rest) {
  const auto& w = l.words.front();
  if (w.size() == key.size() + 1 && w.substr(0, key.size()) == key && w.back() == ':') {
    rest.assign(l.words.begin() + 1, l.words.end());
    return true;
  }
  return false;
}

std::vector<Index> indices(const Line& l, const std::vector<std::string_view>& words) {
  std::vector<Index> out;
  for (auto w : words) out.push_back(index(l, w));
  return out;
}

std::string join(const std::vector<Index>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += ' ';
    out += std::to_string(v[k]);
  }
  return out;
}

// Presentation lines are consumed; anything else is handed to `other`.
template <typename Other>
Presentation read_presentation(const std::vector<Line>& lines, Other&& other) {
  std::optional<std::vector<Index>> gens;
  std::vector<ElementaryConstraint> forbidden;
  for (const auto& l : lines) {
    std::vector<std::string_view> rest;
    if (header(l, "gens", rest)) {
      if (gens) fail(l, "repeated gens header");
      gens = indices(l, rest);
    } else if (l.words.front() == "forbid") {
      ElementaryConstraint e;
      for (std::size_t k = 1; k < l.words.size(); ++k) {
        auto [i, b] = literal(l, l.words[k]);
        if (!e.bits.emplace(i, b).second) fail(l, "index " + std::to_string(i) + " repeated");
      }
      if (e.empty()) fail(l, "empty forbid line");
      forbidden.push_back(std::move(e));
    } else {
      other(l);
    }
  }
  if (!gens) throw ParseError("missing gens header");
  return Presentation(std::move(*gens), std::move(forbidden));
}

Element element_from(const std::shared_ptr<const Algebra>& algebra, std::string_view text,
                     const std::string& where) {
  const auto& pres = algebra->presentation();
  AtomSet atoms(algebra->atom_count());
  if (text == "-") return algebra->from_atoms(std::move(atoms));
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    auto bits = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (bits.size() != pres.size() || bits.find_first_not_of("01") != std::string_view::npos)
      throw ParseError(where + "expected a bitstring of length " + std::to_string(pres.size()) +
                       ", got '" + std::string(bits) + "'");
    AssignmentCode a = 0;
    for (char c : bits) a = (a << 1) | static_cast<AssignmentCode>(c == '1');
    auto k = algebra->atom_index(a);
    if (!k) throw PreconditionError(where + std::string(bits) + " is not a valid assignment");
    atoms.set(*k);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return algebra->from_atoms(std::move(atoms));
}

std::string where(const Line& l) { return "line " + std::to_string(l.number) + ": "; }

}  // namespace

Presentation parse_presentation(std::string_view text) {
  return read_presentation(split_lines(text), [](const Line& l) {
    fail(l, "unexpected '" + std::string(l.words.front()) + "'");
  });
}

std::string format_presentation(const Presentation& p) {
  std::ostringstream os;
  os << "gens:";
  for (auto g : p.generators()) os << ' ' << g;
  os << '\n';
  for (const auto& e : p.forbidden()) {
    os << "forbid";
    for (auto [i, b] : e.bits) os << ' ' << i << '=' << (b ? 1 : 0);
    os << '\n';
  }
  return os.str();
}

Element parse_element(const std::shared_ptr<const Algebra>& algebra, std::string_view text) {
  while (!text.empty() && (is_space(text.front()) || text.front() == '\n')) text.remove_prefix(1);
  while (!text.empty() && (is_space(text.back()) || text.back() == '\n')) text.remove_suffix(1);
  return element_from(algebra, text, "");
}

std::string format_element(const Element& a) {
  const auto& alg = a.algebra();
  std::string out;
  // Atoms are ascending by assignment code, which is lexicographic order.
  for (auto k = a.atoms().find_first(); k != AtomSet::npos; k = a.atoms().find_next(k)) {
    if (!out.empty()) out += ',';
    out += alg.presentation().assignment_string(alg.atoms()[k]);
  }
  return a.atoms().none() ? "-" : out;
}

RelationSet parse_relations(std::string_view text) {
  RelationSet r;
  for (const auto& l : split_lines(text)) {
    const auto kind = l.words.front();
    if ((kind != "geq" && kind != "perp") || l.words.size() != 3) fail(l, "expected 'geq i j' or 'perp i j'");
    const auto i = index(l, l.words[1]), j = index(l, l.words[2]);
    r.insert(kind == "geq" ? Relation::geq(i, j) : Relation::perp(i, j));
  }
  return r;
}

std::string format_relations(const RelationSet& r) {
  std::ostringstream os;
  for (const auto& rho : r) os << (rho.kind == RelKind::geq ? "geq " : "perp ") << rho.left << ' ' << rho.right << '\n';
  return os.str();
}

ValuationFunction parse_valuation(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw ParseError("missing dom header");
  std::vector<std::string_view> rest;
  if (!header(lines.front(), "dom", rest)) fail(lines.front(), "expected 'dom:' header");
  ValuationFunction p(indices(lines.front(), rest));
  std::set<std::pair<Index, Index>> seen;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& l = lines[k];
    if (l.words.size() != 3) fail(l, "expected 'i j GEQ|PERP|UNDEF'");
    const auto i = index(l, l.words[0]), j = index(l, l.words[1]);
    const auto t = l.words[2];
    Trit value;
    if (t == "GEQ") value = Trit::geq;
    else if (t == "PERP") value = Trit::perp;
    else if (t == "UNDEF") value = Trit::undef;
    else fail(l, "expected GEQ, PERP or UNDEF, got '" + std::string(t) + "'");
    if (i >= j) fail(l, "entries need i < j");
    if (!p.contains(i) || !p.contains(j)) fail(l, "index outside dom");
    if (!seen.emplace(i, j).second) fail(l, "entry repeated");
    p.set(i, j, value);
  }
  return p;
}

std::string format_valuation(const ValuationFunction& p) {
  std::ostringstream os;
  os << "dom:";
  for (auto i : p.domain()) os << ' ' << i;
  os << '\n';
  const auto dom = p.domain();
  for (std::size_t a = 0; a < dom.size(); ++a)
    for (std::size_t b = a + 1; b < dom.size(); ++b)
      os << dom[a] << ' ' << dom[b] << ' ' << to_string(p.at_position(a, b)) << '\n';
  return os.str();
}

std::vector<DenseRequest> parse_schedule(std::string_view text) {
  std::vector<DenseRequest> out;
  for (const auto& l : split_lines(text)) {
    const auto kind = l.words.front();
    if (kind == "dom") {
      if (l.words.size() != 2) fail(l, "expected 'dom i'");
      out.push_back(DomainPoint{index(l, l.words[1])});
    } else if (kind == "dense") {
      if (l.words.size() < 2) fail(l, "expected 'dense alpha i=b ...'");
      DensityBelow d{index(l, l.words[1]), {}};
      for (std::size_t k = 2; k < l.words.size(); ++k) {
        auto [i, b] = literal(l, l.words[k]);
        if (!d.e.bits.emplace(i, b).second)
          throw PreconditionError(where(l) + "index " + std::to_string(i) + " repeated");
      }
      out.push_back(std::move(d));
    } else {
      fail(l, "expected 'dom' or 'dense'");
    }
  }
  return out;
}

std::string format_schedule(const std::vector<DenseRequest>& requests) {
  std::string out;
  for (const auto& r : requests) out += describe(r) + '\n';
  return out;
}

FilterOnFinite parse_filter(std::string_view text, std::size_t size) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw ParseError("empty filter file");
  const auto kind = lines.front().words.front();
  if (kind == "trivial" || kind == "principal") {
    if (lines.size() != 1) fail(lines[1], "unexpected line after '" + std::string(kind) + "'");
    const auto& l = lines.front();
    if (kind == "trivial") {
      if (l.words.size() != 1) fail(l, "expected 'trivial'");
      return FilterOnFinite::trivial(size);
    }
    if (l.words.size() != 2) fail(l, "expected 'principal i0'");
    return FilterOnFinite::principal(size, index(l, l.words[1]));
  }
  std::vector<IndexSubset> members;
  for (const auto& l : lines) {
    if (l.words.front() != "member") fail(l, "expected 'member i ...', 'principal i0' or 'trivial'");
    IndexSubset s = 0;
    for (std::size_t k = 1; k < l.words.size(); ++k) {
      auto m = index(l, l.words[k]);
      if (m >= size) throw PreconditionError(where(l) + "factor " + std::to_string(m) + " out of range");
      s |= IndexSubset{1} << m;
    }
    members.push_back(s);
  }
  return FilterOnFinite::generated_by(size, members);
}

std::string format_filter(const FilterOnFinite& f) {
  if (f.kernel() == (IndexSubset{1} << f.size()) - 1 && f.size() != 1) return "trivial\n";
  if (auto p = f.principal_point()) return "principal " + std::to_string(*p) + "\n";
  std::string out = "member";
  for (std::size_t m = 0; m < f.size(); ++m)
    if ((f.kernel() >> m) & 1U) out += ' ' + std::to_string(m);
  return out + '\n';
}

TModelFragment parse_model(std::string_view text) {
  const auto lines = split_lines(text);
  std::vector<const Line*> body;
  auto pres = read_presentation(lines, [&](const Line& l) { body.push_back(&l); });

  TModelFragment m;
  m.algebra = Algebra::make(std::move(pres));
  if (m.algebra->atom_count() > kMaxModelAtoms)
    throw PreconditionError("model algebra has more than " + std::to_string(kMaxModelAtoms) + " atoms");
  m.v.assign(std::size_t{1} << m.algebra->atom_count(), kUndefinedLevel);

  bool have_L = false, have_block = false;
  std::vector<std::optional<Element>> x;
  std::vector<std::vector<Index>> classes;
  std::vector<bool> v_seen(m.v.size(), false);
  // Pass 1: headers.
  for (const auto* l : body) {
    std::vector<std::string_view> rest;
    if (header(*l, "L", rest)) {
      if (have_L) fail(*l, "repeated L header");
      m.L = indices(*l, rest);
      have_L = true;
    } else if (header(*l, "block", rest)) {
      if (have_block || rest.size() != 1) fail(*l, "expected a single 'block: mu' line");
      m.block_size = natural(*l, rest[0]);
      have_block = true;
    }
  }
  if (!have_L) throw ParseError("missing L header");
  for (std::size_t a = 0; a < m.L.size(); ++a)
    for (std::size_t b = a + 1; b < m.L.size(); ++b)
      if (m.L[a] == m.L[b]) throw PreconditionError("L repeats " + std::to_string(m.L[a]));
  x.assign(m.L.size(), std::nullopt);
  m.class_of.assign(m.L.size(), kUndefinedLevel);

  for (const auto* l : body) {
    std::vector<std::string_view> rest;
    if (header(*l, "L", rest) || header(*l, "block", rest)) continue;
    if (header(*l, "class", rest)) {
      for (auto i : indices(*l, rest)) {
        auto pos = m.position(i);
        if (m.class_of[pos] != kUndefinedLevel) fail(*l, std::to_string(i) + " is already in a class");
        m.class_of[pos] = classes.size();
      }
      classes.emplace_back();
    } else if (l->words.front() == "x") {
      if (l->words.size() != 3) fail(*l, "expected 'x l element'");
      auto pos = m.position(index(*l, l->words[1]));
      if (x[pos]) fail(*l, "x repeated");
      x[pos] = element_from(m.algebra, l->words[2], where(*l));
    } else if (l->words.front() == "v") {
      if (l->words.size() != 3) fail(*l, "expected 'v element l'");
      auto code = element_code(element_from(m.algebra, l->words[1], where(*l)));
      if (v_seen[code]) fail(*l, "v repeated");
      v_seen[code] = true;
      m.v[code] = m.position(index(*l, l->words[2]));
    } else {
      fail(*l, "unexpected '" + std::string(l->words.front()) + "'");
    }
  }
  // Unlisted indices form singleton classes.
  for (auto& c : m.class_of)
    if (c == kUndefinedLevel) c = classes.size(), classes.emplace_back();
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!x[k]) throw PreconditionError("x_" + std::to_string(m.L[k]) + " missing");
    m.x.push_back(std::move(*x[k]));
  }
  return m;
}

std::string format_model(const TModelFragment& m) {
  std::ostringstream os;
  os << format_presentation(m.algebra->presentation());
  os << "block: " << m.block_size << '\n';
  os << "L: " << join(m.L) << '\n';
  std::vector<std::vector<Index>> classes;
  std::map<std::size_t, std::size_t> order;  // class id -> output position, by first member
  for (std::size_t k = 0; k < m.L.size(); ++k) {
    auto [it, fresh] = order.emplace(m.class_of[k], classes.size());
    if (fresh) classes.emplace_back();
    classes[it->second].push_back(m.L[k]);
  }
  for (const auto& c : classes) os << "class: " << join(c) << '\n';
  for (std::size_t k = 0; k < m.x.size(); ++k) os << "x " << m.L[k] << ' ' << format_element(m.x[k]) << '\n';
  for (std::size_t c = 0; c < m.v.size(); ++c)
    if (m.v[c] < m.L.size())
      os << "v " << format_element(element_from_code(*m.algebra, static_cast<ElementCode>(c))) << ' '
         << m.L[m.v[c]] << '\n';
  return os.str();
}

std::vector<Branch> parse_branches(std::string_view text) {
  std::vector<Branch> out;
  for (const auto& l : split_lines(text)) {
    Branch f;
    for (auto w : l.words) {
      std::size_t start = 0;
      while (start <= w.size()) {
        auto comma = w.find(',', start);
        auto part = w.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        if (!part.empty()) f.push_back(natural(l, part));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
    }
    if (f.empty()) fail(l, "empty branch");
    out.push_back(std::move(f));
  }
  return out;
}

std::string format_branches(const std::vector<Branch>& branches) {
  std::ostringstream os;
  for (const auto& f : branches) {
    for (std::size_t k = 0; k < f.size(); ++k) os << (k ? "," : "") << f[k];
    os << '\n';
  }
  return os.str();
}

std::vector<std::size_t> parse_list(std::string_view text) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    auto part = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    out.push_back(parse_natural(part, ""));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace boolpres
