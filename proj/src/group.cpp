#include "masa/group.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "masa/error.hpp"

namespace masa {

namespace {

std::string triple(Element a, Element b, Element c) {
  std::ostringstream os;
  os << "(" << a << ", " << b << ", " << c << ")";
  return os.str();
}

}  // namespace

FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<Element>>& table,
                                    std::vector<std::string> labels, std::string name) {
  const std::size_t n = table.size();
  if (n == 0) throw InputError("group table is empty");
  for (std::size_t a = 0; a < n; ++a) {
    if (table[a].size() != n) {
      throw InputError("group table row " + std::to_string(a) + " has " +
                       std::to_string(table[a].size()) + " entries, expected " +
                       std::to_string(n));
    }
    for (std::size_t b = 0; b < n; ++b) {
      if (table[a][b] >= n) {
        throw InputError("group table entry [" + std::to_string(a) + "][" + std::to_string(b) +
                         "] = " + std::to_string(table[a][b]) + " is out of range");
      }
    }
  }

  // Two-sided identity.
  std::size_t identity = n;
  for (std::size_t e = 0; e < n && identity == n; ++e) {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) ok = table[e][a] == a && table[a][e] == a;
    if (ok) identity = e;
  }
  if (identity == n) throw InputError("group table has no two-sided identity");

  for (std::size_t a = 0; a < n; ++a) {
    bool found = false;
    for (std::size_t b = 0; b < n && !found; ++b) {
      found = table[a][b] == identity && table[b][a] == identity;
    }
    if (!found) throw InputError("element " + std::to_string(a) + " has no inverse");
  }

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        if (table[table[a][b]][c] != table[a][table[b][c]]) {
          throw InputError("associativity fails at " + triple(a, b, c));
        }
      }
    }
  }

  // Swap the identity into slot 0.
  std::vector<Element> relabel(n);
  std::iota(relabel.begin(), relabel.end(), Element{0});
  std::swap(relabel[0], relabel[identity]);

  auto data = std::make_shared<Data>();
  data->order = n;
  data->name = std::move(name);
  data->table.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      data->table[relabel[a] * n + relabel[b]] = relabel[table[a][b]];
    }
  }
  data->inverse.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (data->table[a * n + b] == 0) data->inverse[a] = b;
    }
  }
  if (labels.size() != n) {
    labels.clear();
    for (std::size_t a = 0; a < n; ++a) labels.push_back(std::to_string(a));
  } else {
    std::swap(labels[0], labels[identity]);
  }
  data->labels = std::move(labels);
  return FiniteGroup(std::move(data));
}

std::size_t FiniteGroup::element_order(Element a) const {
  std::size_t k = 1;
  for (Element x = a; x != identity(); x = multiply(x, a)) ++k;
  return k;
}

FiniteGroup cyclic_group(std::size_t n) {
  if (n == 0) throw InputError("cyclic group order must be positive");
  std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  return FiniteGroup::from_table(table, {}, "cyclic:" + std::to_string(n));
}

FiniteGroup dihedral_group(std::size_t n) {
  if (n == 0) throw InputError("dihedral parameter must be positive");
  // r^a r^b = r^(a+b), r^a s r^b = s r^(b-a), s r^a r^b = s r^(a+b), s r^a s r^b = r^(b-a)
  const std::size_t order = 2 * n;
  std::vector<std::vector<Element>> table(order, std::vector<Element>(order));
  for (std::size_t x = 0; x < order; ++x) {
    for (std::size_t y = 0; y < order; ++y) {
      const bool xs = x >= n;
      const bool ys = y >= n;
      const std::size_t a = x % n;
      const std::size_t b = y % n;
      const std::size_t sum = (a + b) % n;
      const std::size_t diff = (b + n - a) % n;
      if (!xs && !ys) table[x][y] = sum;
      else if (!xs && ys) table[x][y] = n + diff;
      else if (xs && !ys) table[x][y] = n + sum;
      else table[x][y] = diff;
    }
  }
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < n; ++k) labels.push_back("r" + std::to_string(k));
  for (std::size_t k = 0; k < n; ++k) labels.push_back("s" + std::to_string(k));
  return FiniteGroup::from_table(table, std::move(labels), "dihedral:" + std::to_string(n));
}

FiniteGroup symmetric_group(std::size_t n) {
  if (n == 0 || n > 5) throw InputError("symmetric:n requires 1 <= n <= 5");
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));

  std::map<std::vector<std::size_t>, Element> lookup;
  for (std::size_t i = 0; i < perms.size(); ++i) lookup[perms[i]] = i;

  // (x*y)(i) = x(y(i))
  std::vector<std::vector<Element>> table(perms.size(), std::vector<Element>(perms.size()));
  std::vector<std::size_t> composed(n);
  for (std::size_t x = 0; x < perms.size(); ++x) {
    for (std::size_t y = 0; y < perms.size(); ++y) {
      for (std::size_t i = 0; i < n; ++i) composed[i] = perms[x][perms[y][i]];
      table[x][y] = lookup.at(composed);
    }
  }
  std::vector<std::string> labels;
  for (const auto& perm : perms) {
    std::string s = "[";
    for (std::size_t i = 0; i < n; ++i) s += (i ? "," : "") + std::to_string(perm[i]);
    labels.push_back(s + "]");
  }
  return FiniteGroup::from_table(table, std::move(labels), "symmetric:" + std::to_string(n));
}

FiniteGroup direct_product(const FiniteGroup& left, const FiniteGroup& right) {
  const std::size_t m = right.order();
  const std::size_t order = left.order() * m;
  std::vector<std::vector<Element>> table(order, std::vector<Element>(order));
  std::vector<std::string> labels(order);
  for (std::size_t x = 0; x < order; ++x) {
    labels[x] = "(" + left.label(x / m) + "," + right.label(x % m) + ")";
    for (std::size_t y = 0; y < order; ++y) {
      table[x][y] = left.multiply(x / m, y / m) * m + right.multiply(x % m, y % m);
    }
  }
  return FiniteGroup::from_table(table, std::move(labels),
                                 "product:(" + left.name() + "," + right.name() + ")");
}

FiniteGroup read_group_table(std::istream& in, std::string name) {
  std::size_t n = 0;
  if (!(in >> n) || n == 0) throw InputError("group table: expected a positive order on line 1");
  std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      long long v = 0;
      if (!(in >> v)) {
        throw InputError("group table: missing entry at row " + std::to_string(a) + ", column " +
                         std::to_string(b));
      }
      if (v < 0) throw InputError("group table: negative entry at row " + std::to_string(a));
      table[a][b] = static_cast<Element>(v);
    }
  }
  std::string extra;
  if (in >> extra) throw InputError("group table: trailing data '" + extra + "'");
  return FiniteGroup::from_table(table, {}, std::move(name));
}

namespace {

class SpecParser {
 public:
  explicit SpecParser(std::string_view text) : text_(text) {}

  FiniteGroup parse() {
    FiniteGroup g = parse_group();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return g;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("group spec '" + std::string(text_) + "' column " + std::to_string(pos_ + 1) +
                     ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string word() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::size_t number() {
    skip_space();
    std::size_t start = pos_;
    std::size_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + static_cast<std::size_t>(text_[pos_] - '0');
      if (value > 1'000'000) fail("number too large");
      ++pos_;
    }
    if (start == pos_) fail("expected a number");
    return value;
  }

  FiniteGroup parse_group() {
    const std::size_t at = pos_;
    const std::string kind = word();
    expect(':');
    if (kind == "cyclic") return cyclic_group(number());
    if (kind == "dihedral") return dihedral_group(number());
    if (kind == "symmetric") return symmetric_group(number());
    if (kind == "product") {
      expect('(');
      FiniteGroup left = parse_group();
      expect(',');
      FiniteGroup right = parse_group();
      expect(')');
      return direct_product(left, right);
    }
    if (kind == "table") {
      skip_space();
      std::size_t end = pos_;
      while (end < text_.size() && text_[end] != ',' && text_[end] != ')') ++end;
      std::string path(text_.substr(pos_, end - pos_));
      pos_ = end;
      std::ifstream in(path);
      if (!in) fail("cannot open table file '" + path + "'");
      return read_group_table(in, "table:" + path);
    }
    pos_ = at;
    fail("unknown group kind '" + kind + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

FiniteGroup build_group(std::string_view spec) { return SpecParser(spec).parse(); }

ElementSet normalize_subset(const FiniteGroup& group, std::vector<Element> elements) {
  for (Element e : elements) {
    if (!group.contains(e)) {
      throw InputError("element " + std::to_string(e) + " is out of range for a group of order " +
                       std::to_string(group.order()));
    }
  }
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return elements;
}

Subgroup::Subgroup(FiniteGroup parent, ElementSet elements)
    : parent_(std::move(parent)), elements_(normalize_subset(parent_, std::move(elements))) {
  member_.assign(parent_.order(), false);
  for (Element e : elements_) member_[e] = true;
  if (elements_.empty() || !member_[FiniteGroup::identity()]) {
    throw InputError("not a subgroup: identity missing");
  }
  for (Element a : elements_) {
    if (!member_[parent_.inverse(a)]) {
      throw InputError("not a subgroup: inverse of " + std::to_string(a) + " missing");
    }
    for (Element b : elements_) {
      if (!member_[parent_.multiply(a, b)]) {
        throw InputError("not a subgroup: product " + std::to_string(a) + "*" +
                         std::to_string(b) + " missing");
      }
    }
  }
}

bool Subgroup::contains(Element a) const { return a < member_.size() && member_[a]; }

Subgroup generate_subgroup(const FiniteGroup& group, std::span<const Element> generators) {
  if (generators.empty()) throw InputError("cannot generate a subgroup from an empty set");
  ElementSet gens = normalize_subset(group, {generators.begin(), generators.end()});

  std::vector<bool> seen(group.order(), false);
  std::vector<Element> members{FiniteGroup::identity()};
  seen[FiniteGroup::identity()] = true;
  // In a finite group, closing under right multiplication by generators
  // already yields inverses.
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (Element g : gens) {
      Element x = group.multiply(members[i], g);
      if (!seen[x]) {
        seen[x] = true;
        members.push_back(x);
      }
    }
  }
  return Subgroup(group, std::move(members));
}

CosetPartition left_cosets(const Subgroup& subgroup) {
  const FiniteGroup& g = subgroup.parent();
  CosetPartition out;
  constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);
  out.class_of.assign(g.order(), kUnassigned);
  for (Element rep = 0; rep < g.order(); ++rep) {
    if (out.class_of[rep] != kUnassigned) continue;
    ElementSet cls;
    for (Element h : subgroup.elements()) cls.push_back(g.multiply(rep, h));
    std::sort(cls.begin(), cls.end());
    for (Element x : cls) out.class_of[x] = out.classes.size();
    out.classes.push_back(std::move(cls));
  }
  return out;
}

std::size_t index(const Subgroup& subgroup) {
  return subgroup.parent().order() / subgroup.order();
}

std::vector<Subgroup> all_subgroups(const FiniteGroup& group) {
  std::set<ElementSet> found;
  std::vector<ElementSet> frontier;
  const Element e = FiniteGroup::identity();
  found.insert({e});
  frontier.push_back({e});
  while (!frontier.empty()) {
    std::vector<ElementSet> next;
    for (const ElementSet& base : frontier) {
      for (Element x = 0; x < group.order(); ++x) {
        if (std::binary_search(base.begin(), base.end(), x)) continue;
        ElementSet gens = base;
        gens.push_back(x);
        ElementSet s = generate_subgroup(group, gens).elements();
        if (found.insert(s).second) next.push_back(std::move(s));
      }
    }
    frontier = std::move(next);
  }
  std::vector<ElementSet> sorted(found.begin(), found.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const ElementSet& a, const ElementSet& b) { return a.size() < b.size(); });
  std::vector<Subgroup> out;
  out.reserve(sorted.size());
  for (auto& s : sorted) out.emplace_back(group, std::move(s));
  return out;
}

ElementSet product_set(const FiniteGroup& group, std::span<const Element> left,
                       std::span<const Element> right) {
  std::vector<Element> out;
  for (Element a : left)
    for (Element b : right) out.push_back(group.multiply(a, b));
  return normalize_subset(group, std::move(out));
}

ElementSet inverse_set(const FiniteGroup& group, std::span<const Element> set) {
  std::vector<Element> out;
  for (Element a : set) out.push_back(group.inverse(a));
  return normalize_subset(group, std::move(out));
}

FiniteGroup subgroup_as_group(const Subgroup& subgroup) {
  const auto& elems = subgroup.elements();
  const FiniteGroup& g = subgroup.parent();
  std::vector<std::size_t> position(g.order(), 0);
  for (std::size_t i = 0; i < elems.size(); ++i) position[elems[i]] = i;
  std::vector<std::vector<Element>> table(elems.size(), std::vector<Element>(elems.size()));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    labels.push_back(g.label(elems[i]));
    for (std::size_t j = 0; j < elems.size(); ++j) {
      table[i][j] = position[g.multiply(elems[i], elems[j])];
    }
  }
  return FiniteGroup::from_table(table, std::move(labels), "subgroup of " + g.name());
}

namespace {

class IsomorphismSearch {
 public:
  IsomorphismSearch(const FiniteGroup& a, const FiniteGroup& b)
      : a_(a), b_(b), image_(a.order(), kUnset), used_(b.order(), false) {
    for (Element x = 0; x < a.order(); ++x) order_a_.push_back(a.element_order(x));
    for (Element y = 0; y < b.order(); ++y) order_b_.push_back(b.element_order(y));
  }

  bool run() {
    std::vector<std::size_t> pa = order_a_, pb = order_b_;
    std::sort(pa.begin(), pa.end());
    std::sort(pb.begin(), pb.end());
    if (pa != pb) return false;
    image_[0] = 0;
    used_[0] = true;
    return extend(1);
  }

 private:
  static constexpr Element kUnset = static_cast<Element>(-1);

  bool consistent(Element x) const {
    for (Element y = 0; y < a_.order(); ++y) {
      if (image_[y] == kUnset) continue;
      for (auto [p, q] : {std::pair{x, y}, std::pair{y, x}}) {
        Element prod = a_.multiply(p, q);
        if (image_[prod] != kUnset && image_[prod] != b_.multiply(image_[p], image_[q])) {
          return false;
        }
      }
    }
    return true;
  }

  bool extend(Element x) {
    if (x == a_.order()) return true;
    for (Element y = 0; y < b_.order(); ++y) {
      if (used_[y] || order_b_[y] != order_a_[x]) continue;
      image_[x] = y;
      used_[y] = true;
      if (consistent(x) && extend(x + 1)) return true;
      image_[x] = kUnset;
      used_[y] = false;
    }
    return false;
  }

  const FiniteGroup& a_;
  const FiniteGroup& b_;
  std::vector<std::size_t> order_a_, order_b_;
  std::vector<Element> image_;
  std::vector<bool> used_;
};

}  // namespace

bool groups_isomorphic(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.order() > kMaxIsomorphismOrder || b.order() > kMaxIsomorphismOrder) {
    throw UnsupportedSize("isomorphism search supports orders up to " +
                          std::to_string(kMaxIsomorphismOrder));
  }
  if (a.order() != b.order()) return false;
  return IsomorphismSearch(a, b).run();
}

bool small_group_isomorphic(const Subgroup& a, const Subgroup& b) {
  return groups_isomorphic(subgroup_as_group(a), subgroup_as_group(b));
}

}  // namespace masa
