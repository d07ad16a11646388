#include "latd/catalog.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>

#include "latd/constructions.hpp"
#include "latd/neighbors.hpp"

#ifndef LATD_DATA_DIR
#define LATD_DATA_DIR "data"
#endif

namespace latd {

namespace {

std::vector<std::vector<int>> bits(std::initializer_list<const char*> rows) {
  std::vector<std::vector<int>> out;
  for (const char* r : rows) {
    std::vector<int> row;
    for (const char* c = r; *c; ++c) row.push_back(*c - '0');
    out.push_back(std::move(row));
  }
  return out;
}

Lattice from_vectors(const std::vector<std::vector<std::int64_t>>& rows, std::int64_t den2, std::string label) {
  // Gram of the given rows (ambient Z^n coordinates) divided by den2
  const int n = static_cast<int>(rows.size());
  RatMatrix g(n, n, Rational(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      std::int64_t s = 0;
      for (size_t k = 0; k < rows[i].size(); ++k) s += rows[i][k] * rows[j][k];
      g(i, j) = Rational(s, den2);
      g(i, j).canonicalize();
      g(j, i) = g(i, j);
    }
  return make_lattice(g, std::move(label));
}

Lattice a_n(int n) {
  RatMatrix g(n, n, Rational(0));
  for (int i = 0; i < n; ++i) {
    g(i, i) = 2;
    if (i + 1 < n) g(i, i + 1) = g(i + 1, i) = -1;
  }
  return make_lattice(g, "a:" + std::to_string(n));
}

std::vector<std::vector<std::int64_t>> d_roots(int n) {
  std::vector<std::vector<std::int64_t>> rows;
  for (int i = 0; i + 1 < n; ++i) {
    std::vector<std::int64_t> r(static_cast<size_t>(n), 0);
    r[i] = 1;
    r[i + 1] = -1;
    rows.push_back(r);
  }
  std::vector<std::int64_t> r(static_cast<size_t>(n), 0);
  r[n - 2] = 1;
  r[n - 1] = 1;
  rows.push_back(r);
  return rows;
}

Lattice e_n(int n) {
  // Dynkin diagram: chain 0-1-...-(n-2) with node n-1 attached to node 2
  RatMatrix g(n, n, Rational(0));
  for (int i = 0; i < n; ++i) g(i, i) = 2;
  for (int i = 0; i + 2 < n; ++i) g(i, i + 1) = g(i + 1, i) = -1;
  g(2, n - 1) = g(n - 1, 2) = -1;
  return make_lattice(g, "e" + std::to_string(n));
}

Lattice d_plus(int n) {
  IntMatrix gens(n + 1, n, Integer(0));
  const auto roots = d_roots(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gens(i, j) = 2 * roots[i][j];
  for (int j = 0; j < n; ++j) gens(n, j) = 1;
  const IntMatrix b = hermite_basis(gens);
  std::vector<std::vector<std::int64_t>> rows(static_cast<size_t>(n), std::vector<std::int64_t>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rows[i][j] = b(i, j).get_si();
  return from_vectors(rows, 4, "dplus:" + std::to_string(n));
}

Lattice lll_copy(const Lattice& l, std::string label) {
  const ReducedGram r = lll_reduce(l.int_gram());
  RatMatrix g(l.dim(), l.dim());
  for (int i = 0; i < l.dim(); ++i)
    for (int j = 0; j < l.dim(); ++j) {
      g(i, j) = Rational(r.gram(i, j), l.scale());
      g(i, j).canonicalize();
    }
  return make_lattice(g, std::move(label));
}

int parse_param(std::string_view name, std::string_view text) {
  int v = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || p != text.data() + text.size() || v < 1 || v > 512)
    throw Error(Errc::UnknownName, "bad parameter in catalog name '" + std::string(name) + "'");
  return v;
}

struct Expect {
  int dim;
  Rational det;
  Parity parity;
  Rational min;
};

void validate(const Lattice& l, const Expect& e) {
  const std::string who = "catalog entry " + l.label();
  if (l.dim() != e.dim) throw Error(Errc::ValidationFailed, who + " has the wrong dimension");
  if (determinant(l) != e.det) throw Error(Errc::ValidationFailed, who + " has the wrong determinant");
  if (parity(l) != e.parity) throw Error(Errc::ValidationFailed, who + " has the wrong parity");
  if (minimum(l).first != e.min) throw Error(Errc::ValidationFailed, who + " has the wrong minimum");
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::ValidationFailed, "missing data file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

Lattice load_verified_gram(const std::string& dir, const std::string& file) {
  const std::string bytes = read_file(dir + "/" + file);
  std::istringstream manifest(read_file(dir + "/MANIFEST.sha256"));
  std::string hash, name;
  while (manifest >> hash >> name) {
    if (name != file) continue;
    if (hash != sha256_hex(bytes)) throw Error(Errc::ValidationFailed, file + " does not match its SHA-256 manifest entry");
    return parse_gram(bytes, file);
  }
  throw Error(Errc::ValidationFailed, file + " is not listed in the data manifest");
}

namespace {

Lattice single(std::string_view name) {
  const auto colon = name.find(':');
  const std::string_view head = name.substr(0, colon);
  const std::string label(name);
  if (colon != std::string_view::npos) {
    const int n = parse_param(name, name.substr(colon + 1));
    if (head == "a") {
      Lattice l = a_n(n);
      validate(l, {n, n + 1, Parity::Even, 2});
      return l;
    }
    if (head == "d") {
      if (n < 3) throw Error(Errc::UnknownName, "d:n needs n >= 3");
      Lattice l = from_vectors(d_roots(n), 1, label);
      validate(l, {n, 4, Parity::Even, 2});
      return l;
    }
    if (head == "zn") {
      Lattice l = make_lattice(RatMatrix::identity(n), label);
      validate(l, {n, 1, Parity::Odd, 1});
      return l;
    }
    if (head == "dplus") {
      if (n % 4 != 0) throw Error(Errc::UnknownName, "dplus:n needs n divisible by 4");
      Lattice l = d_plus(n);
      validate(l, {n, 1, n % 8 == 0 ? Parity::Even : Parity::Odd, n == 4 ? 1 : 2});
      return l;
    }
    throw Error(Errc::UnknownName, "unknown catalog family '" + std::string(head) + "'");
  }
  if (name == "e6" || name == "e7" || name == "e8") {
    const int n = name[1] - '0';
    Lattice l = e_n(n);
    validate(l, {n, 9 - n, Parity::Even, 2});
    return l;
  }
  if (name == "leech") return leech();
  if (name == "o23") {
    static std::once_flag once;
    static std::optional<Lattice> cached;
    std::call_once(once, [] {
      Lattice l = load_verified_gram(data_dir(), "o23.gram").with_label("o23");
      validate(l, {23, 1, Parity::Odd, 3});
      cached = l;
    });
    return *cached;
  }
  if (name == "hamming8" || name == "golay24" || name == "ternary_golay12") {
    Lattice l = construction_a(std::get<LinearCode>(catalog(name)));
    return l.with_label(label);
  }
  if (name == "o16" || name == "o22")
    throw Error(Errc::UnknownName, "'" + label + "' is reserved but not shipped");
  throw Error(Errc::UnknownName, "no catalog entry named '" + label + "'");
}

}  // namespace

LinearCode hamming8() { return LinearCode(2, bits({"11110000", "11001100", "10101010", "11111111"}), "hamming8"); }

LinearCode golay24() {
  // cyclic [23,12] code with g(x) = 1 + x^2 + x^4 + x^5 + x^6 + x^10 + x^11, extended by parity
  const int g[] = {1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1};
  std::vector<std::vector<int>> rows;
  for (int s = 0; s < 12; ++s) {
    std::vector<int> r(24, 0);
    for (int i = 0; i < 12; ++i) r[s + i] = g[i];
    int w = 0;
    for (int i = 0; i < 23; ++i) w += r[i];
    r[23] = w % 2;
    rows.push_back(std::move(r));
  }
  return LinearCode(2, std::move(rows), "golay24");
}

LinearCode ternary_golay12() {
  const auto s = bits({"011111", "101221", "110122", "121012", "122101", "112210"});
  std::vector<std::vector<int>> rows;
  for (int i = 0; i < 6; ++i) {
    std::vector<int> r(12, 0);
    r[i] = 1;
    for (int j = 0; j < 6; ++j) r[6 + j] = s[i][j];
    rows.push_back(std::move(r));
  }
  return LinearCode(3, std::move(rows), "ternary_golay12");
}

std::vector<std::int64_t> leech_glue_vector() {
  std::vector<std::int64_t> v(24, 1);
  v[0] = -3;
  return v;
}

Lattice leech() {
  static std::once_flag once;
  static std::optional<Lattice> cached;
  std::call_once(once, [] {
    const ConstructionA ca = construction_a_with_frame(golay24());
    const auto a = leech_glue_vector();
    const auto inv = *inverse(to_rational(ca.basis));
    std::vector<std::int64_t> c(24, 0);
    for (int j = 0; j < 24; ++j) {
      Rational s = 0;
      for (int i = 0; i < 24; ++i) s += a[i] * inv(i, j);
      if (s.get_den() != 1) throw Error(Errc::ValidationFailed, "Leech glue vector is not in L(golay24)");
      c[j] = s.get_num().get_si();
    }
    const NeighborResult nb = neighbor(ca.lattice, c, true);
    Lattice l = lll_copy(nb.lattice, "leech");
    validate(l, {24, 1, Parity::Even, 4});
    cached = l;
  });
  return *cached;
}

Lattice o23_from_leech() {
  const Lattice l = leech();
  const int n = l.dim();
  const ShellSet mins = minimum(l).second;
  const auto v = mins.vector(0);
  const I64Matrix& g = l.int_gram();
  std::vector<std::int64_t> gv(static_cast<size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gv[i] += g(i, j) * v[j];
  // generators 4 * pi(l) = 4 l - (l, v) v for l in L_v
  int k = 0;
  while (gv[k] % 2 == 0) ++k;
  std::vector<std::vector<std::int64_t>> lv;
  for (int j = 0; j < n; ++j) {
    std::vector<std::int64_t> r(static_cast<size_t>(n), 0);
    if (j == k) {
      r[k] = 2;
    } else {
      r[j] = 1;
      if (gv[j] % 2 != 0) r[k] = 1;
    }
    lv.push_back(std::move(r));
  }
  IntMatrix gens(n, n, Integer(0));
  for (int i = 0; i < n; ++i) {
    std::int64_t ip = 0;
    for (int j = 0; j < n; ++j) ip += lv[i][j] * gv[j];
    for (int j = 0; j < n; ++j) gens(i, j) = 4 * lv[i][j] - ip * v[j];
  }
  const IntMatrix b = hermite_basis(gens);
  if (b.rows() != n - 1) throw Error(Errc::ValidationFailed, "projection does not have rank 23");
  RatMatrix gram(n - 1, n - 1, Rational(0));
  for (int i = 0; i < n - 1; ++i)
    for (int j = 0; j <= i; ++j) {
      Integer s = 0;
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) s += b(i, x) * g(x, y) * b(j, y);
      gram(i, j) = Rational(s, 16);
      gram(i, j).canonicalize();
      gram(j, i) = gram(i, j);
    }
  Lattice o = lll_copy(make_lattice(gram), "o23");
  validate(o, {23, 1, Parity::Odd, 3});
  return o;
}

CatalogEntry catalog(std::string_view name) {
  if (name.empty()) throw Error(Errc::UnknownName, "empty catalog name");
  if (name == "hamming8") return hamming8();
  if (name == "golay24") return golay24();
  if (name == "ternary_golay12") return ternary_golay12();
  const auto plus = name.find('+');
  if (plus == std::string_view::npos) return single(name);
  Lattice l = catalog_lattice(name.substr(0, plus));
  Lattice r = catalog_lattice(name.substr(plus + 1));
  return orthogonal_sum(l, r).with_label(std::string(name));
}

Lattice catalog_lattice(std::string_view name) {
  CatalogEntry e = catalog(name);
  if (auto* l = std::get_if<Lattice>(&e)) return *l;
  return construction_a(std::get<LinearCode>(e)).with_label(std::string(name));
}

std::vector<std::string> catalog_names() {
  return {"a:n", "d:n", "e6", "e7", "e8", "zn:n", "dplus:n", "hamming8", "golay24", "ternary_golay12", "o23", "leech"};
}

std::string data_dir() {
  if (const char* env = std::getenv("LATD_DATA_DIR"); env && *env) return env;
  return LATD_DATA_DIR;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr))
    throw Error(Errc::ValidationFailed, "SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

}  // namespace latd
