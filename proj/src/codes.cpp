#include "latd/codes.hpp"

#include <fstream>
#include <sstream>

namespace latd {

namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

int inverse_mod(int a, int p) {
  int r = 1;
  for (int e = p - 2, b = a % p; e > 0; e >>= 1, b = b * b % p)
    if (e & 1) r = r * b % p;
  return r;
}

int dot_mod(const std::vector<int>& a, const std::vector<int>& b, int p) {
  long s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return static_cast<int>(s % p);
}

}  // namespace

std::vector<std::vector<int>> row_reduce_mod_p(std::vector<std::vector<int>> rows, int p) {
  if (rows.empty()) return rows;
  const size_t n = rows[0].size();
  size_t r = 0;
  for (size_t c = 0; c < n && r < rows.size(); ++c) {
    size_t piv = r;
    while (piv < rows.size() && rows[piv][c] % p == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    const int inv = inverse_mod(((rows[r][c] % p) + p) % p, p);
    for (auto& x : rows[r]) x = ((x % p + p) % p) * inv % p;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] % p == 0) continue;
      const int f = ((rows[i][c] % p) + p) % p;
      for (size_t j = 0; j < n; ++j) rows[i][j] = (((rows[i][j] - f * rows[r][j]) % p) + p) % p;
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

LinearCode::LinearCode(int p, std::vector<std::vector<int>> generator, std::string label)
    : p_(p), n_(generator.empty() ? 0 : static_cast<int>(generator[0].size())), gen_(std::move(generator)),
      label_(std::move(label)) {
  if (!is_prime(p)) throw Error(Errc::InvalidArgument, "code alphabet size " + std::to_string(p) + " is not prime");
  if (gen_.empty() || n_ == 0) throw Error(Errc::InvalidArgument, "empty generator matrix");
  for (const auto& row : gen_) {
    if (static_cast<int>(row.size()) != n_) throw Error(Errc::InvalidArgument, "generator rows differ in length");
    for (int x : row)
      if (x < 0 || x >= p) throw Error(Errc::InvalidArgument, "generator entry outside 0..p-1");
  }
  if (row_reduce_mod_p(gen_, p).size() != gen_.size())
    throw Error(Errc::InvalidArgument, "generator matrix does not have full rank over F_p");
}

bool LinearCode::self_orthogonal() const {
  for (size_t i = 0; i < gen_.size(); ++i)
    for (size_t j = i; j < gen_.size(); ++j)
      if (dot_mod(gen_[i], gen_[j], p_) != 0) return false;
  return true;
}

bool LinearCode::self_dual() const { return 2 * dim() == n_ && self_orthogonal(); }

bool LinearCode::doubly_even() const {
  if (p_ != 2) return false;
  for (size_t i = 0; i < gen_.size(); ++i) {
    int w = 0;
    for (int x : gen_[i]) w += x;
    if (w % 4 != 0) return false;
    for (size_t j = i + 1; j < gen_.size(); ++j)
      if (dot_mod(gen_[i], gen_[j], 2) != 0) return false;
  }
  return true;
}

std::vector<Integer> weight_enumerator(const LinearCode& code, Budget budget) {
  const int p = code.p(), n = code.length(), k = code.dim();
  double total = 1;
  for (int i = 0; i < k; ++i) total *= p;
  if (total > static_cast<double>(budget.max_nodes) || total > 1e9)
    throw_resource_limit("weight enumerator needs " + std::to_string(static_cast<long long>(total)) + " codewords",
                         budget.max_nodes);
  std::vector<std::uint64_t> counts(static_cast<size_t>(n) + 1, 0);
  std::vector<int> coef(static_cast<size_t>(k), 0), word(static_cast<size_t>(n), 0);
  const auto& g = code.generator();
  // Gray-code style walk: bump one coefficient at a time
  while (true) {
    int w = 0;
    for (int x : word) w += x != 0;
    ++counts[static_cast<size_t>(w)];
    int i = 0;
    while (i < k && coef[i] == p - 1) {
      coef[i] = 0;
      for (int j = 0; j < n; ++j) word[j] = (word[j] + g[i][j]) % p;  // p-1 steps plus one wraps to 0
      ++i;
    }
    if (i == k) break;
    ++coef[i];
    for (int j = 0; j < n; ++j) word[j] = (word[j] + g[i][j]) % p;
  }
  std::vector<Integer> out;
  for (auto c : counts) out.emplace_back(static_cast<unsigned long>(c));
  return out;
}

bool equivalent_parameters(const LinearCode& a, const LinearCode& b) {
  return a.p() == b.p() && a.length() == b.length() && a.dim() == b.dim() &&
         weight_enumerator(a) == weight_enumerator(b);
}

LinearCode parse_code(std::string_view text, std::string label) {
  std::istringstream in{std::string(text)};
  int p = 0, k = 0, n = 0;
  if (!(in >> p >> k >> n) || k <= 0 || n <= 0) throw Error(Errc::ParseError, "code header must be \"p k n\"");
  std::vector<std::vector<int>> rows;
  for (int i = 0; i < k; ++i) {
    std::string line;
    if (!(in >> line) || static_cast<int>(line.size()) != n)
      throw Error(Errc::ParseError, "code row " + std::to_string(i + 1) + " must have " + std::to_string(n) + " digits");
    std::vector<int> row;
    for (char c : line) {
      if (c < '0' || c > '9') throw Error(Errc::ParseError, "code rows contain digits only");
      row.push_back(c - '0');
    }
    rows.push_back(std::move(row));
  }
  std::string extra;
  if (in >> extra) throw Error(Errc::ParseError, "trailing data after the code rows");
  return LinearCode(p, std::move(rows), std::move(label));
}

LinearCode read_code_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(Errc::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_code(ss.str(), path);
}

std::string format_code(const LinearCode& code) {
  std::string out = std::to_string(code.p()) + " " + std::to_string(code.dim()) + " " +
                    std::to_string(code.length()) + "\n";
  for (const auto& row : code.generator()) {
    for (int x : row) out += static_cast<char>('0' + x);
    out += '\n';
  }
  return out;
}

}  // namespace latd
