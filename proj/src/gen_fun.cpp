#include "spinnet/gen_fun.hpp"

#include <bit>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "spinnet/errors.hpp"

namespace spinnet {

namespace {

struct CurveData {
  std::vector<Curve> list;
  std::vector<std::vector<int>> cp;
};

CurveData curve_data(const RibbonGraph& g) {
  CurveData d;
  d.list = curves(g);
  if (static_cast<int>(d.list.size()) > max_fourier_curves)
    throw CapacityError("Fourier coefficients need at most 20 curves, graph has " +
                        std::to_string(d.list.size()));
  d.cp = crossing_matrix(g, d.list);
  return d;
}

// Mixed-radix packing of exponent vectors inside a box.
class Packer {
 public:
  explicit Packer(std::vector<int> bound) : bound_(std::move(bound)), stride_(bound_.size()) {
    std::uint64_t s = 1;
    for (std::size_t i = 0; i < bound_.size(); ++i) {
      stride_[i] = s;
      const auto radix = static_cast<std::uint64_t>(bound_[i]) + 1;
      if (s > std::numeric_limits<std::uint64_t>::max() / radix)
        throw CapacityError("series exponent box too large to index");
      s *= radix;
    }
  }
  Exponent unpack(std::uint64_t key) const {
    Exponent e(bound_.size());
    for (std::size_t i = 0; i < bound_.size(); ++i)
      e[i] = static_cast<int>(key / stride_[i] % (static_cast<std::uint64_t>(bound_[i]) + 1));
    return e;
  }
  std::uint64_t pack(const Exponent& e) const {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < e.size(); ++i) k += stride_[i] * static_cast<std::uint64_t>(e[i]);
    return k;
  }
  int bound(std::size_t i) const { return bound_[i]; }
  std::uint64_t stride(std::size_t i) const { return stride_[i]; }
  std::size_t size() const { return bound_.size(); }

 private:
  std::vector<int> bound_;
  std::vector<std::uint64_t> stride_;
};

using SparseSeries = std::unordered_map<std::uint64_t, BigInt>;

// sum_X a_X P_X^{-2}, truncated to the box and total degree, times 2^{|C|}.
SparseSeries expand(const CurveData& data,
                    const std::map<CurveMask, Rational>& fourier, const Packer& packer,
                    int total_bound) {
  const std::size_t nc = data.list.size();
  const BigInt scale = BigInt(1) << static_cast<unsigned>(nc);
  SparseSeries result;
  for (const auto& [X, a] : fourier) {
    const BigInt weight = numerator_of(a * Rational(scale));
    const int eps_empty = (X & 1u) ? -1 : 1;
    struct Mono {
      std::vector<int> strands;
      std::uint64_t offset;
      int degree;
      int sign;
    };
    std::vector<Mono> monos;
    for (std::size_t i = 1; i < nc; ++i) {
      Mono m{data.list[i].strands, 0, static_cast<int>(data.list[i].strands.size()),
             (X >> i & 1u) ? -1 : 1};
      m.sign *= eps_empty;
      for (int s : m.strands) m.offset += packer.stride(s);
      monos.push_back(std::move(m));
    }
    // (eps0 + v)^{-2} = (1 + eps0 v)^{-2}
    std::unordered_map<std::uint64_t, std::pair<BigInt, int>> cur;  // key -> (coef, degree)
    cur.emplace(0, std::make_pair(BigInt(1), 0));
    for (long m = 0; !cur.empty(); ++m) {
      const BigInt factor = weight * ((m % 2 ? -1 : 1) * (m + 1));
      for (const auto& [key, cd] : cur) result[key] += factor * cd.first;
      std::unordered_map<std::uint64_t, std::pair<BigInt, int>> next;
      for (const auto& [key, cd] : cur) {
        const Exponent e = packer.unpack(key);
        for (const auto& mono : monos) {
          if (cd.second + mono.degree > total_bound) continue;
          bool fits = true;
          for (int s : mono.strands)
            if (e[s] + 1 > packer.bound(s)) {
              fits = false;
              break;
            }
          if (!fits) continue;
          auto& slot = next[key + mono.offset];
          slot.second = cd.second + mono.degree;
          if (mono.sign > 0) {
            slot.first += cd.first;
          } else {
            slot.first -= cd.first;
          }
        }
      }
      cur = std::move(next);
    }
  }
  return result;
}

}  // namespace

Rational TruncatedSeries::coefficient(const Exponent& e) const {
  auto it = terms.find(e);
  return it == terms.end() ? Rational(0) : it->second;
}

MultiPoly curve_polynomial(const RibbonGraph& g, CurveMask X) {
  const auto list = curves(g);
  if (list.size() < 32 && (X >> list.size()) != 0)
    throw ParseError("curve subset refers to an unknown curve");
  MultiPoly p;
  p.num_vars = g.num_strands();
  for (std::size_t i = 0; i < list.size(); ++i) {
    Exponent e(g.num_strands(), 0);
    for (int s : list[i].strands) e[s] = 1;
    p.terms[e] += (i < 32 && (X >> i & 1u)) ? -1 : 1;
  }
  return p;
}

int iota_parity(const std::vector<std::vector<int>>& cp, CurveMask Y) {
  int parity = 0;
  for (std::size_t i = 0; i < cp.size(); ++i) {
    if (!(Y >> i & 1u)) continue;
    for (std::size_t j = i + 1; j < cp.size(); ++j)
      if (Y >> j & 1u) parity ^= cp[i][j];
  }
  return parity;
}

std::map<CurveMask, Rational> fourier_coefficients(const RibbonGraph& g) {
  const CurveData data = curve_data(g);
  const std::size_t n = data.list.size();
  std::vector<CurveMask> row(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (data.cp[i][j]) row[i] |= CurveMask{1} << j;
  const std::size_t size = std::size_t{1} << n;
  std::vector<std::int32_t> f(size);
  std::vector<std::uint8_t> iota(size, 0);
  f[0] = 1;
  for (std::size_t Y = 1; Y < size; ++Y) {
    const auto low = static_cast<std::size_t>(std::countr_zero(Y));
    const std::size_t rest = Y & (Y - 1);
    iota[Y] = iota[rest] ^ (std::popcount(row[low] & static_cast<CurveMask>(rest)) & 1);
    f[Y] = iota[Y] ? -1 : 1;
  }
  for (std::size_t h = 1; h < size; h <<= 1)
    for (std::size_t i = 0; i < size; i += 2 * h)
      for (std::size_t j = i; j < i + h; ++j) {
        const std::int32_t x = f[j];
        const std::int32_t y = f[j + h];
        f[j] = x + y;
        f[j + h] = x - y;
      }
  std::map<CurveMask, Rational> out;
  for (std::size_t X = 0; X < size; ++X)
    if (f[X] != 0) out[static_cast<CurveMask>(X)] = Rational(f[X], BigInt(1) << static_cast<unsigned>(n));
  return out;
}

TruncatedSeries spin_series_expand(const RibbonGraph& g, int degree) {
  const CurveData data = curve_data(g);
  const auto fourier = fourier_coefficients(g);
  const Packer packer(std::vector<int>(g.num_strands(), degree));
  const SparseSeries raw = expand(data, fourier, packer, degree);
  const BigInt scale = BigInt(1) << static_cast<unsigned>(data.list.size());
  TruncatedSeries s;
  s.num_vars = g.num_strands();
  s.degree = degree;
  for (const auto& [key, c] : raw)
    if (c != 0) s.terms[packer.unpack(key)] = Rational(c, scale);
  return s;
}

std::vector<Rational> diagonal_series(const RibbonGraph& g, const Coloring& gamma, long n_max) {
  if (!admissible(g, gamma)) throw ParseError("diagonal_series needs an admissible coloring");
  const CurveData data = curve_data(g);
  const auto fourier = fourier_coefficients(g);
  std::vector<int> box(g.num_strands());
  for (int s = 0; s < g.num_strands(); ++s) box[s] = static_cast<int>(n_max * gamma[s]);
  const Packer packer(box);
  const SparseSeries raw =
      expand(data, fourier, packer, static_cast<int>(n_max * gamma.total()));
  const BigInt scale = BigInt(1) << static_cast<unsigned>(data.list.size());
  std::vector<Rational> out;
  for (long n = 0; n <= n_max; ++n) {
    Exponent e(g.num_strands());
    for (int s = 0; s < g.num_strands(); ++s) e[s] = static_cast<int>(n * gamma[s]);
    auto it = raw.find(packer.pack(e));
    out.push_back(it == raw.end() ? Rational(0) : Rational(it->second, scale));
  }
  return out;
}

std::string series_csv(const TruncatedSeries& s, const RibbonGraph& g) {
  std::ostringstream os;
  for (int i = 0; i < g.num_strands(); ++i) os << g.strand_id(i) << ',';
  os << "coefficient\n";
  for (const auto& [e, c] : s.terms) {
    for (int x : e) os << x << ',';
    os << to_string(c) << '\n';
  }
  return os.str();
}

}  // namespace spinnet
