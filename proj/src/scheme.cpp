#include "d2dcache/scheme.hpp"

#include <algorithm>
#include <random>

#include "d2dcache/combinatorics.hpp"

namespace d2dcache {

void SystemParams::validate() const {
  if (N < 1) throw std::invalid_argument("params: N must be >= 1");
  if (K < 2 || K > 64)
    throw std::invalid_argument("params: K must lie in [2..64]");
  if (t < 1 || t > K)
    throw std::invalid_argument("params: t must lie in [1..K]");
  std::uint64_t unit = static_cast<std::uint64_t>(t) * binom_std(K, t);
  if (file_bytes == 0 || file_bytes % unit != 0)
    throw std::invalid_argument(
        "params: file size must be a positive multiple of t*C(K,t) bytes");
}

std::uint64_t SystemParams::n_subfiles() const { return binom_std(K, t); }

std::size_t SystemParams::subfile_bytes() const {
  return file_bytes / n_subfiles();
}

std::size_t SystemParams::subpiece_bytes() const {
  return subfile_bytes() / t;
}

std::size_t SystemParams::aligned_file_bytes(int K, int t,
                                             std::size_t requested_bytes) {
  std::uint64_t unit = static_cast<std::uint64_t>(t) * binom_std(K, t);
  if (requested_bytes == 0) return unit;
  return (requested_bytes + unit - 1) / unit * unit;
}

FileLibrary random_library(const SystemParams& params, std::uint64_t seed) {
  params.validate();
  // mt19937_64 is fully specified, so transcripts reproduce anywhere.
  std::mt19937_64 rng(seed);
  FileLibrary lib;
  lib.files.resize(params.N);
  for (auto& f : lib.files) {
    f.resize(params.file_bytes);
    for (auto& b : f) b = static_cast<std::uint8_t>(rng() & 0xff);
  }
  return lib;
}

const Bytes& CacheContents::subfile(int file, std::uint64_t rank) const {
  auto it = pieces.find({file, rank});
  if (it == pieces.end())
    throw DecodeError("cache: missing subfile (placement corrupted)");
  return it->second;
}

std::vector<CacheContents> man_placement(const SystemParams& params,
                                         const FileLibrary& library) {
  params.validate();
  if (static_cast<int>(library.files.size()) != params.N)
    throw std::invalid_argument("placement: library has wrong file count");
  for (const auto& f : library.files)
    if (f.size() != params.file_bytes)
      throw std::invalid_argument("placement: file size mismatch");

  std::size_t sf = params.subfile_bytes();
  std::vector<CacheContents> caches(params.K);
  for (int k = 1; k <= params.K; ++k) caches[k - 1].user = k;

  std::vector<int> all_users(params.K);
  for (int k = 1; k <= params.K; ++k) all_users[k - 1] = k;

  std::uint64_t rank = 0;
  for (SubsetIter it(all_users, params.t); !it.done(); it.next(), ++rank) {
    std::vector<int> V = it.current();
    for (int q = 1; q <= params.N; ++q) {
      const Bytes& file = library.files[q - 1];
      Bytes chunk(file.begin() + rank * sf, file.begin() + (rank + 1) * sf);
      for (int k : V) caches[k - 1].pieces[{q, rank}] = chunk;
    }
  }
  return caches;
}

Bytes subpiece_slice(const Bytes& subfile, const std::vector<int>& cachers,
                     int owner, int t) {
  if (subfile.size() % t != 0)
    throw std::invalid_argument("subpiece_slice: subfile not divisible by t");
  auto pos = std::find(cachers.begin(), cachers.end(), owner);
  if (pos == cachers.end())
    throw std::invalid_argument("subpiece_slice: owner not in cacher set");
  std::size_t piece = subfile.size() / t;
  std::size_t j = static_cast<std::size_t>(pos - cachers.begin());
  return Bytes(subfile.begin() + j * piece, subfile.begin() + (j + 1) * piece);
}

std::map<std::pair<int, std::uint64_t>, std::vector<Bytes>> split_subpieces(
    const SystemParams& params, const CacheContents& cache) {
  std::map<std::pair<int, std::uint64_t>, std::vector<Bytes>> out;
  for (const auto& [key, payload] : cache.pieces) {
    std::vector<int> V = subset_unrank(key.second, params.K, params.t);
    std::vector<Bytes> chunks;
    chunks.reserve(params.t);
    for (int owner : V)
      chunks.push_back(subpiece_slice(payload, V, owner, params.t));
    out[key] = std::move(chunks);
  }
  return out;
}

namespace {

// Sub-piece W_{q,V,i} read out of a user's cache (the user must be in V).
Bytes cached_subpiece(const SystemParams& params, const CacheContents& cache,
                      int q, const std::vector<int>& V, int owner) {
  std::uint64_t rank = subset_lex_rank(V, params.K);
  return subpiece_slice(cache.subfile(q, rank), V, owner, params.t);
}

std::vector<int> others(int K, int skip) {
  std::vector<int> out;
  out.reserve(K - 1);
  for (int k = 1; k <= K; ++k)
    if (k != skip) out.push_back(k);
  return out;
}

bool intersects(const std::vector<int>& a, const std::vector<int>& b) {
  for (int x : a)
    if (std::find(b.begin(), b.end(), x) != b.end()) return true;
  return false;
}

// V = (A u {i}) \ {x}, all inputs sorted.
std::vector<int> codeword_term_set(const std::vector<int>& A, int i, int x) {
  std::vector<int> V;
  V.reserve(A.size());
  for (int u : A)
    if (u != x) V.push_back(u);
  V.push_back(i);
  std::sort(V.begin(), V.end());
  return V;
}

}  // namespace

Codeword make_codeword(const SystemParams& params, int i,
                       const std::vector<int>& target_set,
                       const DemandVector& d, const CacheContents& cache) {
  std::size_t sp = params.subpiece_bytes();
  Codeword cw;
  cw.transmitter = i;
  cw.target_set = target_set;
  cw.payload.assign(sp, 0);
  for (int k : target_set) {
    Bytes piece = cached_subpiece(params, cache, d[k - 1],
                                  codeword_term_set(target_set, i, k), i);
    for (std::size_t b = 0; b < sp; ++b) cw.payload[b] ^= piece[b];
  }
  return cw;
}

Transmission encode_user(const SystemParams& params, int i,
                         const DemandVector& d, const LeaderSet& leaders,
                         const CacheContents& cache) {
  params.validate();
  validate_demand(d, params.N, params.K);
  if (leaders.transmitter != i)
    throw std::invalid_argument("encode_user: leader set for wrong user");

  Transmission tx;
  tx.transmitter = i;
  for (SubsetIter it(others(params.K, i), params.t); !it.done(); it.next()) {
    std::vector<int> A = it.current();
    if (!intersects(A, leaders.leaders)) continue;
    tx.codewords.push_back(make_codeword(params, i, A, d, cache));
  }
  return tx;
}

Bytes decode_user(const SystemParams& params, int k, const DemandVector& d,
                  const std::vector<Transmission>& transmissions,
                  const CacheContents& cache) {
  params.validate();
  validate_demand(d, params.N, params.K);
  int q = d[k - 1];
  std::size_t sf = params.subfile_bytes();
  std::size_t sp = params.subpiece_bytes();
  Bytes out(params.file_bytes, 0);

  // Recovered sub-pieces grouped per transmitter; each transmitter's
  // codewords form their own GF(2) system (one-shot: no step mixes
  // codewords of two transmitters).
  std::map<std::pair<int, std::uint64_t>, Bytes> recovered;  // (owner,rank)

  for (const Transmission& tx : transmissions) {
    int i = tx.transmitter;
    if (i == k) continue;
    // Unknowns: sub-pieces owned by i that k does not cache.
    std::map<std::pair<int, std::uint64_t>, int> var_ids;  // (file,rank)
    auto var_of = [&](int file, std::uint64_t rank) {
      auto [it, fresh] = var_ids.emplace(std::make_pair(file, rank),
                                         static_cast<int>(var_ids.size()));
      (void)fresh;
      return it->second;
    };
    struct Eq {
      std::vector<int> cols;
      Bytes rhs;
    };
    std::vector<Eq> eqs;
    for (const Codeword& cw : tx.codewords) {
      if (cw.transmitter != i)
        throw DecodeError("decode: codeword attributed to wrong transmitter");
      Eq eq;
      eq.rhs = cw.payload;
      if (eq.rhs.size() != sp) throw DecodeError("decode: bad payload size");
      for (int x : cw.target_set) {
        std::vector<int> V = codeword_term_set(cw.target_set, i, x);
        std::uint64_t rank = subset_lex_rank(V, params.K);
        if (std::find(V.begin(), V.end(), k) != V.end()) {
          // Known side information from k's own cache.
          Bytes piece = cached_subpiece(params, cache, d[x - 1], V, i);
          for (std::size_t b = 0; b < sp; ++b) eq.rhs[b] ^= piece[b];
        } else {
          eq.cols.push_back(var_of(d[x - 1], rank));
        }
      }
      eqs.push_back(std::move(eq));
    }
    Gf2System sys(static_cast<int>(var_ids.size()), sp);
    for (auto& eq : eqs) sys.add_equation(eq.cols, std::move(eq.rhs));
    sys.reduce();

    // Needed from transmitter i: W_{q,V,i} for every V containing i but
    // not k.
    for (SubsetIter it(others(params.K, k), params.t); !it.done(); it.next()) {
      std::vector<int> V = it.current();
      if (std::find(V.begin(), V.end(), i) == V.end()) continue;
      std::uint64_t rank = subset_lex_rank(V, params.K);
      auto vit = var_ids.find({q, rank});
      std::optional<Bytes> value;
      if (vit != var_ids.end()) value = sys.solved(vit->second);
      if (!value)
        throw DecodeError("decode: sub-piece undetermined from transmitter " +
                          std::to_string(i));
      recovered[{i, rank}] = std::move(*value);
    }
  }

  // Assemble the file: cached subfiles directly, missing ones from the
  // recovered per-owner sub-pieces.
  std::vector<int> all_users(params.K);
  for (int u = 1; u <= params.K; ++u) all_users[u - 1] = u;
  std::uint64_t rank = 0;
  for (SubsetIter it(all_users, params.t); !it.done(); it.next(), ++rank) {
    std::vector<int> V = it.current();
    if (std::find(V.begin(), V.end(), k) != V.end()) {
      std::copy(cache.subfile(q, rank).begin(), cache.subfile(q, rank).end(),
                out.begin() + rank * sf);
    } else {
      for (std::size_t j = 0; j < V.size(); ++j) {
        auto rit = recovered.find({V[j], rank});
        if (rit == recovered.end())
          throw DecodeError("decode: missing recovered sub-piece");
        std::copy(rit->second.begin(), rit->second.end(),
                  out.begin() + rank * sf + j * sp);
      }
    }
  }
  return out;
}

Rational measure_load(const std::vector<Transmission>& transmissions,
                      std::size_t file_bytes) {
  int128 total_bytes = 0;
  for (const auto& tx : transmissions)
    for (const auto& cw : tx.codewords)
      total_bytes += static_cast<int128>(cw.payload.size());
  return Rational(total_bytes, static_cast<int128>(file_bytes));
}

}  // namespace d2dcache
