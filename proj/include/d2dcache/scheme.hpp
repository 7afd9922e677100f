#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "d2dcache/demand.hpp"
#include "d2dcache/gf2.hpp"
#include "d2dcache/rational.hpp"

namespace d2dcache {

struct DecodeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// N files, K users, integer cache parameter t = KM/N in [1..K].
// file_bytes is the effective file size; it must be a whole multiple of
// t*C(K,t) bytes so every sub-piece is byte-aligned.
struct SystemParams {
  int N = 0;
  int K = 0;
  int t = 0;
  std::size_t file_bytes = 0;

  void validate() const;

  Rational memory() const { return Rational(int128(t) * N, K); }
  std::uint64_t n_subfiles() const;           // C(K,t)
  std::size_t subfile_bytes() const;          // file_bytes / C(K,t)
  std::size_t subpiece_bytes() const;         // subfile_bytes / t

  // Smallest multiple of t*C(K,t) bytes at or above the requested size.
  static std::size_t aligned_file_bytes(int K, int t,
                                        std::size_t requested_bytes);
};

struct FileLibrary {
  std::vector<Bytes> files;  // files[q-1] = W_q
};

FileLibrary random_library(const SystemParams& params, std::uint64_t seed);

// Key (file q, lexicographic rank of cacher set V) -> subfile payload.
struct CacheContents {
  int user = 0;
  std::map<std::pair<int, std::uint64_t>, Bytes> pieces;

  const Bytes& subfile(int file, std::uint64_t rank) const;
};

// MAN placement: file W_q split into C(K,t) equal subfiles W_{q,V}
// indexed by the lex rank of V; user k caches every subfile with k in V.
std::vector<CacheContents> man_placement(const SystemParams& params,
                                         const FileLibrary& library);

struct SubPieceId {
  int file = 0;                // q
  std::vector<int> cachers;    // V, sorted, |V| = t
  int owner = 0;               // i in V
};

// Positional owner rule: the j-th chunk (0-based) of the subfile belongs
// to the j-th smallest element of V.
Bytes subpiece_slice(const Bytes& subfile, const std::vector<int>& cachers,
                     int owner, int t);

// All sub-pieces of one user's cache.
std::map<std::pair<int, std::uint64_t>, std::vector<Bytes>> split_subpieces(
    const SystemParams& params, const CacheContents& cache);

struct Codeword {
  int transmitter = 0;
  std::vector<int> target_set;  // A, sorted, |A| = t
  Bytes payload;                // XOR over k in A of W_{d_k,(A+i)\{k},i}
};

struct Transmission {
  int transmitter = 0;
  std::vector<Codeword> codewords;  // lexicographic by target set
};

// Single codeword Y^i_A built from user i's cache (A a t-subset of
// [K]\{i}).
Codeword make_codeword(const SystemParams& params, int i,
                       const std::vector<int>& target_set,
                       const DemandVector& d, const CacheContents& cache);

// Codewords of user i useful to at least one leader: all Y^i_A with
// A a t-subset of [K]\{i} and A intersecting U^i.
Transmission encode_user(const SystemParams& params, int i,
                         const DemandVector& d, const LeaderSet& leaders,
                         const CacheContents& cache);

// Recovers W_{d_k} bit-exactly from k's cache plus the K-1 other
// transmissions. Each transmitter's codewords are processed as an
// independent GF(2) system; missing (pruned) codewords are implicit in
// the span of the transmitted ones. Throws DecodeError if a needed
// sub-piece is not determined.
Bytes decode_user(const SystemParams& params, int k, const DemandVector& d,
                  const std::vector<Transmission>& transmissions,
                  const CacheContents& cache);

// Total transmitted bits divided by the file size, exact.
Rational measure_load(const std::vector<Transmission>& transmissions,
                      std::size_t file_bytes);

}  // namespace d2dcache
