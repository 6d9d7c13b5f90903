// Linear [n, n-k, 2t+1] codes in parity-check (syndrome) form: the sketch
// S*w, its complement S_perp*w extending S to a full-rank square matrix, and
// bounded-distance recovery of w from a nearby w' plus the sketch.
#pragma once

#include "rfe/bits.hpp"
#include "rfe/gf2k.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace rfe {

class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(int rows, int cols);
    static BitMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int get(int r, int c) const;
    void set(int r, int c, int v);

    Bits multiply(const Bits& w) const;  // length rows() result over GF(2)
    int rank() const;
    bool operator==(const BitMatrix&) const = default;
    std::string to_hex() const;  // row-major bit stream, zero-padded tail

    const std::vector<std::uint64_t>& row_blocks(int r) const { return data_[r]; }

private:
    int rows_ = 0, cols_ = 0, blocks_ = 0;
    std::vector<std::vector<std::uint64_t>> data_;
};

BitMatrix stack(const BitMatrix& top, const BitMatrix& bottom);
std::optional<BitMatrix> invert(const BitMatrix& m);  // square matrices
// Rows extending S to full rank n x n, chosen greedily over the standard
// unit vectors in index order. Throws if S is not full row rank.
BitMatrix build_complement(const BitMatrix& S);

enum class DecoderKind { exhaustive, algebraic };
enum class CodeFamily { hamming, bch, exhaustive_random };

class LinearSketchSpec {
public:
    int n() const { return n_; }
    int k() const { return k_; }
    int t() const { return t_; }
    DecoderKind decoder() const { return decoder_; }
    const std::string& key() const { return key_; }
    const BitMatrix& S() const { return S_; }
    const BitMatrix& S_perp() const { return S_perp_; }

    Bits ss(const Bits& w) const;         // k bits
    Bits ss_perp(const Bits& w) const;    // n-k bits
    Bits reconstruct(const Bits& s, const Bits& c) const;
    // w* = w' ^ e for the unique weight-<=t e with S*e = S*w' ^ s, if any.
    std::optional<Bits> srec(const Bits& w_prime, const Bits& s) const;
    // The weight-<=t pattern with the given syndrome, if any.
    std::optional<Bits> decode_pattern(const Bits& syndrome) const;

    // Exact minimum distance by codeword enumeration (n <= 16 only).
    int min_distance_exhaustive() const;

    friend std::shared_ptr<const LinearSketchSpec> make_code(CodeFamily, int n, int t);

private:
    LinearSketchSpec() = default;
    void finish_construction();  // complement, stacked inverse, invariants
    std::optional<Bits> decode_exhaustive(const Bits& syndrome) const;
    std::optional<Bits> decode_bch(const Bits& syndrome) const;

    int n_ = 0, k_ = 0, t_ = 0;
    DecoderKind decoder_ = DecoderKind::exhaustive;
    std::string key_;
    BitMatrix S_, S_perp_, stacked_inv_;
    std::unordered_map<std::uint64_t, std::uint64_t> coset_leader_;  // exhaustive decoding
    FieldSpecPtr bch_field_;  // GF(2^m) with x primitive
    int bch_m_ = 0;
};

using CodePtr = std::shared_ptr<const LinearSketchSpec>;

CodePtr make_code(CodeFamily family, int n, int t);
CodePtr make_code_from_key(const std::string& key);  // "bch-255-8" etc.

}  // namespace rfe
