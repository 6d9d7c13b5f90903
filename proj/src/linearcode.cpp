#include "rfe/linearcode.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <stdexcept>

namespace rfe {

BitMatrix::BitMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), blocks_((cols + 63) / 64),
      data_(static_cast<std::size_t>(rows), std::vector<std::uint64_t>(static_cast<std::size_t>((cols + 63) / 64), 0)) {}

BitMatrix BitMatrix::identity(int n) {
    BitMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

int BitMatrix::get(int r, int c) const {
    return (data_[r][c / 64] >> (c % 64)) & 1;
}

void BitMatrix::set(int r, int c, int v) {
    if (v)
        data_[r][c / 64] |= std::uint64_t(1) << (c % 64);
    else
        data_[r][c / 64] &= ~(std::uint64_t(1) << (c % 64));
}

namespace {

std::vector<std::uint64_t> pack_bits(const Bits& w) {
    std::vector<std::uint64_t> blocks((w.size() + 63) / 64, 0);
    for (std::size_t p = 1; p <= w.size(); ++p)
        if (w.get(p)) blocks[(p - 1) / 64] |= std::uint64_t(1) << ((p - 1) % 64);
    return blocks;
}

int parity_and(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc ^= a[i] & b[i];
    return std::popcount(acc) & 1;
}

}  // namespace

Bits BitMatrix::multiply(const Bits& w) const {
    if (w.size() != static_cast<std::size_t>(cols_))
        throw std::invalid_argument("BitMatrix: input length mismatch");
    auto blocks = pack_bits(w);
    Bits out(static_cast<std::size_t>(rows_));
    for (int r = 0; r < rows_; ++r)
        if (parity_and(data_[r], blocks)) out.set(static_cast<std::size_t>(r) + 1, 1);
    return out;
}

int BitMatrix::rank() const {
    auto rows = data_;
    int rank = 0;
    for (int c = 0; c < cols_ && rank < rows_; ++c) {
        int pivot = -1;
        for (int r = rank; r < rows_; ++r)
            if ((rows[r][c / 64] >> (c % 64)) & 1) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        for (int r = 0; r < rows_; ++r)
            if (r != rank && ((rows[r][c / 64] >> (c % 64)) & 1))
                for (int b = 0; b < blocks_; ++b) rows[r][b] ^= rows[rank][b];
        ++rank;
    }
    return rank;
}

std::string BitMatrix::to_hex() const {
    std::string s;
    int nibble = 0, filled = 0;
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) {
            nibble = (nibble << 1) | get(r, c);
            if (++filled == 4) {
                s.push_back("0123456789abcdef"[nibble]);
                nibble = 0;
                filled = 0;
            }
        }
    if (filled) s.push_back("0123456789abcdef"[nibble << (4 - filled)]);
    return s;
}

BitMatrix stack(const BitMatrix& top, const BitMatrix& bottom) {
    if (top.cols() != bottom.cols()) throw std::invalid_argument("stack: column mismatch");
    BitMatrix m(top.rows() + bottom.rows(), top.cols());
    for (int r = 0; r < top.rows(); ++r)
        for (int c = 0; c < top.cols(); ++c) m.set(r, c, top.get(r, c));
    for (int r = 0; r < bottom.rows(); ++r)
        for (int c = 0; c < bottom.cols(); ++c) m.set(top.rows() + r, c, bottom.get(r, c));
    return m;
}

std::optional<BitMatrix> invert(const BitMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("invert: square matrix required");
    const int n = m.rows();
    // Gauss-Jordan on [m | I].
    BitMatrix a = m, inv = BitMatrix::identity(n);
    for (int c = 0; c < n; ++c) {
        int pivot = -1;
        for (int r = c; r < n; ++r)
            if (a.get(r, c)) {
                pivot = r;
                break;
            }
        if (pivot < 0) return std::nullopt;
        if (pivot != c)
            for (int j = 0; j < n; ++j) {
                int tmp = a.get(c, j);
                a.set(c, j, a.get(pivot, j));
                a.set(pivot, j, tmp);
                tmp = inv.get(c, j);
                inv.set(c, j, inv.get(pivot, j));
                inv.set(pivot, j, tmp);
            }
        for (int r = 0; r < n; ++r)
            if (r != c && a.get(r, c))
                for (int j = 0; j < n; ++j) {
                    a.set(r, j, a.get(r, j) ^ a.get(c, j));
                    inv.set(r, j, inv.get(r, j) ^ inv.get(c, j));
                }
    }
    return inv;
}

BitMatrix build_complement(const BitMatrix& S) {
    const int k = S.rows(), n = S.cols();
    if (S.rank() != k) throw std::invalid_argument("build_complement: S must have full row rank");
    BitMatrix current = S;
    std::vector<int> chosen;
    for (int j = 0; j < n && static_cast<int>(chosen.size()) < n - k; ++j) {
        BitMatrix candidate(current.rows() + 1, n);
        for (int r = 0; r < current.rows(); ++r)
            for (int c = 0; c < n; ++c) candidate.set(r, c, current.get(r, c));
        candidate.set(current.rows(), j, 1);
        if (candidate.rank() == current.rows() + 1) {
            current = candidate;
            chosen.push_back(j);
        }
    }
    if (static_cast<int>(chosen.size()) != n - k)
        throw std::logic_error("build_complement: failed to extend to full rank");
    BitMatrix out(n - k, n);
    for (int r = 0; r < n - k; ++r) out.set(r, chosen[r], 1);
    return out;
}

Bits LinearSketchSpec::ss(const Bits& w) const {
    return S_.multiply(w);
}

Bits LinearSketchSpec::ss_perp(const Bits& w) const {
    return S_perp_.multiply(w);
}

Bits LinearSketchSpec::reconstruct(const Bits& s, const Bits& c) const {
    if (s.size() != static_cast<std::size_t>(k_) || c.size() != static_cast<std::size_t>(n_ - k_))
        throw std::invalid_argument("reconstruct: length mismatch");
    return stacked_inv_.multiply(concat(s, c));
}

std::optional<Bits> LinearSketchSpec::srec(const Bits& w_prime, const Bits& s) const {
    if (w_prime.size() != static_cast<std::size_t>(n_))
        throw std::invalid_argument("srec: length mismatch");
    auto e = decode_pattern(ss(w_prime) ^ s);
    if (!e) return std::nullopt;
    return w_prime ^ *e;
}

std::optional<Bits> LinearSketchSpec::decode_pattern(const Bits& syndrome) const {
    if (syndrome.size() != static_cast<std::size_t>(k_))
        throw std::invalid_argument("decode_pattern: syndrome length mismatch");
    return decoder_ == DecoderKind::exhaustive ? decode_exhaustive(syndrome)
                                               : decode_bch(syndrome);
}

std::optional<Bits> LinearSketchSpec::decode_exhaustive(const Bits& syndrome) const {
    auto it = coset_leader_.find(syndrome.to_uint());
    if (it == coset_leader_.end()) return std::nullopt;
    Bits e(static_cast<std::size_t>(n_));
    for (int p = 0; p < n_; ++p)
        if ((it->second >> p) & 1) e.set(static_cast<std::size_t>(p) + 1, 1);
    return e;
}

// Berlekamp-Massey plus Chien search over GF(2^m). Position p (1-indexed)
// corresponds to the locator alpha^(n-p).
std::optional<Bits> LinearSketchSpec::decode_bch(const Bits& syndrome) const {
    const auto& F = *bch_field_;
    const int m = bch_m_;
    const int two_t = 2 * t_;
    std::vector<u128> S(static_cast<std::size_t>(two_t) + 1, 0);  // S[1..2t]
    for (int idx = 0; idx < t_; ++idx) {
        const std::size_t lo = static_cast<std::size_t>(idx) * static_cast<std::size_t>(m);
        Bits chunk = syndrome.substr(lo + 1, lo + static_cast<std::size_t>(m));
        S[static_cast<std::size_t>(2 * idx + 1)] = FieldElement(chunk, bch_field_).raw();
    }
    for (int j = 1; 2 * j <= two_t; ++j)
        S[static_cast<std::size_t>(2 * j)] = F.mul_raw(S[j], S[j]);

    bool all_zero = true;
    for (int j = 1; j <= two_t; ++j)
        if (S[j]) all_zero = false;
    if (all_zero) return Bits(static_cast<std::size_t>(n_));

    // Berlekamp-Massey for the error locator polynomial C.
    std::vector<u128> C{1}, B{1};
    int L = 0, shift = 1;
    u128 b = 1;
    for (int step = 0; step < two_t; ++step) {
        u128 d = S[static_cast<std::size_t>(step) + 1];
        for (int i = 1; i <= L && i < static_cast<int>(C.size()); ++i)
            d ^= F.mul_raw(C[i], S[static_cast<std::size_t>(step + 1 - i)]);
        if (d == 0) {
            ++shift;
        } else if (2 * L <= step) {
            std::vector<u128> T = C;
            u128 coef = F.div_raw(d, b);
            if (static_cast<int>(C.size()) < static_cast<int>(B.size()) + shift + 1)
                C.resize(B.size() + static_cast<std::size_t>(shift) + 1, 0);
            for (std::size_t i = 0; i < B.size(); ++i)
                C[i + static_cast<std::size_t>(shift)] ^= F.mul_raw(coef, B[i]);
            L = step + 1 - L;
            B = T;
            b = d;
            shift = 1;
        } else {
            u128 coef = F.div_raw(d, b);
            if (static_cast<int>(C.size()) < static_cast<int>(B.size()) + shift + 1)
                C.resize(B.size() + static_cast<std::size_t>(shift) + 1, 0);
            for (std::size_t i = 0; i < B.size(); ++i)
                C[i + static_cast<std::size_t>(shift)] ^= F.mul_raw(coef, B[i]);
            ++shift;
        }
    }
    int degC = -1;
    for (int i = static_cast<int>(C.size()) - 1; i >= 0; --i)
        if (C[static_cast<std::size_t>(i)]) {
            degC = i;
            break;
        }
    if (L > t_ || degC != L) return std::nullopt;

    // Chien search.
    Bits e(static_cast<std::size_t>(n_));
    int roots = 0;
    for (int p = 1; p <= n_; ++p) {
        // x = alpha^(-(n-p)) = alpha^(p-n mod 2^m-1)
        int exp = ((p - n_) % n_ + n_) % n_;
        u128 x = 1, apow = F.x_element_raw();
        for (int bit = exp; bit > 0; bit >>= 1) {
            if (bit & 1) x = F.mul_raw(x, apow);
            apow = F.mul_raw(apow, apow);
        }
        u128 val = 0;
        for (int i = degC; i >= 0; --i) val = F.mul_raw(val, x) ^ C[static_cast<std::size_t>(i)];
        if (val == 0) {
            e.set(static_cast<std::size_t>(p), 1);
            ++roots;
        }
    }
    if (roots != L) return std::nullopt;
    // The pattern's syndrome must hit the target exactly.
    if (S_.multiply(e) != syndrome) return std::nullopt;
    return e;
}

int LinearSketchSpec::min_distance_exhaustive() const {
    if (n_ > 16) throw std::invalid_argument("min_distance_exhaustive: n too large");
    // Enumerate the kernel of S via a basis.
    std::vector<std::uint64_t> basis;
    {
        // Solve S x = 0: nullspace via Gaussian elimination on S columns.
        const int n = n_, k = k_;
        std::vector<std::uint64_t> rows(static_cast<std::size_t>(k), 0);
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < n; ++c)
                if (S_.get(r, c)) rows[static_cast<std::size_t>(r)] |= std::uint64_t(1) << c;
        std::vector<int> pivot_col;
        int rank = 0;
        for (int c = 0; c < n && rank < k; ++c) {
            int pv = -1;
            for (int r = rank; r < k; ++r)
                if ((rows[static_cast<std::size_t>(r)] >> c) & 1) {
                    pv = r;
                    break;
                }
            if (pv < 0) continue;
            std::swap(rows[static_cast<std::size_t>(rank)], rows[static_cast<std::size_t>(pv)]);
            for (int r = 0; r < k; ++r)
                if (r != rank && ((rows[static_cast<std::size_t>(r)] >> c) & 1))
                    rows[static_cast<std::size_t>(r)] ^= rows[static_cast<std::size_t>(rank)];
            pivot_col.push_back(c);
            ++rank;
        }
        std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
        for (int c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
        for (int c = 0; c < n; ++c) {
            if (is_pivot[static_cast<std::size_t>(c)]) continue;
            std::uint64_t v = std::uint64_t(1) << c;
            for (int r = 0; r < rank; ++r)
                if ((rows[static_cast<std::size_t>(r)] >> c) & 1)
                    v |= std::uint64_t(1) << pivot_col[static_cast<std::size_t>(r)];
            basis.push_back(v);
        }
    }
    int best = n_ + 1;
    const std::size_t dim = basis.size();
    std::uint64_t word = 0;
    for (std::uint64_t g = 1; g < (std::uint64_t(1) << dim); ++g) {
        // Gray-code enumeration of the kernel.
        word ^= basis[static_cast<std::size_t>(std::countr_zero(g))];
        best = std::min(best, std::popcount(word));
    }
    return best;
}

namespace {

FieldSpecPtr bch_symbol_field(int m) {
    // Primitive polynomials (x generates the multiplicative group); verified
    // at construction below.
    static const std::unordered_map<int, u128> primitive = {
        {2, 0x3}, {3, 0x3}, {4, 0x3}, {5, 0x5}, {6, 0x3}, {7, 0x3}, {8, 0x1d},
    };
    auto it = primitive.find(m);
    if (it == primitive.end())
        throw std::invalid_argument("make_code: bch symbol field degree unsupported");
    auto field = FieldSpec::make_with_modulus(m, it->second);
    // Order check: x^((2^m-1)/d) != 1 for every divisor d > 1 of 2^m-1.
    int order = (1 << m) - 1;
    for (int d = 2; d <= order; ++d) {
        if (order % d != 0) continue;
        int e = order / d;
        u128 acc = 1, base = field->x_element_raw();
        for (int bit = e; bit > 0; bit >>= 1) {
            if (bit & 1) acc = field->mul_raw(acc, base);
            base = field->mul_raw(base, base);
        }
        if (acc == 1) throw std::logic_error("bch_symbol_field: x is not primitive");
    }
    return field;
}

void build_coset_table(LinearSketchSpec& spec, const BitMatrix& S, int n, int t,
                       std::unordered_map<std::uint64_t, std::uint64_t>& table) {
    (void)spec;
    // Weight-ascending enumeration; first writer wins, so each syndrome maps
    // to a minimum-weight pattern among weight <= t.
    std::vector<std::uint64_t> current{0};
    auto syndrome_of = [&](std::uint64_t pattern) {
        Bits e(static_cast<std::size_t>(n));
        for (int p = 0; p < n; ++p)
            if ((pattern >> p) & 1) e.set(static_cast<std::size_t>(p) + 1, 1);
        return S.multiply(e).to_uint();
    };
    table.emplace(0, 0);
    std::vector<int> idx;
    // Enumerate subsets of size w for w = 1..t.
    for (int w = 1; w <= t; ++w) {
        idx.assign(static_cast<std::size_t>(w), 0);
        for (int i = 0; i < w; ++i) idx[static_cast<std::size_t>(i)] = i;
        while (true) {
            std::uint64_t pattern = 0;
            for (int i : idx) pattern |= std::uint64_t(1) << i;
            table.emplace(syndrome_of(pattern), pattern);
            int i = w - 1;
            while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - w + i) --i;
            if (i < 0) break;
            ++idx[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < w; ++j)
                idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
}

}  // namespace

void LinearSketchSpec::finish_construction() {
    if (S_.rank() != k_) throw std::logic_error("LinearSketchSpec: S does not have rank k");
    S_perp_ = build_complement(S_);
    BitMatrix stacked = stack(S_, S_perp_);
    auto inv = invert(stacked);
    if (!inv) throw std::logic_error("LinearSketchSpec: stacked matrix is singular");
    stacked_inv_ = *inv;
    if (n_ <= 16) {
        if (min_distance_exhaustive() < 2 * t_ + 1)
            throw std::logic_error("LinearSketchSpec: minimum distance below 2t+1");
    }
    if (decoder_ == DecoderKind::exhaustive) {
        if (n_ > 20) throw std::invalid_argument("exhaustive decoding limited to n <= 20");
        build_coset_table(*this, S_, n_, t_, coset_leader_);
    }
}

CodePtr make_code(CodeFamily family, int n, int t) {
    auto spec = std::shared_ptr<LinearSketchSpec>(new LinearSketchSpec());
    spec->n_ = n;
    spec->t_ = t;
    if (family == CodeFamily::hamming) {
        if (t != 1) throw std::invalid_argument("make_code: hamming codes have t = 1");
        auto is_pow2 = [](int x) { return x > 0 && (x & (x - 1)) == 0; };
        const bool extended = is_pow2(n);  // [2^r, 2^r - r - 1, 4]
        if (!extended && !is_pow2(n + 1))
            throw std::invalid_argument("make_code: hamming length must be 2^r - 1 or 2^r");
        int r = std::countr_zero(static_cast<unsigned>(extended ? n : n + 1));
        if (extended) ++r;  // r-bit position label plus an overall parity row
        spec->k_ = r;
        spec->decoder_ = DecoderKind::exhaustive;
        BitMatrix S(r, n);
        if (!extended) {
            for (int p = 1; p <= n; ++p)
                for (int bit = 0; bit < r; ++bit)
                    S.set(bit, p - 1, (p >> (r - 1 - bit)) & 1);
        } else {
            for (int p = 1; p <= n; ++p) {
                for (int bit = 0; bit + 1 < r; ++bit)
                    S.set(bit, p - 1, ((p - 1) >> (r - 2 - bit)) & 1);
                S.set(r - 1, p - 1, 1);  // overall parity
            }
        }
        spec->S_ = S;
        spec->key_ = "hamming-" + std::to_string(n) + "-1";
    } else if (family == CodeFamily::bch) {
        int m = 0;
        while ((1 << m) - 1 < n) ++m;
        if ((1 << m) - 1 != n)
            throw std::invalid_argument("make_code: bch length must be 2^m - 1");
        auto field = bch_symbol_field(m);
        // Narrow-sense BCH with designed distance 2t+1; require the t odd
        // cyclotomic cosets mod n to be distinct of full size m, so the
        // syndrome map has rank m*t equal to the generator degree.
        std::vector<std::vector<int>> cosets;
        std::vector<bool> seen(static_cast<std::size_t>(n), false);
        for (int j = 1; j < 2 * t; j += 2) {
            if (seen[static_cast<std::size_t>(j)])
                throw std::invalid_argument("make_code: bch parameters give a degenerate coset");
            std::vector<int> coset;
            int c = j;
            while (std::find(coset.begin(), coset.end(), c) == coset.end()) {
                coset.push_back(c);
                seen[static_cast<std::size_t>(c)] = true;
                c = (2 * c) % n;
            }
            if (static_cast<int>(coset.size()) != m)
                throw std::invalid_argument("make_code: bch coset size below m");
            cosets.push_back(coset);
        }
        spec->k_ = m * t;
        spec->decoder_ = DecoderKind::algebraic;
        spec->bch_field_ = field;
        spec->bch_m_ = m;
        BitMatrix S(spec->k_, n);
        for (int idx = 0; idx < t; ++idx) {
            int j = 2 * idx + 1;
            for (int p = 1; p <= n; ++p) {
                // Column p carries alpha^(j*(n-p)), bits MSB-first.
                int exp = (static_cast<long>(j) * (n - p)) % n;
                u128 val = 1, base = field->x_element_raw();
                for (int bit = exp; bit > 0; bit >>= 1) {
                    if (bit & 1) val = field->mul_raw(val, base);
                    base = field->mul_raw(base, base);
                }
                for (int bit = 0; bit < m; ++bit)
                    S.set(idx * m + bit, p - 1, (val >> (m - 1 - bit)) & 1 ? 1 : 0);
            }
        }
        spec->S_ = S;
        spec->key_ = "bch-" + std::to_string(n) + "-" + std::to_string(t);
    } else {  // exhaustive_random
        if (n > 16) throw std::invalid_argument("make_code: exhaustive-random limited to n <= 16");
        // Deterministic given (n, t): seeded search for the smallest k whose
        // random parity check meets the distance bound.
        std::mt19937_64 rng(0x52464531u ^ (static_cast<std::uint64_t>(n) << 16) ^
                            static_cast<std::uint64_t>(t));
        for (int k = 1; k <= n; ++k) {
            bool found = false;
            for (int attempt = 0; attempt < 200 && !found; ++attempt) {
                BitMatrix S(k, n);
                for (int r = 0; r < k; ++r)
                    for (int c = 0; c < n; ++c) S.set(r, c, rng() & 1);
                if (S.rank() != k) continue;
                spec->S_ = S;
                spec->k_ = k;
                if (spec->min_distance_exhaustive() >= 2 * t + 1) found = true;
            }
            if (found) break;
            if (k == n) throw std::invalid_argument("make_code: no random code found");
        }
        spec->decoder_ = DecoderKind::exhaustive;
        spec->key_ = "exhaustive-random-" + std::to_string(n) + "-" + std::to_string(t);
    }
    spec->finish_construction();
    return spec;
}

CodePtr make_code_from_key(const std::string& key) {
    auto parse_tail = [&](std::size_t prefix_len) {
        std::string rest = key.substr(prefix_len);
        auto dash = rest.find('-');
        if (dash == std::string::npos) throw std::invalid_argument("bad code key: " + key);
        return std::pair<int, int>{std::stoi(rest.substr(0, dash)), std::stoi(rest.substr(dash + 1))};
    };
    if (key.rfind("hamming-", 0) == 0) {
        auto [n, t] = parse_tail(8);
        return make_code(CodeFamily::hamming, n, t);
    }
    if (key.rfind("bch-", 0) == 0) {
        auto [n, t] = parse_tail(4);
        return make_code(CodeFamily::bch, n, t);
    }
    if (key.rfind("exhaustive-random-", 0) == 0) {
        auto [n, t] = parse_tail(18);
        return make_code(CodeFamily::exhaustive_random, n, t);
    }
    throw std::invalid_argument("unknown code key: " + key);
}

}  // namespace rfe
