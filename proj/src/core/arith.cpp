#include "mflab/arith.hpp"

#include "mflab/error.hpp"
#include "mflab/parallel.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

namespace mflab {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

constexpr std::array<char, 4> kMagic{'M', 'F', 'L', '1'};

void sieve_segment(ArithFunction function, std::uint64_t lo, std::uint64_t hi,
                   std::span<const std::uint64_t> primes, std::span<std::int8_t> out) {
    const std::uint64_t len = hi - lo + 1;
    std::fill(out.begin(), out.end(), std::int8_t{1});

    if (function == ArithFunction::SquareFree) {
        for (std::uint64_t p : primes) {
            const std::uint64_t sq = p * p;
            if (sq > hi) break;
            for (std::uint64_t m = (lo + sq - 1) / sq * sq; m <= hi; m += sq) out[m - lo] = 0;
        }
        return;
    }

    // prod[i] accumulates the part of lo+i made of primes <= sqrt(max_n); any
    // remaining cofactor is a single large prime.
    std::vector<std::uint64_t> prod(len, 1);
    for (std::uint64_t p : primes) {
        if (p > hi) break;
        if (function == ArithFunction::Mobius) {
            for (std::uint64_t m = (lo + p - 1) / p * p; m <= hi; m += p) {
                out[m - lo] = static_cast<std::int8_t>(-out[m - lo]);
                prod[m - lo] *= p;
            }
            const std::uint64_t sq = p * p;
            if (sq <= hi)
                for (std::uint64_t m = (lo + sq - 1) / sq * sq; m <= hi; m += sq) out[m - lo] = 0;
        } else {
            for (std::uint64_t pk = p; pk <= hi;) {
                for (std::uint64_t m = (lo + pk - 1) / pk * pk; m <= hi; m += pk) {
                    out[m - lo] = static_cast<std::int8_t>(-out[m - lo]);
                    prod[m - lo] *= p;
                }
                if (pk > hi / p) break;
                pk *= p;
            }
        }
    }
    for (std::uint64_t i = 0; i < len; ++i)
        if (prod[i] != lo + i) out[i] = static_cast<std::int8_t>(-out[i]);
}

} // namespace

std::string_view to_string(ArithFunction f) noexcept {
    switch (f) {
    case ArithFunction::Mobius: return "mobius";
    case ArithFunction::Liouville: return "liouville";
    case ArithFunction::SquareFree: return "squarefree";
    }
    return "unknown";
}

ArithFunction parse_arith_function(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "mobius" || lower == "moebius" || lower == "mu") return ArithFunction::Mobius;
    if (lower == "liouville" || lower == "lambda") return ArithFunction::Liouville;
    if (lower == "squarefree" || lower == "mu2") return ArithFunction::SquareFree;
    throw Error(ErrorCode::InvalidArgument, "unknown arithmetic function '" + std::string(name) + "'");
}

ArithTable::ArithTable(ArithFunction function, std::vector<std::int8_t> values)
    : function_(function), values_(std::move(values)) {}

std::int8_t ArithTable::at(std::uint64_t n) const {
    if (n == 0 || n > max_n())
        throw Error(ErrorCode::Range, "index " + std::to_string(n) + " outside table range");
    return values_[n - 1];
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
    std::vector<std::uint64_t> primes;
    if (bound < 2) return primes;
    std::vector<bool> composite(bound + 1, false);
    for (std::uint64_t i = 2; i <= bound; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        if (i <= bound / i)
            for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
    }
    return primes;
}

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d <= n / d; d += 2)
        if (n % d == 0) return false;
    return true;
}

ArithTable sieve(ArithFunction function, std::uint64_t max_n, const SieveOptions& opts) {
    if (max_n == 0) throw Error(ErrorCode::InvalidArgument, "empty range");
    const std::uint64_t seg = std::max<std::uint64_t>(opts.segment_size, 1);
    const auto primes = primes_up_to(isqrt(max_n));
    std::vector<std::int8_t> values(max_n);

    const std::uint64_t segments = (max_n + seg - 1) / seg;
    parallel_chunks(
        segments,
        [&](std::size_t s) {
            const std::uint64_t lo = 1 + s * seg;
            const std::uint64_t hi = std::min(max_n, lo + seg - 1);
            sieve_segment(function, lo, hi, primes,
                          std::span<std::int8_t>(values).subspan(lo - 1, hi - lo + 1));
        },
        opts.threads);
    return ArithTable(function, std::move(values));
}

int mobius_direct(std::uint64_t n) {
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "mobius_direct requires n >= 1");
    int sign = 1;
    for (std::uint64_t d = 2; d <= n / d; ++d) {
        if (n % d != 0) continue;
        n /= d;
        if (n % d == 0) return 0;
        sign = -sign;
    }
    if (n > 1) sign = -sign;
    return sign;
}

int liouville_direct(std::uint64_t n) {
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "liouville_direct requires n >= 1");
    int sign = 1;
    for (std::uint64_t d = 2; d <= n / d; ++d) {
        while (n % d == 0) {
            n /= d;
            sign = -sign;
        }
    }
    if (n > 1) sign = -sign;
    return sign;
}

int squarefree_direct(std::uint64_t n) {
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "squarefree_direct requires n >= 1");
    for (std::uint64_t d = 2; d <= n / d; ++d)
        if (n % (d * d) == 0) return 0;
    return 1;
}

void write_table(std::ostream& out, const ArithTable& table) {
    out.write(kMagic.data(), kMagic.size());
    out.put(static_cast<char>(table.function()));
    std::array<char, 8> len{};
    std::uint64_t n = table.max_n();
    for (auto& b : len) {
        b = static_cast<char>(n & 0xff);
        n >>= 8;
    }
    out.write(len.data(), len.size());
    out.write(reinterpret_cast<const char*>(table.values().data()),
              static_cast<std::streamsize>(table.max_n()));
    if (!out) throw Error(ErrorCode::Io, "failed to write table");
}

ArithTable read_table(std::istream& in) {
    std::array<char, 4> magic{};
    if (!in.read(magic.data(), magic.size()) || magic != kMagic)
        throw Error(ErrorCode::Format, "bad magic: not an MFL1 table");
    const int id = in.get();
    if (id < 0 || id > 2) throw Error(ErrorCode::Format, "bad function id");
    std::array<unsigned char, 8> len{};
    if (!in.read(reinterpret_cast<char*>(len.data()), len.size()))
        throw Error(ErrorCode::Format, "truncated header");
    std::uint64_t max_n = 0;
    for (int i = 7; i >= 0; --i) max_n = (max_n << 8) | len[i];
    if (max_n == 0) throw Error(ErrorCode::Format, "empty range");

    // Grow in chunks so a corrupt length fails on EOF instead of allocating.
    std::vector<std::int8_t> values;
    constexpr std::uint64_t kChunk = 1u << 24;
    while (values.size() < max_n) {
        const std::uint64_t have = values.size();
        const std::uint64_t take = std::min(kChunk, max_n - have);
        values.resize(have + take);
        if (!in.read(reinterpret_cast<char*>(values.data() + have), static_cast<std::streamsize>(take)))
            throw Error(ErrorCode::Format, "truncated table body");
    }
    const auto function = static_cast<ArithFunction>(id);
    const std::int8_t lo = function == ArithFunction::SquareFree ? 0 : -1;
    for (auto v : values)
        if (v < lo || v > 1) throw Error(ErrorCode::Format, "value outside function range");
    return ArithTable(function, std::move(values));
}

void save_table(const std::string& path, const ArithTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
    write_table(out, table);
}

ArithTable load_table(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
    return read_table(in);
}

} // namespace mflab
