#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mflab {

enum class ArithFunction : std::uint8_t {
    Mobius = 0,
    Liouville = 1,
    SquareFree = 2,
};

std::string_view to_string(ArithFunction f) noexcept;
// Accepts "mobius", "liouville", "squarefree" (case-insensitive).
ArithFunction parse_arith_function(std::string_view name);

// Values of an arithmetic function on 1..max_n. Indexing is 1-based:
// table[n] is the value at n. Immutable once built.
class ArithTable {
public:
    ArithTable(ArithFunction function, std::vector<std::int8_t> values);

    ArithFunction function() const noexcept { return function_; }
    std::uint64_t max_n() const noexcept { return values_.size(); }

    std::int8_t operator[](std::uint64_t n) const noexcept { return values_[n - 1]; }
    std::int8_t at(std::uint64_t n) const;

    // values()[i] is the value at n = i + 1.
    std::span<const std::int8_t> values() const noexcept { return values_; }

    friend bool operator==(const ArithTable&, const ArithTable&) = default;

private:
    ArithFunction function_;
    std::vector<std::int8_t> values_;
};

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

bool is_prime(std::uint64_t n) noexcept;

struct SieveOptions {
    std::uint64_t segment_size = 1u << 18;
    unsigned threads = 0; // 0: use the global thread count
};

// Segmented sieve; output does not depend on segment size or thread count.
ArithTable sieve(ArithFunction function, std::uint64_t max_n, const SieveOptions& opts = {});

// Trial-division evaluations, used as oracles for the sieve.
int mobius_direct(std::uint64_t n);
int liouville_direct(std::uint64_t n);
int squarefree_direct(std::uint64_t n);

// Binary table format: "MFL1", function id (1 byte), max_n (u64 LE),
// then max_n signed bytes for n = 1..max_n.
void write_table(std::ostream& out, const ArithTable& table);
ArithTable read_table(std::istream& in);
void save_table(const std::string& path, const ArithTable& table);
ArithTable load_table(const std::string& path);

} // namespace mflab
