#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mflab {

// Finite set of positive positions, kept strictly ascending.
class SupportSet {
public:
    SupportSet() = default;
    // Sorts and deduplicates; throws on a zero position.
    explicit SupportSet(std::vector<std::uint64_t> positions);
    SupportSet(std::initializer_list<std::uint64_t> positions)
        : SupportSet(std::vector<std::uint64_t>(positions)) {}

    std::span<const std::uint64_t> positions() const noexcept { return positions_; }
    std::size_t size() const noexcept { return positions_.size(); }
    bool empty() const noexcept { return positions_.empty(); }
    std::uint64_t max() const noexcept { return positions_.empty() ? 0 : positions_.back(); }
    bool contains(std::uint64_t pos) const noexcept;

    SupportSet translated(std::uint64_t k) const;
    SupportSet united(const SupportSet& other) const;
    SupportSet minus(const SupportSet& other) const;
    bool disjoint(const SupportSet& other) const noexcept;

    friend bool operator==(const SupportSet&, const SupportSet&) = default;

private:
    std::vector<std::uint64_t> positions_;
};

enum class Alphabet : std::uint8_t { Binary = 2, Signed = 3 };

// Finite word over {0,1} (Binary) or {0,+1,-1} (Signed). Position 1 is the
// first symbol.
class Block {
public:
    Block() = default;
    Block(std::vector<std::int8_t> symbols, Alphabet alphabet);

    // Binary: '0','1'. Signed: '0', '+' (or '1'), '-'. Whitespace ignored.
    static Block parse(std::string_view text, Alphabet alphabet);
    // Signed if the text contains '+' or '-', otherwise Binary.
    static Block parse_auto(std::string_view text);

    std::string str() const;
    Alphabet alphabet() const noexcept { return alphabet_; }
    std::size_t size() const noexcept { return symbols_.size(); }
    bool empty() const noexcept { return symbols_.empty(); }
    std::span<const std::int8_t> symbols() const noexcept { return symbols_; }
    std::int8_t operator[](std::size_t pos) const noexcept { return symbols_[pos - 1]; }

    SupportSet support() const;
    // Coordinatewise square, as a Binary block.
    Block squared() const;

    friend bool operator==(const Block&, const Block&) = default;
    friend auto operator<=>(const Block& a, const Block& b) { return a.symbols_ <=> b.symbols_; }

private:
    std::vector<std::int8_t> symbols_;
    Alphabet alphabet_ = Alphabet::Binary;
};

// t(p, A): number of residue classes mod p^2 met by A. Throws if p is not prime.
std::uint64_t residue_count(std::uint64_t p, const SupportSet& a);

// Primes whose squares do not exceed |A|; the only ones that can reject A.
std::vector<std::uint64_t> checked_primes(const SupportSet& a);

bool is_admissible_support(const SupportSet& a);
bool is_admissible_block(const Block& b);

inline constexpr std::size_t kDefaultEnumerationCap = 24;

// All admissible blocks of length n in lexicographic order, where symbols
// order as 0 < 1 (Binary) and 0 < + < - (Signed).
std::vector<Block> enumerate_admissible_blocks(std::size_t n, Alphabet alphabet,
                                               std::size_t cap = kDefaultEnumerationCap);

// Incremental admissibility of a growing support inside [1, max_len].
// Only primes with p^2 <= max_len are tracked, which is exact for any
// support of size <= max_len.
class AdmissibilityTracker {
public:
    explicit AdmissibilityTracker(std::size_t max_len);

    // Adds a position; returns whether the support stays admissible.
    bool add(std::uint64_t pos);
    // Undoes the matching add(pos).
    void remove(std::uint64_t pos);
    bool admissible() const noexcept { return saturated_ == 0; }

private:
    struct PrimeState {
        std::uint64_t square;
        std::uint64_t covered;
        std::vector<std::uint32_t> hits;
    };
    std::vector<PrimeState> primes_;
    std::size_t saturated_ = 0;
};

} // namespace mflab
