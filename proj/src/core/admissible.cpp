#include "mflab/admissible.hpp"

#include "mflab/arith.hpp"
#include "mflab/error.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

namespace mflab {

SupportSet::SupportSet(std::vector<std::uint64_t> positions) : positions_(std::move(positions)) {
    std::sort(positions_.begin(), positions_.end());
    positions_.erase(std::unique(positions_.begin(), positions_.end()), positions_.end());
    if (!positions_.empty() && positions_.front() == 0)
        throw Error(ErrorCode::InvalidArgument, "support positions must be >= 1");
}

bool SupportSet::contains(std::uint64_t pos) const noexcept {
    return std::binary_search(positions_.begin(), positions_.end(), pos);
}

SupportSet SupportSet::translated(std::uint64_t k) const {
    std::vector<std::uint64_t> out(positions_);
    for (auto& p : out) p += k;
    return SupportSet(std::move(out));
}

SupportSet SupportSet::united(const SupportSet& other) const {
    std::vector<std::uint64_t> out;
    std::set_union(positions_.begin(), positions_.end(), other.positions_.begin(),
                   other.positions_.end(), std::back_inserter(out));
    return SupportSet(std::move(out));
}

SupportSet SupportSet::minus(const SupportSet& other) const {
    std::vector<std::uint64_t> out;
    std::set_difference(positions_.begin(), positions_.end(), other.positions_.begin(),
                        other.positions_.end(), std::back_inserter(out));
    return SupportSet(std::move(out));
}

bool SupportSet::disjoint(const SupportSet& other) const noexcept {
    auto i = positions_.begin();
    auto j = other.positions_.begin();
    while (i != positions_.end() && j != other.positions_.end()) {
        if (*i == *j) return false;
        if (*i < *j) ++i;
        else ++j;
    }
    return true;
}

Block::Block(std::vector<std::int8_t> symbols, Alphabet alphabet)
    : symbols_(std::move(symbols)), alphabet_(alphabet) {
    const std::int8_t lo = alphabet == Alphabet::Binary ? 0 : -1;
    for (auto s : symbols_)
        if (s < lo || s > 1)
            throw Error(ErrorCode::InvalidArgument, "symbol outside block alphabet");
}

Block Block::parse(std::string_view text, Alphabet alphabet) {
    std::vector<std::int8_t> symbols;
    symbols.reserve(text.size());
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        switch (c) {
        case '0': symbols.push_back(0); break;
        case '1': symbols.push_back(1); break;
        case '+':
            if (alphabet == Alphabet::Binary)
                throw Error(ErrorCode::InvalidArgument, "'+' is not a binary symbol");
            symbols.push_back(1);
            break;
        case '-':
            if (alphabet == Alphabet::Binary)
                throw Error(ErrorCode::InvalidArgument, "'-' is not a binary symbol");
            symbols.push_back(-1);
            break;
        default:
            throw Error(ErrorCode::InvalidArgument,
                        std::string("unexpected block symbol '") + c + "'");
        }
    }
    return Block(std::move(symbols), alphabet);
}

Block Block::parse_auto(std::string_view text) {
    const bool sign = text.find_first_of("+-") != std::string_view::npos;
    return parse(text, sign ? Alphabet::Signed : Alphabet::Binary);
}

std::string Block::str() const {
    std::string out;
    out.reserve(symbols_.size());
    for (auto s : symbols_) {
        if (s == 0) out.push_back('0');
        else if (alphabet_ == Alphabet::Binary) out.push_back('1');
        else out.push_back(s > 0 ? '+' : '-');
    }
    return out;
}

SupportSet Block::support() const {
    std::vector<std::uint64_t> pos;
    for (std::size_t i = 0; i < symbols_.size(); ++i)
        if (symbols_[i] != 0) pos.push_back(i + 1);
    return SupportSet(std::move(pos));
}

Block Block::squared() const {
    std::vector<std::int8_t> out(symbols_.size());
    for (std::size_t i = 0; i < symbols_.size(); ++i) out[i] = symbols_[i] != 0 ? 1 : 0;
    return Block(std::move(out), Alphabet::Binary);
}

std::uint64_t residue_count(std::uint64_t p, const SupportSet& a) {
    if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
    if (a.empty()) return 0;
    if (p > 0xffffffffu) {
        // p^2 exceeds every 64-bit position, so residues are the positions.
        return a.size();
    }
    const std::uint64_t sq = p * p;
    if (sq <= (1u << 24)) {
        std::vector<bool> seen(sq, false);
        std::uint64_t count = 0;
        for (auto x : a.positions()) {
            const auto r = x % sq;
            if (!seen[r]) {
                seen[r] = true;
                ++count;
            }
        }
        return count;
    }
    std::unordered_set<std::uint64_t> seen;
    for (auto x : a.positions()) seen.insert(x % sq);
    return seen.size();
}

std::vector<std::uint64_t> checked_primes(const SupportSet& a) {
    std::vector<std::uint64_t> out;
    for (auto p : primes_up_to(a.size()))
        if (p * p <= a.size()) out.push_back(p);
    return out;
}

bool is_admissible_support(const SupportSet& a) {
    for (auto p : checked_primes(a))
        if (residue_count(p, a) >= p * p) return false;
    return true;
}

bool is_admissible_block(const Block& b) { return is_admissible_support(b.support()); }

AdmissibilityTracker::AdmissibilityTracker(std::size_t max_len) {
    for (auto p : primes_up_to(max_len)) {
        if (p * p > max_len) break;
        primes_.push_back({p * p, 0, std::vector<std::uint32_t>(p * p, 0)});
    }
}

bool AdmissibilityTracker::add(std::uint64_t pos) {
    for (auto& st : primes_) {
        if (st.hits[pos % st.square]++ == 0 && ++st.covered == st.square) ++saturated_;
    }
    return admissible();
}

void AdmissibilityTracker::remove(std::uint64_t pos) {
    for (auto& st : primes_) {
        if (--st.hits[pos % st.square] == 0 && st.covered-- == st.square) --saturated_;
    }
}

std::vector<Block> enumerate_admissible_blocks(std::size_t n, Alphabet alphabet, std::size_t cap) {
    if (n > cap)
        throw Error(ErrorCode::CapExceeded,
                    "enumeration cap: length " + std::to_string(n) + " exceeds " + std::to_string(cap));

    const std::vector<std::int8_t> order =
        alphabet == Alphabet::Binary ? std::vector<std::int8_t>{0, 1} : std::vector<std::int8_t>{0, 1, -1};
    std::vector<Block> out;
    std::vector<std::int8_t> word(n, 0);
    AdmissibilityTracker tracker(n);

    // Depth-first in symbol order yields lexicographic output; an inadmissible
    // prefix support is never extended since supersets stay inadmissible.
    auto visit = [&](auto&& self, std::size_t depth) -> void {
        if (depth == n) {
            out.emplace_back(word, alphabet);
            return;
        }
        for (auto s : order) {
            word[depth] = s;
            if (s == 0) {
                self(self, depth + 1);
                continue;
            }
            if (tracker.add(depth + 1)) self(self, depth + 1);
            tracker.remove(depth + 1);
        }
        word[depth] = 0;
    };
    visit(visit, 0);
    return out;
}

} // namespace mflab
