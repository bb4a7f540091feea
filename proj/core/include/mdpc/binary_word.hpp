#pragma once

#include <cstdint>
#include <vector>

namespace mdpc {

// Word over GF(2), stored as the sorted list of one-positions.
class BinaryWord {
public:
    BinaryWord() = default;

    // Validates: support sorted, no duplicates, entries < length.
    BinaryWord(std::uint32_t length, std::vector<std::uint32_t> support);

    static BinaryWord zero(std::uint32_t length) { return BinaryWord(length, {}); }

    // From a 0/1 byte mask.
    static BinaryWord from_bits(const std::vector<std::uint8_t>& bits);

    std::uint32_t length() const { return length_; }
    std::uint32_t weight() const { return static_cast<std::uint32_t>(support_.size()); }
    const std::vector<std::uint32_t>& support() const { return support_; }
    bool is_zero() const { return support_.empty(); }

    std::vector<std::uint8_t> to_bits() const;

    BinaryWord operator^(const BinaryWord& other) const;
    bool operator==(const BinaryWord& other) const = default;

private:
    std::uint32_t length_ = 0;
    std::vector<std::uint32_t> support_;
};

// Throws ValidationError unless `support` is strictly increasing with entries < length.
void check_support(std::uint32_t length, const std::vector<std::uint32_t>& support,
                   const char* what);

}  // namespace mdpc
