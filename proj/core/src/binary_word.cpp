#include "mdpc/binary_word.hpp"

#include <string>
#include <utility>

#include "mdpc/errors.hpp"

namespace mdpc {

void check_support(std::uint32_t length, const std::vector<std::uint32_t>& support,
                   const char* what) {
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (support[i] >= length)
            throw ValidationError(std::string(what) + ": entry " + std::to_string(support[i]) +
                                  " out of range [0, " + std::to_string(length) + ")");
        if (i > 0 && support[i] <= support[i - 1])
            throw ValidationError(std::string(what) + ": support not strictly increasing at index " +
                                  std::to_string(i));
    }
}

BinaryWord::BinaryWord(std::uint32_t length, std::vector<std::uint32_t> support)
    : length_(length), support_(std::move(support)) {
    check_support(length_, support_, "word");
}

BinaryWord BinaryWord::from_bits(const std::vector<std::uint8_t>& bits) {
    std::vector<std::uint32_t> support;
    for (std::uint32_t i = 0; i < bits.size(); ++i)
        if (bits[i] & 1) support.push_back(i);
    return BinaryWord(static_cast<std::uint32_t>(bits.size()), std::move(support));
}

std::vector<std::uint8_t> BinaryWord::to_bits() const {
    std::vector<std::uint8_t> bits(length_, 0);
    for (auto i : support_) bits[i] = 1;
    return bits;
}

BinaryWord BinaryWord::operator^(const BinaryWord& other) const {
    if (length_ != other.length_) throw ValidationError("xor: length mismatch");
    std::vector<std::uint32_t> out;
    out.reserve(support_.size() + other.support_.size());
    std::size_t a = 0, b = 0;
    while (a < support_.size() && b < other.support_.size()) {
        if (support_[a] < other.support_[b]) out.push_back(support_[a++]);
        else if (support_[a] > other.support_[b]) out.push_back(other.support_[b++]);
        else { ++a; ++b; }
    }
    while (a < support_.size()) out.push_back(support_[a++]);
    while (b < other.support_.size()) out.push_back(other.support_[b++]);
    return BinaryWord(length_, std::move(out));
}

}  // namespace mdpc
