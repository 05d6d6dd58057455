#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace betagibbs {

// Digit strings: binary words over {0,1} are beta-expansion prefixes,
// ternary words over {0,1,2} index the matrix family.
using BinaryWord = std::string;
using TernaryWord = std::string;

inline void require_alphabet(std::string_view w, char max_digit, const char* what) {
    for (char ch : w)
        if (ch < '0' || ch > max_digit)
            throw std::domain_error(std::string(what) + ": bad digit in '" + std::string(w) + "'");
}

inline void require_binary(std::string_view w) { require_alphabet(w, '1', "binary word"); }
inline void require_ternary(std::string_view w) { require_alphabet(w, '2', "ternary word"); }

// The block code A1 = {0, 10, 1100}; every admissible word factors from the
// left into these blocks plus a residue in {1, 11, 110}.
enum class Block : std::uint8_t { Zero = 0, Ten = 1, ElevenHundred = 2 };

using BlockWord = std::vector<Block>;

inline std::string_view block_digits(Block b) {
    switch (b) {
        case Block::Zero: return "0";
        case Block::Ten: return "10";
        case Block::ElevenHundred: return "1100";
    }
    throw std::logic_error("bad block");
}

inline std::size_t block_length(Block b) { return block_digits(b).size(); }

inline std::string blocks_to_digits(const BlockWord& blocks) {
    std::string out;
    for (Block b : blocks) out += block_digits(b);
    return out;
}

enum class Residue : std::uint8_t { None, One, OneOne, OneOneZero };

inline std::string_view residue_digits(Residue r) {
    switch (r) {
        case Residue::None: return "";
        case Residue::One: return "1";
        case Residue::OneOne: return "11";
        case Residue::OneOneZero: return "110";
    }
    throw std::logic_error("bad residue");
}

}  // namespace betagibbs
