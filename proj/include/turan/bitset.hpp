#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace turan {

using Word = std::uint64_t;

inline std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

inline std::size_t popcount(std::span<const Word> a)
{
    std::size_t c = 0;
    for (Word w : a)
        c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

inline std::size_t popcount_and(std::span<const Word> a, std::span<const Word> b)
{
    std::size_t c = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        c += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
    return c;
}

inline bool test_bit(std::span<const Word> a, std::size_t i) { return (a[i >> 6] >> (i & 63)) & 1U; }

template <typename F>
void for_each_bit(std::span<const Word> a, F&& f)
{
    for (std::size_t w = 0; w < a.size(); ++w) {
        Word x = a[w];
        while (x) {
            f(w * 64 + static_cast<std::size_t>(std::countr_zero(x)));
            x &= x - 1;
        }
    }
}

/// Fixed-size dynamic bitset over 0..size-1.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t size) : size_(size), words_(words_for(size), 0) {}

    std::size_t size() const { return size_; }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
    void set(std::size_t i) { words_[i >> 6] |= Word(1) << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(Word(1) << (i & 63)); }
    void flip(std::size_t i) { words_[i >> 6] ^= Word(1) << (i & 63); }
    void set_all()
    {
        for (auto& w : words_)
            w = ~Word(0);
        trim();
    }
    void clear()
    {
        for (auto& w : words_)
            w = 0;
    }
    std::size_t count() const { return popcount(words_); }
    bool any() const
    {
        for (Word w : words_)
            if (w)
                return true;
        return false;
    }

    std::span<const Word> words() const { return words_; }
    std::span<Word> words() { return words_; }

    std::vector<std::size_t> members() const
    {
        std::vector<std::size_t> out;
        for_each_bit(words_, [&](std::size_t i) { out.push_back(i); });
        return out;
    }

    static Bitset from_mask(std::size_t size, std::uint64_t mask)
    {
        Bitset b(size);
        if (!b.words_.empty())
            b.words_[0] = mask;
        b.trim();
        return b;
    }

    friend bool operator==(const Bitset&, const Bitset&) = default;

private:
    void trim()
    {
        if (size_ % 64 != 0 && !words_.empty())
            words_.back() &= (Word(1) << (size_ % 64)) - 1;
    }

    std::size_t size_ = 0;
    std::vector<Word> words_;
};

} // namespace turan
