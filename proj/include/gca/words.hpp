#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gca {

using Letter = std::int32_t;

// Finite word over letters 0..size-1.  Thin wrapper over a vector so words
// stay cheap to slice and compare.
class Word {
  public:
    Word() = default;
    explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}
    static Word from_digits(const std::string& digits);

    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    Letter operator[](std::size_t i) const { return letters_[i]; }
    const std::vector<Letter>& letters() const { return letters_; }

    void push_back(Letter x) { letters_.push_back(x); }
    Word prefix(std::size_t n) const;
    Word suffix_from(std::size_t n) const;
    bool is_prefix_of(const Word& other) const;

    friend Word operator+(const Word& a, const Word& b);
    auto operator<=>(const Word&) const = default;

    // Digits for alphabets up to size 10, else comma-separated.
    std::string to_string() const;

  private:
    std::vector<Letter> letters_;
};

Word word_pow(const Word& base, std::size_t n);

// Eventually periodic right-infinite word: preperiod . period^infinity, in
// canonical form (primitive period, minimal preperiod).
class InfWord {
  public:
    InfWord() : period_(std::vector<Letter>{0}) {}
    InfWord(Word preperiod, Word period);
    static InfWord constant(Letter x) { return InfWord{Word{}, Word{std::vector<Letter>{x}}}; }

    const Word& preperiod() const { return preperiod_; }
    const Word& period() const { return period_; }

    Letter at(std::size_t i) const;
    Word prefix(std::size_t n) const;
    bool starts_with(const Word& w) const;
    // Drops the first n letters (canonical result).
    InfWord drop(std::size_t n) const;
    // Prepends a finite word.
    friend InfWord operator+(const Word& w, const InfWord& x);

    bool operator==(const InfWord& o) const {
        return preperiod_ == o.preperiod_ && period_ == o.period_;
    }
    auto operator<=>(const InfWord&) const = default;

    std::string to_string() const;

  private:
    Word preperiod_;
    Word period_;  // nonempty, primitive
    void canonicalize();
};

}  // namespace gca
