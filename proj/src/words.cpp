#include "gca/words.hpp"

#include <algorithm>
#include <stdexcept>

namespace gca {

Word Word::from_digits(const std::string& digits) {
    std::vector<Letter> out;
    out.reserve(digits.size());
    for (char c : digits) {
        if (c < '0' || c > '9') throw std::invalid_argument("Word: non-digit letter");
        out.push_back(c - '0');
    }
    return Word{std::move(out)};
}

Word Word::prefix(std::size_t n) const {
    return Word{std::vector<Letter>(letters_.begin(), letters_.begin() + std::min(n, size()))};
}

Word Word::suffix_from(std::size_t n) const {
    if (n >= size()) return Word{};
    return Word{std::vector<Letter>(letters_.begin() + n, letters_.end())};
}

bool Word::is_prefix_of(const Word& other) const {
    if (size() > other.size()) return false;
    return std::equal(letters_.begin(), letters_.end(), other.letters_.begin());
}

Word operator+(const Word& a, const Word& b) {
    std::vector<Letter> out = a.letters_;
    out.insert(out.end(), b.letters_.begin(), b.letters_.end());
    return Word{std::move(out)};
}

std::string Word::to_string() const {
    bool digits = std::all_of(letters_.begin(), letters_.end(),
                              [](Letter x) { return x >= 0 && x < 10; });
    std::string out;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (digits) {
            out.push_back(static_cast<char>('0' + letters_[i]));
        } else {
            if (i) out.push_back(',');
            out += std::to_string(letters_[i]);
        }
    }
    return out;
}

Word word_pow(const Word& base, std::size_t n) {
    Word out;
    for (std::size_t i = 0; i < n; ++i) out = out + base;
    return out;
}

InfWord::InfWord(Word preperiod, Word period)
    : preperiod_(std::move(preperiod)), period_(std::move(period)) {
    if (period_.empty()) throw std::invalid_argument("InfWord: empty period");
    canonicalize();
}

void InfWord::canonicalize() {
    // Primitive period: smallest divisor-length prefix that tiles it.
    for (std::size_t d = 1; d <= period_.size(); ++d) {
        if (period_.size() % d != 0) continue;
        bool tiles = true;
        for (std::size_t i = d; i < period_.size() && tiles; ++i)
            tiles = period_[i] == period_[i % d];
        if (tiles) {
            period_ = period_.prefix(d);
            break;
        }
    }
    // Minimal preperiod: absorb trailing letters that match the period tail.
    while (!preperiod_.empty() &&
           preperiod_[preperiod_.size() - 1] == period_[period_.size() - 1]) {
        std::vector<Letter> rot(period_.letters());
        std::rotate(rot.begin(), rot.end() - 1, rot.end());
        period_ = Word{std::move(rot)};
        std::vector<Letter> pre(preperiod_.letters());
        pre.pop_back();
        preperiod_ = Word{std::move(pre)};
    }
}

Letter InfWord::at(std::size_t i) const {
    if (i < preperiod_.size()) return preperiod_[i];
    return period_[(i - preperiod_.size()) % period_.size()];
}

Word InfWord::prefix(std::size_t n) const {
    std::vector<Letter> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(at(i));
    return Word{std::move(out)};
}

bool InfWord::starts_with(const Word& w) const {
    for (std::size_t i = 0; i < w.size(); ++i)
        if (at(i) != w[i]) return false;
    return true;
}

InfWord InfWord::drop(std::size_t n) const {
    if (n <= preperiod_.size()) return InfWord{preperiod_.suffix_from(n), period_};
    std::size_t k = (n - preperiod_.size()) % period_.size();
    std::vector<Letter> rot(period_.letters());
    std::rotate(rot.begin(), rot.begin() + k, rot.end());
    return InfWord{Word{}, Word{std::move(rot)}};
}

InfWord operator+(const Word& w, const InfWord& x) {
    return InfWord{w + x.preperiod_, x.period_};
}

std::string InfWord::to_string() const {
    std::string out;
    if (!preperiod_.empty()) out += preperiod_.to_string() + ".";
    out += "(" + period_.to_string() + ")^inf";
    return out;
}

}  // namespace gca
