#include "survivordim/symbolic.hpp"

#include <limits>
#include <sstream>

#include "survivordim/errors.hpp"

namespace survivordim {

Word::Word(std::vector<int> symbols, int alphabet_size)
    : symbols_(std::move(symbols)), alphabet_size_(alphabet_size) {
  if (alphabet_size_ < 2) {
    throw DomainError("alphabet size must be at least 2, got " +
                      std::to_string(alphabet_size_));
  }
  for (int s : symbols_) {
    if (s < 1 || s > alphabet_size_) {
      throw RangeError("symbol " + std::to_string(s) + " outside [1, " +
                       std::to_string(alphabet_size_) + "]");
    }
  }
}

Word Word::empty(int alphabet_size) { return Word({}, alphabet_size); }

Word Word::parse(const std::string& text, int alphabet_size) {
  std::vector<int> symbols;
  if (text.find(',') != std::string::npos) {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) throw ParseError("empty symbol in word \"" + text + "\"");
      size_t pos = 0;
      int value = 0;
      try {
        value = std::stoi(item, &pos);
      } catch (const std::exception&) {
        throw ParseError("bad symbol \"" + item + "\" in word \"" + text + "\"");
      }
      if (pos != item.size()) {
        throw ParseError("bad symbol \"" + item + "\" in word \"" + text + "\"");
      }
      symbols.push_back(value);
    }
  } else {
    if (alphabet_size > 9) {
      throw ParseError("alphabets beyond 9 symbols need comma-separated words");
    }
    for (char c : text) {
      if (c < '0' || c > '9') {
        throw ParseError(std::string("bad digit '") + c + "' in word \"" + text + "\"");
      }
      symbols.push_back(c - '0');
    }
  }
  return Word(std::move(symbols), alphabet_size);
}

std::string Word::str() const {
  std::string out;
  const bool digits = alphabet_size_ <= 9;
  for (size_t i = 0; i < symbols_.size(); ++i) {
    if (!digits && i > 0) out += ',';
    out += std::to_string(symbols_[i]);
  }
  return out;
}

Word Word::prefix(int n) const {
  if (n < 0 || n > size()) {
    throw RangeError("prefix length " + std::to_string(n) + " outside [0, " +
                     std::to_string(size()) + "]");
  }
  return Word(std::vector<int>(symbols_.begin(), symbols_.begin() + n), alphabet_size_);
}

int minimal_period(const Word& w) {
  if (w.is_empty()) throw DomainError("minimal_period of the empty word");
  const int n = w.size();
  // Failure function: fail[i] = length of the longest proper border of w[0..i).
  std::vector<int> fail(static_cast<size_t>(n) + 1, 0);
  for (int i = 1; i < n; ++i) {
    int j = fail[i];
    while (j > 0 && w.symbol(i) != w.symbol(j)) j = fail[j];
    if (w.symbol(i) == w.symbol(j)) ++j;
    fail[i + 1] = j;
  }
  return n - fail[n];
}

HoleSpec::HoleSpec(Kind kind, Word generator)
    : kind_(kind), generator_(std::move(generator)) {}

HoleSpec HoleSpec::periodic(Word block) {
  if (block.is_empty()) throw DomainError("periodic hole needs a nonempty block");
  // Reduce to the primitive root: the infinite repetition has period p
  // exactly when p divides the block length and the block is p-periodic.
  const int p = minimal_period(block);
  if (block.size() % p == 0 && p < block.size()) {
    block = block.prefix(p);
  }
  return HoleSpec(Kind::Periodic, std::move(block));
}

HoleSpec HoleSpec::explicit_prefix(Word prefix) {
  if (prefix.is_empty()) throw DomainError("explicit hole prefix must be nonempty");
  return HoleSpec(Kind::ExplicitPrefix, std::move(prefix));
}

Word HoleSpec::prefix(int q) const {
  if (q < 1) throw RangeError("hole prefix length must be positive");
  if (kind_ == Kind::ExplicitPrefix) {
    if (q > generator_.size()) {
      throw RangeError("prefix length " + std::to_string(q) +
                       " exceeds the stored prefix of length " +
                       std::to_string(generator_.size()));
    }
    return generator_.prefix(q);
  }
  std::vector<int> symbols(static_cast<size_t>(q));
  const int block_len = generator_.size();
  for (int i = 0; i < q; ++i) symbols[static_cast<size_t>(i)] = generator_.symbol(i % block_len);
  return Word(std::move(symbols), generator_.alphabet_size());
}

int HoleSpec::max_prefix_length() const {
  return kind_ == Kind::Periodic ? std::numeric_limits<int>::max() : generator_.size();
}

std::optional<int> HoleSpec::period() const {
  if (kind_ == Kind::Periodic) return generator_.size();
  return std::nullopt;
}

}  // namespace survivordim
