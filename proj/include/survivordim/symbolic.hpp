// Finite words over {1,...,k}, hole address generators, periodicity.
#pragma once

#include <optional>
#include <string>
#include <vector>

namespace survivordim {

// Finite word over the alphabet {1,...,k}. Symbols are 1-based on every
// external surface. The empty word is the address of the whole space.
class Word {
public:
  Word(std::vector<int> symbols, int alphabet_size);
  static Word empty(int alphabet_size);

  // "1121" for k <= 9; comma-separated ("1,12,3") for larger alphabets.
  static Word parse(const std::string& text, int alphabet_size);
  std::string str() const;

  int alphabet_size() const { return alphabet_size_; }
  int size() const { return static_cast<int>(symbols_.size()); }
  bool is_empty() const { return symbols_.empty(); }
  int symbol(int i) const { return symbols_[static_cast<size_t>(i)]; }
  const std::vector<int>& symbols() const { return symbols_; }

  Word prefix(int n) const;  // first n symbols, n <= size

  bool operator==(const Word&) const = default;

private:
  std::vector<int> symbols_;
  int alphabet_size_;
};

// Smallest p with w[i] == w[i+p] for all valid i (failure-function period).
int minimal_period(const Word& w);

// Generator of the infinite hole address: either the periodic repetition of
// a block, or an explicit finite prefix declared non-periodic. A finite
// prefix cannot certify aperiodicity of the full address; the declaration
// is surfaced through is_periodic() rather than guessed.
class HoleSpec {
public:
  enum class Kind { Periodic, ExplicitPrefix };

  // The block is reduced to its primitive root (e.g. 1212 stores as 12).
  static HoleSpec periodic(Word block);
  static HoleSpec explicit_prefix(Word prefix);

  Kind kind() const { return kind_; }
  int alphabet_size() const { return generator_.alphabet_size(); }
  const Word& generator() const { return generator_; }

  // First q symbols of the address; RangeError past an explicit prefix.
  Word prefix(int q) const;
  // Largest admissible q (unbounded for periodic specs).
  int max_prefix_length() const;

  bool is_periodic() const { return kind_ == Kind::Periodic; }
  std::optional<int> period() const;

  bool operator==(const HoleSpec&) const = default;

private:
  HoleSpec(Kind kind, Word generator);
  Kind kind_;
  Word generator_;
};

}  // namespace survivordim
