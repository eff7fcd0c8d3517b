// Reduced words in the free group on two generators y1, y2, the Fibonacci
// automorphism, the Nielsen commutator and evaluation into Sp(2, R).
//
// Indexing: fibonacci_word(0) = y1, fibonacci_word(1) = y2,
// fibonacci_word(2) = y1 y2, fibonacci_word(3) = y2 y1 y2, ...
//
// Text form: letters separated by whitespace, an apostrophe marks the
// inverse (`y1 y2 y1' y2'`), the empty word is `e`.
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qf/symplectic.hpp"

namespace qf {

enum class Generator : std::uint8_t { y1 = 1, y2 = 2 };

struct Letter {
  Generator generator = Generator::y1;
  bool inverted = false;

  constexpr Letter inverse() const { return {generator, !inverted}; }
  constexpr int exponent() const { return inverted ? -1 : 1; }
  constexpr bool cancels(const Letter& other) const {
    return generator == other.generator && inverted != other.inverted;
  }

  friend bool operator==(const Letter&, const Letter&) = default;
};

inline constexpr Letter y1{Generator::y1, false};
inline constexpr Letter y2{Generator::y2, false};
inline constexpr Letter y1_inv{Generator::y1, true};
inline constexpr Letter y2_inv{Generator::y2, true};

/// A freely reduced word; every constructor and operation keeps it reduced.
class Word {
 public:
  Word() = default;

  /// Reduces an arbitrary letter list (stack cancellation, so the result is
  /// independent of the order in which adjacent pairs are cancelled).
  static Word reduce(std::span<const Letter> letters) {
    Word w;
    w.letters_.reserve(letters.size());
    for (const Letter& l : letters) w.push_back(l);
    return w;
  }

  static Word reduce(std::initializer_list<Letter> letters) {
    return reduce(std::span<const Letter>(letters.begin(), letters.size()));
  }

  static Word generator(Generator g) { return reduce({Letter{g, false}}); }

  /// Parses the text form (`y1 y2'`, `e` for the identity).
  static Word parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<Letter> letters;
    std::string token;
    bool saw_identity = false;
    while (in >> token) {
      if (token == "e") {
        saw_identity = true;
        continue;
      }
      bool inv = false;
      if (!token.empty() && token.back() == '\'') {
        inv = true;
        token.pop_back();
      }
      if (token == "y1") {
        letters.push_back({Generator::y1, inv});
      } else if (token == "y2") {
        letters.push_back({Generator::y2, inv});
      } else {
        throw std::invalid_argument("unknown letter in word: '" + token + "'");
      }
    }
    if (saw_identity && !letters.empty()) {
      throw std::invalid_argument("'e' cannot be mixed with other letters");
    }
    return reduce(letters);
  }

  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  std::span<const Letter> letters() const { return letters_; }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }

  Word inverse() const {
    Word w;
    w.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
      w.letters_.push_back(it->inverse());
    }
    return w;
  }

  /// First `n` letters (a prefix of a reduced word is reduced).
  Word prefix(std::size_t n) const {
    Word w;
    n = std::min(n, letters_.size());
    w.letters_.assign(letters_.begin(), letters_.begin() + n);
    return w;
  }

  Word& operator*=(const Word& rhs) {
    letters_.reserve(letters_.size() + rhs.letters_.size());
    for (const Letter& l : rhs.letters_) push_back(l);
    return *this;
  }

  friend Word operator*(Word lhs, const Word& rhs) { return lhs *= rhs; }

  std::string to_string() const {
    if (letters_.empty()) return "e";
    std::string out;
    out.reserve(letters_.size() * 4);
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (i != 0) out += ' ';
      out += letters_[i].generator == Generator::y1 ? "y1" : "y2";
      if (letters_[i].inverted) out += '\'';
    }
    return out;
  }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  void push_back(const Letter& l) {
    if (!letters_.empty() && letters_.back().cancels(l)) {
      letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }

  std::vector<Letter> letters_;
};

/// Integer power of a word (negative powers use the inverse).
inline Word power(const Word& w, int n) {
  const Word base = n < 0 ? w.inverse() : w;
  Word out;
  for (int i = 0; i < std::abs(n); ++i) out *= base;
  return out;
}

/// Homomorphism of F2 given by the images of the generators. Invertibility
/// is not checked for user-supplied maps.
struct Automorphism {
  Word image_y1 = Word::generator(Generator::y1);
  Word image_y2 = Word::generator(Generator::y2);

  static Automorphism identity() { return {}; }

  /// y1 -> y2, y2 -> y1 y2.
  static Automorphism fibonacci() {
    return {Word::reduce({y2}), Word::reduce({y1, y2})};
  }

  /// y1 -> y2 y1^-1, y2 -> y1.
  static Automorphism fibonacci_inverse() {
    return {Word::reduce({y2, y1_inv}), Word::reduce({y1})};
  }

  const Word& image(Generator g) const {
    return g == Generator::y1 ? image_y1 : image_y2;
  }
};

/// Extends the generator images homomorphically to `w`.
inline Word apply_automorphism(const Automorphism& phi, const Word& w) {
  Word out;
  for (const Letter& l : w.letters()) {
    const Word& img = phi.image(l.generator);
    out *= l.inverted ? img.inverse() : img;
  }
  return out;
}

/// Generator images of phi^n, built one power at a time from the images of
/// the previous power: phi^(k+1)(y) = phi^k(phi(y)).
inline Automorphism automorphism_power(const Automorphism& phi, unsigned n) {
  Automorphism acc = Automorphism::identity();
  for (unsigned k = 0; k < n; ++k) {
    acc = Automorphism{apply_automorphism(acc, phi.image_y1),
                       apply_automorphism(acc, phi.image_y2)};
  }
  return acc;
}

inline Word apply_automorphism_power(const Automorphism& phi, unsigned n,
                                     const Word& w) {
  return apply_automorphism(automorphism_power(phi, n), w);
}

/// (phi_fibo)^n (y1). Lengths run 1, 1, 2, 3, 5, 8, ...
inline Word fibonacci_word(unsigned n) {
  // (w1, w2) <- (w2, w1 w2) is the generator-image recursion of phi_fibo.
  Word w1 = Word::generator(Generator::y1);
  Word w2 = Word::generator(Generator::y2);
  for (unsigned k = 0; k < n; ++k) {
    Word next = w1 * w2;
    w1 = std::move(w2);
    w2 = std::move(next);
  }
  return w1;
}

/// u v u^-1 v^-1, reduced.
inline Word commutator(const Word& u, const Word& v) {
  return u * v * u.inverse() * v.inverse();
}

/// The Nielsen commutator y1 y2 y1^-1 y2^-1.
inline Word nielsen_commutator() {
  return Word::reduce({y1, y2, y1_inv, y2_inv});
}

/// phi(K) = w K^sign w^-1.
struct NielsenForm {
  Word conjugator;
  int sign = 1;
};

inline constexpr std::size_t kNielsenSearchBound = 64;

/// Finds w and the sign in phi^n(K) = w K^(+-1) w^-1 by searching conjugators
/// built from prefixes (up to kNielsenSearchBound letters) of the images of
/// y1, y2 and K. A reduced conjugate either keeps w as a prefix or cancels
/// part of K^(+-1) into it; the second case is covered by appending the
/// inverse of a leading piece of K^(+-1) to each prefix.
///
/// Returns nullopt when no form is found within the bound. That is a search
/// limit, not a counterexample to Nielsen's theorem.
inline std::optional<NielsenForm> nielsen_image_form(const Automorphism& phi,
                                                     unsigned n = 1) {
  const Automorphism phi_n = automorphism_power(phi, n);
  const Word kc = nielsen_commutator();
  const Word target = apply_automorphism(phi_n, kc);

  std::vector<Word> sources{target, phi_n.image_y1, phi_n.image_y2,
                            phi_n.image_y1.inverse(), phi_n.image_y2.inverse()};
  for (int sign : {1, -1}) {
    const Word ks = power(kc, sign);
    for (const Word& src : sources) {
      const std::size_t top = std::min(src.length(), kNielsenSearchBound);
      for (std::size_t len = 0; len <= top; ++len) {
        const Word p = src.prefix(len);
        for (std::size_t cut = 0; cut < ks.length(); ++cut) {
          const Word w = p * ks.prefix(cut).inverse();
          if (w * ks * w.inverse() == target) return NielsenForm{w, sign};
        }
      }
    }
  }
  return std::nullopt;
}

/// Induced homomorphism F2 -> Sp(2, R): letters map left to right onto
/// factors left to right (y1 y2 -> g1 * g2), inverse letters onto inverse
/// matrices. No determinant check; see SymplecticMatrix.
inline SymplecticMatrix evaluate(const Word& w, const SymplecticMatrix& g1,
                                 const SymplecticMatrix& g2) {
  const SymplecticMatrix g1i = g1.inverse();
  const SymplecticMatrix g2i = g2.inverse();
  SymplecticMatrix acc = SymplecticMatrix::identity();
  for (const Letter& l : w.letters()) {
    if (l.generator == Generator::y1) {
      acc = acc * (l.inverted ? g1i : g1);
    } else {
      acc = acc * (l.inverted ? g2i : g2);
    }
  }
  return acc;
}

}  // namespace qf
