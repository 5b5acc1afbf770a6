#pragma once

#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "trustlens/detail/bundled_lexicon.hpp"
#include "trustlens/detail/io.hpp"
#include "trustlens/error.hpp"

namespace trustlens::sentiment {

enum class Polarity { negative, neutral, positive };

inline constexpr double kDefaultDeadZone = 0.05;

/// Token polarity weights plus the negator set. Immutable once built.
class Lexicon {
 public:
  Lexicon() = default;

  Lexicon(std::unordered_map<std::string, double> entries,
          std::unordered_set<std::string> negators, std::string version = {})
      : entries_(std::move(entries)), negators_(std::move(negators)), version_(std::move(version)) {
    for (const auto& [token, weight] : entries_) check_weight(token, weight);
  }

  /// Parses `token<TAB>weight` lines. `#negator<TAB>token` declares a negator
  /// and `#version<TAB>v` names the lexicon; other `#` lines are comments.
  static Lexicon parse(std::istream& in) {
    std::unordered_map<std::string, double> entries;
    std::unordered_set<std::string> negators;
    std::string version;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto view = detail::chomp(line);
      if (detail::is_blank(view)) continue;
      const auto tab = view.find('\t');
      if (view.front() == '#') {
        if (tab == std::string_view::npos) continue;
        const auto key = view.substr(0, tab);
        const auto value = std::string(view.substr(tab + 1));
        if (key == "#negator") negators.insert(value);
        else if (key == "#version") version = value;
        continue;
      }
      if (tab == std::string_view::npos) throw ParseError("lexicon: expected token<TAB>weight", lineno);
      const auto token = std::string(view.substr(0, tab));
      double weight = 0.0;
      try {
        std::size_t used = 0;
        const auto text = std::string(view.substr(tab + 1));
        weight = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ParseError("lexicon: malformed weight for '" + token + "'", lineno);
      }
      check_weight(token, weight);
      entries[token] = weight;
    }
    return Lexicon(std::move(entries), std::move(negators), std::move(version));
  }

  static Lexicon load(const std::filesystem::path& path) {
    auto in = detail::open_input(path);
    return parse(in);
  }

  /// The lexicon compiled into the library (data/lexicon.tsv).
  static const Lexicon& bundled() {
    static const Lexicon lex = [] {
      std::istringstream in{std::string(detail::kBundledLexicon)};
      return parse(in);
    }();
    return lex;
  }

  const double* find(std::string_view token) const {
    auto it = entries_.find(std::string(token));
    return it == entries_.end() ? nullptr : &it->second;
  }

  bool is_negator(std::string_view token) const { return negators_.contains(std::string(token)); }

  std::size_t size() const noexcept { return entries_.size(); }
  const std::string& version() const noexcept { return version_; }

 private:
  static void check_weight(const std::string& token, double w) {
    if (!(w >= -1.0 && w <= 1.0)) {
      throw ValidationError("lexicon weight for '" + token + "' outside [-1,1]");
    }
  }

  std::unordered_map<std::string, double> entries_;
  std::unordered_set<std::string> negators_;
  std::string version_;
};

namespace detail {

inline bool is_word_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}

inline bool starts_with_ci(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    char c = s[i];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if (c != prefix[i]) return false;
  }
  return true;
}

}  // namespace detail

/// Lowercases, drops URLs and @mentions, keeps hashtag words without the
/// '#', removes apostrophes, and splits on anything that is not an ASCII
/// letter/digit. Non-ASCII bytes stay inside tokens.
inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const auto rest = text.substr(i);
    const bool at_chunk_start = i == 0 || text[i - 1] == ' ' || text[i - 1] == '\t' ||
                                text[i - 1] == '\n' || text[i - 1] == '\r';
    if (at_chunk_start && (detail::starts_with_ci(rest, "http://") ||
                           detail::starts_with_ci(rest, "https://") ||
                           detail::starts_with_ci(rest, "www."))) {
      flush();
      while (i < n && text[i] != ' ' && text[i] != '\t' && text[i] != '\n' && text[i] != '\r') ++i;
      continue;
    }
    const auto c = static_cast<unsigned char>(text[i]);
    if (c == '@') {
      flush();
      ++i;
      while (i < n && (detail::is_word_byte(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
      continue;
    }
    if (c == '\'') {
      ++i;
      continue;
    }
    // U+2019 RIGHT SINGLE QUOTATION MARK
    if (c == 0xE2 && i + 2 < n && static_cast<unsigned char>(text[i + 1]) == 0x80 &&
        static_cast<unsigned char>(text[i + 2]) == 0x99) {
      i += 3;
      continue;
    }
    if (detail::is_word_byte(c)) {
      current += (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
    } else {
      flush();
    }
    ++i;
  }
  flush();
  return tokens;
}

/// Mean weight of the matched tokens, each sign-flipped when the token right
/// before it is a negator. 0.0 when nothing matches.
inline double polarity(std::string_view text, const Lexicon& lexicon) {
  const auto tokens = tokenize(text);
  double sum = 0.0;
  std::size_t matched = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (lexicon.is_negator(tokens[i])) continue;
    const double* w = lexicon.find(tokens[i]);
    if (!w) continue;
    const bool negated = i > 0 && lexicon.is_negator(tokens[i - 1]);
    sum += negated ? -*w : *w;
    ++matched;
  }
  return matched == 0 ? 0.0 : sum / static_cast<double>(matched);
}

/// Three-way class with a neutral band of half-width `dead_zone`; values on
/// the band edge are neutral.
inline Polarity classify(double polarity_value, double dead_zone = kDefaultDeadZone) {
  if (!(dead_zone >= 0.0 && dead_zone < 1.0)) {
    throw ValidationError("dead_zone must lie in [0,1)");
  }
  if (polarity_value > dead_zone) return Polarity::positive;
  if (polarity_value < -dead_zone) return Polarity::negative;
  return Polarity::neutral;
}

struct PolarityCounts {
  std::uint64_t positive = 0;
  std::uint64_t neutral = 0;
  std::uint64_t negative = 0;

  std::uint64_t total() const noexcept { return positive + neutral + negative; }
  bool operator==(const PolarityCounts&) const = default;
};

template <typename Texts>
PolarityCounts count_polarities(const Texts& texts, const Lexicon& lexicon,
                                double dead_zone = kDefaultDeadZone) {
  PolarityCounts c;
  for (const auto& t : texts) {
    switch (classify(polarity(t, lexicon), dead_zone)) {
      case Polarity::positive: ++c.positive; break;
      case Polarity::neutral: ++c.neutral; break;
      case Polarity::negative: ++c.negative; break;
    }
  }
  return c;
}

}  // namespace trustlens::sentiment
