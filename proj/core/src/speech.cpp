#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <vector>

#include "assess/metrics.hpp"

namespace assess {

std::string normalize_phrase(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isspace(c)) {
      pending_space = true;
      continue;
    }
    if (std::ispunct(c)) continue;
    if (pending_space && !out.empty()) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t above = row[j];
      row[j] = std::min({above + 1, row[j - 1] + 1, diagonal + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diagonal = above;
    }
  }
  return row[b.size()];
}

double score_speech(std::string_view expected, std::string_view recognized) {
  const std::string e = normalize_phrase(expected);
  if (e.empty()) throw std::invalid_argument("score_speech: expected phrase is empty");
  const std::string r = normalize_phrase(recognized);
  const double longest = static_cast<double>(std::max(e.size(), r.size()));
  return 1.0 - static_cast<double>(edit_distance(e, r)) / longest;
}

}  // namespace assess
