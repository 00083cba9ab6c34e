#pragma once

#include <cctype>
#include <string>
#include <vector>

namespace dart {

inline bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline bool is_ascii_punct(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return u < 0x80 && std::ispunct(u);
}

inline std::string lower_ascii(const std::string& s) {
  std::string out = s;
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

// Lowercase, trim, collapse internal whitespace runs to single spaces and
// strip punctuation from both ends. Bytes >= 0x80 pass through untouched.
inline std::string normalize(const std::string& s) {
  std::string t;
  t.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (is_ascii_space(c)) {
      if (!t.empty()) pending_space = true;
      continue;
    }
    if (pending_space) {
      t += ' ';
      pending_space = false;
    }
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    t += c;
  }
  size_t b = 0, e = t.size();
  while (b < e && (is_ascii_punct(t[b]) || t[b] == ' ')) ++b;
  while (e > b && (is_ascii_punct(t[e - 1]) || t[e - 1] == ' ')) --e;
  return t.substr(b, e - b);
}

inline std::vector<std::string> split(const std::string& s, char delim) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t pos = s.find(delim, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

inline std::vector<std::string> tokenize(const std::string& normalized) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : normalized) {
    if (c == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// Splits identifier-style names at lower-to-upper boundaries and at
// non-alphanumeric characters, lowercasing the pieces:
// "isLeaderOf" -> {is, leader, of}, "music_subgenre" -> {music, subgenre}.
inline std::vector<std::string> camel_split(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  char prev = '\0';
  for (char c : s) {
    bool alnum = std::isalnum(static_cast<unsigned char>(c)) != 0 ||
                 static_cast<unsigned char>(c) >= 0x80;
    if (!alnum) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
      prev = '\0';
      continue;
    }
    if (c >= 'A' && c <= 'Z' && prev >= 'a' && prev <= 'z') {
      out.push_back(cur);
      cur.clear();
    }
    prev = c;
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    cur += c;
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace dart
