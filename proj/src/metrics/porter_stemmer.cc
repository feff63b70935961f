/* Copyright 2026 The capharness Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "capharness/metrics/porter_stemmer.h"

#include <algorithm>

namespace capharness {
namespace {

// b[0..k] is the word under consideration; j marks the stem end after a
// successful Ends().
class Stemmer {
 public:
  explicit Stemmer(std::string_view word) : b_(word), k_(static_cast<int>(word.size()) - 1) {}

  std::string Run() {
    if (k_ <= 1) return b_;
    Step1ab();
    if (k_ > 0) {
      Step1c();
      Step2();
      Step3();
      Step4();
      Step5();
    }
    return b_.substr(0, k_ + 1);
  }

 private:
  bool Cons(int i) const {
    switch (b_[i]) {
      case 'a':
      case 'e':
      case 'i':
      case 'o':
      case 'u':
        return false;
      case 'y':
        return i == 0 ? true : !Cons(i - 1);
      default:
        return true;
    }
  }

  // Number of VC sequences in b[0..j].
  int M() const {
    int n = 0;
    int i = 0;
    for (;;) {
      if (i > j_) return n;
      if (!Cons(i)) break;
      ++i;
    }
    ++i;
    for (;;) {
      for (;;) {
        if (i > j_) return n;
        if (Cons(i)) break;
        ++i;
      }
      ++i;
      ++n;
      for (;;) {
        if (i > j_) return n;
        if (!Cons(i)) break;
        ++i;
      }
      ++i;
    }
  }

  bool VowelInStem() const {
    for (int i = 0; i <= j_; ++i) {
      if (!Cons(i)) return true;
    }
    return false;
  }

  bool DoubleC(int j) const {
    if (j < 1) return false;
    if (b_[j] != b_[j - 1]) return false;
    return Cons(j);
  }

  // consonant-vowel-consonant ending at i, last consonant not w, x or y.
  bool Cvc(int i) const {
    if (i < 2 || !Cons(i) || Cons(i - 1) || !Cons(i - 2)) return false;
    const char ch = b_[i];
    return ch != 'w' && ch != 'x' && ch != 'y';
  }

  bool Ends(std::string_view s) {
    const int length = static_cast<int>(s.size());
    if (length > k_ + 1) return false;
    if (b_.compare(static_cast<std::size_t>(k_ - length + 1), s.size(), s) != 0) return false;
    j_ = k_ - length;
    return true;
  }

  void SetTo(std::string_view s) {
    b_.replace(static_cast<std::size_t>(j_ + 1), std::string::npos, s);
    k_ = j_ + static_cast<int>(s.size());
  }

  void R(std::string_view s) {
    if (M() > 0) SetTo(s);
  }

  void Step1ab() {
    if (b_[k_] == 's') {
      if (Ends("sses")) {
        k_ -= 2;
      } else if (Ends("ies")) {
        SetTo("i");
      } else if (b_[k_ - 1] != 's') {
        --k_;
      }
    }
    if (Ends("eed")) {
      if (M() > 0) --k_;
    } else if ((Ends("ed") || Ends("ing")) && VowelInStem()) {
      k_ = j_;
      if (Ends("at")) {
        SetTo("ate");
      } else if (Ends("bl")) {
        SetTo("ble");
      } else if (Ends("iz")) {
        SetTo("ize");
      } else if (DoubleC(k_)) {
        --k_;
        const char ch = b_[k_];
        if (ch == 'l' || ch == 's' || ch == 'z') ++k_;
      } else {
        j_ = k_;
        if (M() == 1 && Cvc(k_)) SetTo("e");
      }
    }
  }

  void Step1c() {
    if (Ends("y") && VowelInStem()) b_[k_] = 'i';
  }

  // Tries each (suffix, replacement) in order; stops at the first suffix
  // that matches whether or not the measure allows the replacement.
  template <std::size_t N>
  void Replace(const std::pair<std::string_view, std::string_view> (&rules)[N]) {
    for (const auto& [suffix, replacement] : rules) {
      if (Ends(suffix)) {
        R(replacement);
        return;
      }
    }
  }

  void Step2() {
    switch (b_[k_ - 1]) {
      case 'a': {
        static constexpr std::pair<std::string_view, std::string_view> kRules[] = {
            {"ational", "ate"}, {"tional", "tion"}};
        Replace(kRules);
        break;
      }
      case 'c': {
        static constexpr std::pair<std::string_view, std::string_view> kRules[] = {
            {"enci", "ence"}, {"anci", "ance"}};
        Replace(kRules);
        break;
      }
      case 'e': {
        static constexpr std::pair<std::string_view, std::string_view> kRules[] = {
            {"izer", "ize"}};
        Replace(kRules);
        break;
      }
      case 'l': {
        static constexpr std::pair<std::string_view, std::string_view> kRules[] = {
            {"bli", "ble"}, {"alli", "al"}, {"entli", "ent"}, {"eli", "e"}, {"ousli", "ous"}};
        Replace(kRules);
        break;
      }
      case 'o': {
        static constexpr std::pair<std::string_view, std::string_view> kRules[] = {
            {"ization", "ize"}, {"ation", "ate"}, {"ator", "ate"}};
        Replace(kRules);
        break;
      }
      case 's': {
        static constexpr std::pair<std::string_view, std::string_view> kRules[] = {
            {"alism", "al"}, {"iveness", "ive"}, {"fulness", "ful"}, {"ousness", "ous"}};
        Replace(kRules);
        break;
      }
      case 't': {
        static constexpr std::pair<std::string_view, std::string_view> kRules[] = {
            {"aliti", "al"}, {"iviti", "ive"}, {"biliti", "ble"}};
        Replace(kRules);
        break;
      }
      case 'g': {
        static constexpr std::pair<std::string_view, std::string_view> kRules[] = {
            {"logi", "log"}};
        Replace(kRules);
        break;
      }
      default:
        break;
    }
  }

  void Step3() {
    switch (b_[k_]) {
      case 'e': {
        static constexpr std::pair<std::string_view, std::string_view> kRules[] = {
            {"icate", "ic"}, {"ative", ""}, {"alize", "al"}};
        Replace(kRules);
        break;
      }
      case 'i': {
        static constexpr std::pair<std::string_view, std::string_view> kRules[] = {
            {"iciti", "ic"}};
        Replace(kRules);
        break;
      }
      case 'l': {
        static constexpr std::pair<std::string_view, std::string_view> kRules[] = {
            {"ical", "ic"}, {"ful", ""}};
        Replace(kRules);
        break;
      }
      case 's': {
        static constexpr std::pair<std::string_view, std::string_view> kRules[] = {
            {"ness", ""}};
        Replace(kRules);
        break;
      }
      default:
        break;
    }
  }

  void Step4() {
    bool matched = false;
    switch (b_[k_ - 1]) {
      case 'a':
        matched = Ends("al");
        break;
      case 'c':
        matched = Ends("ance") || Ends("ence");
        break;
      case 'e':
        matched = Ends("er");
        break;
      case 'i':
        matched = Ends("ic");
        break;
      case 'l':
        matched = Ends("able") || Ends("ible");
        break;
      case 'n':
        matched = Ends("ant") || Ends("ement") || Ends("ment") || Ends("ent");
        break;
      case 'o':
        matched = (Ends("ion") && j_ >= 0 && (b_[j_] == 's' || b_[j_] == 't')) || Ends("ou");
        break;
      case 's':
        matched = Ends("ism");
        break;
      case 't':
        matched = Ends("ate") || Ends("iti");
        break;
      case 'u':
        matched = Ends("ous");
        break;
      case 'v':
        matched = Ends("ive");
        break;
      case 'z':
        matched = Ends("ize");
        break;
      default:
        break;
    }
    if (matched && M() > 1) k_ = j_;
  }

  void Step5() {
    j_ = k_;
    if (b_[k_] == 'e') {
      const int a = M();
      if (a > 1 || (a == 1 && !Cvc(k_ - 1))) --k_;
    }
    if (b_[k_] == 'l' && DoubleC(k_) && M() > 1) --k_;
  }

  std::string b_;
  int k_;
  int j_ = 0;
};

}  // namespace

std::string PorterStem(std::string_view word) {
  const bool ascii_lower =
      std::all_of(word.begin(), word.end(), [](char c) { return c >= 'a' && c <= 'z'; });
  if (!ascii_lower || word.size() <= 2) return std::string(word);
  return Stemmer(word).Run();
}

}  // namespace capharness
