#include "divrank/text.hpp"

#include <cctype>
#include <cstring>
#include <fstream>
#include <sstream>

#include "divrank/errors.hpp"

namespace divrank {

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::string current;
    for (unsigned char ch : text) {
        if (std::isalnum(ch)) {
            current.push_back(static_cast<char>(std::tolower(ch)));
        } else if (!current.empty()) {
            if (current.size() >= 2) tokens.push_back(current);
            current.clear();
        }
    }
    if (current.size() >= 2) tokens.push_back(current);
    return tokens;
}

namespace {

// Porter (1980) stemmer, following the reference ANSI C implementation
// including its two documented departures from the published algorithm
// (-bli -> -ble and -logi -> -log in step 2).
class PorterStemmer {
public:
    std::string run(const std::string& word) {
        b_ = word;
        k_ = static_cast<int>(b_.size()) - 1;
        if (k_ <= 1) return b_; // short words are left alone
        step1ab();
        step1c();
        step2();
        step3();
        step4();
        step5();
        b_.resize(static_cast<std::size_t>(k_) + 1);
        return b_;
    }

private:
    std::string b_;
    int k_ = 0;
    int j_ = 0;

    bool isConsonant(int i) const {
        switch (b_[static_cast<std::size_t>(i)]) {
            case 'a': case 'e': case 'i': case 'o': case 'u':
                return false;
            case 'y':
                return i == 0 ? true : !isConsonant(i - 1);
            default:
                return true;
        }
    }

    // Number of consonant-vowel sequences in b[0..j], the "measure" m.
    int measure() const {
        int n = 0;
        int i = 0;
        for (;;) {
            if (i > j_) return n;
            if (!isConsonant(i)) break;
            ++i;
        }
        ++i;
        for (;;) {
            for (;;) {
                if (i > j_) return n;
                if (isConsonant(i)) break;
                ++i;
            }
            ++i;
            ++n;
            for (;;) {
                if (i > j_) return n;
                if (!isConsonant(i)) break;
                ++i;
            }
            ++i;
        }
    }

    bool vowelInStem() const {
        for (int i = 0; i <= j_; ++i)
            if (!isConsonant(i)) return true;
        return false;
    }

    bool doubleConsonant(int i) const {
        if (i < 1) return false;
        if (b_[static_cast<std::size_t>(i)] != b_[static_cast<std::size_t>(i - 1)]) return false;
        return isConsonant(i);
    }

    // consonant-vowel-consonant ending at i, last consonant not w, x or y.
    bool cvc(int i) const {
        if (i < 2 || !isConsonant(i) || isConsonant(i - 1) || !isConsonant(i - 2)) return false;
        const char ch = b_[static_cast<std::size_t>(i)];
        return ch != 'w' && ch != 'x' && ch != 'y';
    }

    bool ends(const char* suffix) {
        const int len = static_cast<int>(std::strlen(suffix));
        if (len > k_ + 1) return false;
        if (b_.compare(static_cast<std::size_t>(k_ - len + 1), static_cast<std::size_t>(len),
                       suffix) != 0)
            return false;
        j_ = k_ - len;
        return true;
    }

    void setTo(const char* replacement) {
        const int len = static_cast<int>(std::strlen(replacement));
        b_.replace(static_cast<std::size_t>(j_ + 1), static_cast<std::size_t>(k_ - j_),
                   replacement);
        k_ = j_ + len;
    }

    void replaceIfStem(const char* replacement) {
        if (measure() > 0) setTo(replacement);
    }

    void step1ab() {
        if (b_[static_cast<std::size_t>(k_)] == 's') {
            if (ends("sses")) {
                k_ -= 2;
            } else if (ends("ies")) {
                setTo("i");
            } else if (b_[static_cast<std::size_t>(k_ - 1)] != 's') {
                --k_;
            }
        }
        if (ends("eed")) {
            if (measure() > 0) --k_;
        } else if ((ends("ed") || ends("ing")) && vowelInStem()) {
            k_ = j_;
            if (ends("at")) {
                setTo("ate");
            } else if (ends("bl")) {
                setTo("ble");
            } else if (ends("iz")) {
                setTo("ize");
            } else if (doubleConsonant(k_)) {
                --k_;
                const char ch = b_[static_cast<std::size_t>(k_)];
                if (ch == 'l' || ch == 's' || ch == 'z') ++k_;
            } else if (measure() == 1 && cvc(k_)) {
                setTo("e");
            }
        }
    }

    void step1c() {
        if (ends("y") && vowelInStem()) b_[static_cast<std::size_t>(k_)] = 'i';
    }

    void step2() {
        if (k_ < 1) return;
        switch (b_[static_cast<std::size_t>(k_ - 1)]) {
            case 'a':
                if (ends("ational")) { replaceIfStem("ate"); break; }
                if (ends("tional")) { replaceIfStem("tion"); break; }
                break;
            case 'c':
                if (ends("enci")) { replaceIfStem("ence"); break; }
                if (ends("anci")) { replaceIfStem("ance"); break; }
                break;
            case 'e':
                if (ends("izer")) { replaceIfStem("ize"); break; }
                break;
            case 'l':
                if (ends("bli")) { replaceIfStem("ble"); break; }
                if (ends("alli")) { replaceIfStem("al"); break; }
                if (ends("entli")) { replaceIfStem("ent"); break; }
                if (ends("eli")) { replaceIfStem("e"); break; }
                if (ends("ousli")) { replaceIfStem("ous"); break; }
                break;
            case 'o':
                if (ends("ization")) { replaceIfStem("ize"); break; }
                if (ends("ation")) { replaceIfStem("ate"); break; }
                if (ends("ator")) { replaceIfStem("ate"); break; }
                break;
            case 's':
                if (ends("alism")) { replaceIfStem("al"); break; }
                if (ends("iveness")) { replaceIfStem("ive"); break; }
                if (ends("fulness")) { replaceIfStem("ful"); break; }
                if (ends("ousness")) { replaceIfStem("ous"); break; }
                break;
            case 't':
                if (ends("aliti")) { replaceIfStem("al"); break; }
                if (ends("iviti")) { replaceIfStem("ive"); break; }
                if (ends("biliti")) { replaceIfStem("ble"); break; }
                break;
            case 'g':
                if (ends("logi")) { replaceIfStem("log"); break; }
                break;
            default:
                break;
        }
    }

    void step3() {
        switch (b_[static_cast<std::size_t>(k_)]) {
            case 'e':
                if (ends("icate")) { replaceIfStem("ic"); break; }
                if (ends("ative")) { replaceIfStem(""); break; }
                if (ends("alize")) { replaceIfStem("al"); break; }
                break;
            case 'i':
                if (ends("iciti")) { replaceIfStem("ic"); break; }
                break;
            case 'l':
                if (ends("ical")) { replaceIfStem("ic"); break; }
                if (ends("ful")) { replaceIfStem(""); break; }
                break;
            case 's':
                if (ends("ness")) { replaceIfStem(""); break; }
                break;
            default:
                break;
        }
    }

    void step4() {
        if (k_ < 1) return;
        switch (b_[static_cast<std::size_t>(k_ - 1)]) {
            case 'a':
                if (ends("al")) break;
                return;
            case 'c':
                if (ends("ance")) break;
                if (ends("ence")) break;
                return;
            case 'e':
                if (ends("er")) break;
                return;
            case 'i':
                if (ends("ic")) break;
                return;
            case 'l':
                if (ends("able")) break;
                if (ends("ible")) break;
                return;
            case 'n':
                if (ends("ant")) break;
                if (ends("ement")) break;
                if (ends("ment")) break;
                if (ends("ent")) break;
                return;
            case 'o':
                if (ends("ion") && j_ >= 0 &&
                    (b_[static_cast<std::size_t>(j_)] == 's' ||
                     b_[static_cast<std::size_t>(j_)] == 't'))
                    break;
                if (ends("ou")) break;
                return;
            case 's':
                if (ends("ism")) break;
                return;
            case 't':
                if (ends("ate")) break;
                if (ends("iti")) break;
                return;
            case 'u':
                if (ends("ous")) break;
                return;
            case 'v':
                if (ends("ive")) break;
                return;
            case 'z':
                if (ends("ize")) break;
                return;
            default:
                return;
        }
        if (measure() > 1) k_ = j_;
    }

    void step5() {
        j_ = k_;
        if (b_[static_cast<std::size_t>(k_)] == 'e') {
            const int a = measure();
            if (a > 1 || (a == 1 && !cvc(k_ - 1))) --k_;
        }
        if (b_[static_cast<std::size_t>(k_)] == 'l' && doubleConsonant(k_) && measure() > 1) --k_;
    }
};

} // namespace

std::string porterStem(const std::string& word) {
    PorterStemmer stemmer;
    return stemmer.run(word);
}

std::unordered_set<std::string> loadStopwords(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open stop-word file: " + path);
    std::unordered_set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) words.insert(line);
    }
    return words;
}

} // namespace divrank
