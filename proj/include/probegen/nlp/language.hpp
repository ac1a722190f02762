#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace probegen::nlp {

enum class DetectorId { primary, fallback, undetected };

std::string_view to_string(DetectorId id);
DetectorId parse_detector_id(std::string_view s);

struct LanguageTag {
    std::string code;  // empty iff detector == undetected
    double confidence = 0.0;
    DetectorId detector = DetectorId::undetected;
};

struct Detection {
    std::string code;
    double confidence = 0.0;
};

class LanguageDetector {
public:
    virtual ~LanguageDetector() = default;
    // nullopt when the language is unknown or not supported by this detector.
    virtual std::optional<Detection> detect(std::string_view text) const = 0;
};

// Character 1..3-gram frequency profiles, one file per language:
//   "# n_words N1 N2 N3" header, then "gram<TAB>count" lines.
// Han ideographs are folded onto cluster representatives listed in
// cjk_map.txt, kana onto one symbol per syllabary, Hangul onto one symbol.
class ProfileSet {
public:
    static std::shared_ptr<const ProfileSet> load(const std::filesystem::path& dir);

    const std::vector<std::string>& languages() const { return langs_; }
    std::optional<std::size_t> index_of(std::string_view code) const;

    // Normalized padded grams of `text`, in order of appearance.
    std::vector<std::u32string> grams(std::string_view text) const;

    struct Entry {
        std::size_t lang;
        double prob;  // count / n_words[order]
    };
    const std::vector<Entry>* lookup(const std::u32string& gram) const;

private:
    char32_t normalize(char32_t cp) const;

    std::vector<std::string> langs_;
    std::unordered_map<std::u32string, std::vector<Entry>> table_;
    std::unordered_map<char32_t, char32_t> cjk_;
};

struct NgramDetectorOptions {
    // Fraction of the text's grams that must appear in some profile.
    double min_coverage = 0.25;
    // Fewer known grams than this and the text is "unknown".
    std::size_t min_grams = 4;
    // Han-only text cannot be Korean or Japanese: those profiles are eligible
    // only when Hangul, resp. Kana, occurs. Without this Chinese text that
    // shares common ideographs with Hanja scores as Korean.
    bool script_gate = true;
};

// Naive Bayes over every loaded profile. Deterministic: every gram is scored,
// no sampling. Only `supported` languages are reported; any other winner
// means the language is unsupported by this detector and detect() returns
// nullopt. An empty `supported` list means all profiles.
class NgramProfileDetector : public LanguageDetector {
public:
    NgramProfileDetector(std::shared_ptr<const ProfileSet> profiles, std::vector<std::string> supported,
                         NgramDetectorOptions options = {});

    std::optional<Detection> detect(std::string_view text) const override;

    // Posterior per profile language (uniform prior), sorted by descending
    // probability then code. Empty when the text has no known grams.
    std::vector<std::pair<std::string, double>> posteriors(std::string_view text) const;

    bool supports(std::string_view code) const;
    const std::vector<std::string>& languages() const { return codes_; }

private:
    struct Scored {
        std::vector<double> log_scores;  // per profile language
        std::size_t known = 0;
        std::size_t total = 0;
    };
    Scored score(std::string_view text) const;
    std::size_t profile_index(std::string_view code) const;

    std::shared_ptr<const ProfileSet> profiles_;
    std::vector<std::string> codes_;
    std::vector<bool> supported_;  // per profile language
    NgramDetectorOptions options_;
};

// Languages the shipped primary detector covers.
const std::vector<std::string>& primary_languages();

// Primary first, fallback when the primary reports unknown / unsupported.
LanguageTag detect_language(std::string_view text, const LanguageDetector& primary,
                            const LanguageDetector& fallback);

}  // namespace probegen::nlp
