#include "probegen/nlp/language.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "probegen/common/error.hpp"
#include "probegen/common/text.hpp"

namespace probegen::nlp {

std::string_view to_string(DetectorId id) {
    switch (id) {
        case DetectorId::primary: return "primary";
        case DetectorId::fallback: return "fallback";
        case DetectorId::undetected: return "undetected";
    }
    return "undetected";
}

DetectorId parse_detector_id(std::string_view s) {
    if (s == "primary") {
        return DetectorId::primary;
    }
    if (s == "fallback") {
        return DetectorId::fallback;
    }
    if (s == "undetected") {
        return DetectorId::undetected;
    }
    throw ConfigError("unknown detector id '" + std::string(s) + "'");
}

namespace {

// Additive weight on every gram probability, as in the profile source tool.
constexpr double kSmoothing = 0.5 / 10000.0;

}  // namespace

std::shared_ptr<const ProfileSet> ProfileSet::load(const std::filesystem::path& dir) {
    auto set = std::make_shared<ProfileSet>();
    std::vector<std::filesystem::path> files;
    if (!std::filesystem::is_directory(dir)) {
        throw ConfigError("language profile directory not found: " + dir.string());
    }
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
        const auto stem = e.path().stem().string();
        if (e.path().extension() == ".txt" && stem != "cjk_map") {
            files.push_back(e.path());
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        throw ConfigError("no language profiles in " + dir.string());
    }

    std::ifstream cjk(dir / "cjk_map.txt");
    std::string line;
    while (cjk && std::getline(cjk, line)) {
        if (line.empty() || line.front() == '#') {
            continue;
        }
        auto cps = text::to_u32(line);
        for (char32_t cp : cps) {
            set->cjk_.emplace(cp, cps.front());
        }
    }

    for (const auto& file : files) {
        std::ifstream in(file);
        std::size_t lang = set->langs_.size();
        set->langs_.push_back(file.stem().string());
        double n_words[4] = {0, 0, 0, 0};
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line_no == 1) {
                std::istringstream header(line);
                std::string hash, label;
                header >> hash >> label >> n_words[1] >> n_words[2] >> n_words[3];
                if (label != "n_words" || n_words[1] <= 0 || n_words[2] <= 0 || n_words[3] <= 0) {
                    throw ConfigError(file.string() + ":1: bad profile header");
                }
                continue;
            }
            auto tab = line.rfind('\t');
            if (tab == std::string::npos) {
                throw ConfigError(file.string() + ":" + std::to_string(line_no) + ": expected gram<TAB>count");
            }
            auto gram = text::to_u32(std::string_view(line).substr(0, tab));
            if (gram.empty() || gram.size() > 3) {
                continue;
            }
            double count = std::stod(line.substr(tab + 1));
            set->table_[gram].push_back({lang, count / n_words[gram.size()]});
        }
    }
    return set;
}

std::optional<std::size_t> ProfileSet::index_of(std::string_view code) const {
    for (std::size_t i = 0; i < langs_.size(); ++i) {
        if (langs_[i] == code) {
            return i;
        }
    }
    return std::nullopt;
}

const std::vector<ProfileSet::Entry>* ProfileSet::lookup(const std::u32string& gram) const {
    auto it = table_.find(gram);
    return it == table_.end() ? nullptr : &it->second;
}

char32_t ProfileSet::normalize(char32_t cp) const {
    if (!text::is_letter(cp)) {
        return U' ';
    }
    if (cp == 0x0219) {
        return 0x015F;  // s with comma below -> cedilla
    }
    if (cp == 0x021B) {
        return 0x0163;
    }
    if (cp == 0x06CC) {
        return 0x064A;  // Farsi yeh -> Arabic yeh
    }
    if (cp >= 0x1EA0 && cp <= 0x1EFF) {
        return 0x1EC3;
    }
    if (cp >= 0x3040 && cp <= 0x309F) {
        return 0x3042;
    }
    if (cp >= 0x30A0 && cp <= 0x30FF) {
        return 0x30A2;
    }
    if ((cp >= 0x3100 && cp <= 0x312F) || (cp >= 0x31A0 && cp <= 0x31BF)) {
        return 0x3105;
    }
    if (cp >= 0x4E00 && cp <= 0x9FFF) {
        auto it = cjk_.find(cp);
        return it == cjk_.end() ? cp : it->second;
    }
    if (cp >= 0xAC00 && cp <= 0xD7AF) {
        return 0xAC00;
    }
    return cp;
}

std::vector<std::u32string> ProfileSet::grams(std::string_view input) const {
    std::vector<std::u32string> out;
    std::u32string window = U" ";
    auto push = [&](char32_t raw) {
        char32_t ch = normalize(raw);
        if (window.back() == U' ') {
            window = U" ";
            if (ch == U' ') {
                return;
            }
        } else if (window.size() >= 3) {
            window.erase(0, 1);
        }
        window.push_back(ch);
        for (std::size_t n = 1; n <= 3 && n <= window.size(); ++n) {
            auto g = window.substr(window.size() - n);
            if (n == 1 && g[0] == U' ') {
                continue;
            }
            out.push_back(std::move(g));
        }
    };
    for (char32_t cp : text::to_u32(text::to_lower(input))) {
        push(cp);
    }
    push(U' ');
    return out;
}

NgramProfileDetector::NgramProfileDetector(std::shared_ptr<const ProfileSet> profiles,
                                           std::vector<std::string> supported, NgramDetectorOptions options)
    : profiles_(std::move(profiles)), options_(options) {
    const auto& all = profiles_->languages();
    supported_.assign(all.size(), supported.empty());
    for (const auto& code : supported) {
        supported_[profile_index(code)] = true;
    }
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (supported_[i]) {
            codes_.push_back(all[i]);
        }
    }
}

std::size_t NgramProfileDetector::profile_index(std::string_view code) const {
    auto idx = profiles_->index_of(code);
    if (!idx) {
        throw ConfigError("no language profile for '" + std::string(code) + "'");
    }
    return *idx;
}

bool NgramProfileDetector::supports(std::string_view code) const {
    return std::find(codes_.begin(), codes_.end(), code) != codes_.end();
}

NgramProfileDetector::Scored NgramProfileDetector::score(std::string_view text) const {
    Scored s;
    s.log_scores.assign(profiles_->languages().size(), 0.0);
    const double base = std::log(kSmoothing);
    for (const auto& g : profiles_->grams(text)) {
        ++s.total;
        const auto* entries = profiles_->lookup(g);
        if (!entries) {
            continue;
        }
        ++s.known;
        for (auto& v : s.log_scores) {
            v += base;
        }
        for (const auto& e : *entries) {
            s.log_scores[e.lang] += std::log(e.prob + kSmoothing) - base;
        }
    }
    if (options_.script_gate) {
        bool han = false, hangul = false, kana = false;
        for (char32_t cp : text::to_u32(text)) {
            han |= cp >= 0x4E00 && cp <= 0x9FFF;
            hangul |= (cp >= 0xAC00 && cp <= 0xD7AF) || (cp >= 0x1100 && cp <= 0x11FF);
            kana |= cp >= 0x3040 && cp <= 0x30FF;
        }
        auto exclude = [&](std::string_view code) {
            if (auto i = profiles_->index_of(code)) {
                s.log_scores[*i] = -std::numeric_limits<double>::infinity();
            }
        };
        if (han && !hangul) {
            exclude("ko");
        }
        if (han && !kana) {
            exclude("ja");
        }
    }
    return s;
}

std::vector<std::pair<std::string, double>> NgramProfileDetector::posteriors(std::string_view text) const {
    auto s = score(text);
    std::vector<std::pair<std::string, double>> out;
    if (s.known == 0) {
        return out;
    }
    double top = *std::max_element(s.log_scores.begin(), s.log_scores.end());
    double z = 0.0;
    for (double v : s.log_scores) {
        z += std::exp(v - top);
    }
    const auto& langs = profiles_->languages();
    for (std::size_t i = 0; i < langs.size(); ++i) {
        out.emplace_back(langs[i], std::exp(s.log_scores[i] - top) / z);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    return out;
}

std::optional<Detection> NgramProfileDetector::detect(std::string_view text) const {
    auto s = score(text);
    if (s.known < options_.min_grams ||
        static_cast<double>(s.known) < options_.min_coverage * static_cast<double>(s.total)) {
        return std::nullopt;
    }
    // Profiles are sorted by code, so the first maximum is the lexicographic tie-break.
    std::size_t best = 0;
    for (std::size_t i = 1; i < s.log_scores.size(); ++i) {
        if (s.log_scores[i] > s.log_scores[best]) {
            best = i;
        }
    }
    if (!supported_[best]) {
        return std::nullopt;
    }
    double z = 0.0;
    for (double v : s.log_scores) {
        z += std::exp(v - s.log_scores[best]);
    }
    return Detection{profiles_->languages()[best], 1.0 / z};
}

const std::vector<std::string>& primary_languages() {
    static const std::vector<std::string> langs{"ar", "de", "en", "es", "fr", "it", "ja", "nl", "pt", "ru", "tr", "zh"};
    return langs;
}

LanguageTag detect_language(std::string_view text, const LanguageDetector& primary,
                            const LanguageDetector& fallback) {
    if (text::trim(text).empty()) {
        return {};
    }
    if (auto d = primary.detect(text)) {
        return {d->code, d->confidence, DetectorId::primary};
    }
    if (auto d = fallback.detect(text)) {
        return {d->code, d->confidence, DetectorId::fallback};
    }
    return {};
}

}  // namespace probegen::nlp
