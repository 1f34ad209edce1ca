#pragma once

#include "gretheme/embedding_space.hpp"
#include "gretheme/game_token.hpp"

#include <map>
#include <string>
#include <vector>

namespace gretheme {

// Partial map from game tokens to the words that currently name them. Its
// key set is the domain of theme().
class Theming {
public:
    Theming() = default;

    // The chess theme: pieces, players and moves by their own names, plus
    // Promote -> promote transform; Check -> check control prevent;
    // Stalemate -> stalemate deadlock; Draw -> draw tie deadlock;
    // WinWhite -> victory; WinBlack -> defeat.
    static Theming chess_default();

    // "Token: word[, word...]" per line, '#' comments. Board coordinate
    // tokens are rejected. More than three words only produces a warning.
    static Theming parse(std::string_view text, const std::string& source = "<theming>");
    static Theming load(const std::string& path);

    void assign(GameToken token, std::vector<std::string> words);

    bool contains(GameToken t) const { return assignments_.contains(t); }
    const std::vector<std::string>& words(GameToken t) const;
    // Domain in canonical token order.
    std::vector<GameToken> domain() const;
    std::size_t size() const { return assignments_.size(); }
    // Every assigned word, duplicates kept, in domain order.
    std::vector<std::string> word_multiset() const;
    const std::vector<std::string>& warnings() const { return warnings_; }

    std::string to_text() const;

private:
    std::map<GameToken, std::vector<std::string>> assignments_;
    std::vector<std::string> warnings_;
};

// A theming resolved against a word space: theme(token) is the mean of the
// token's word vectors. Construction fails if any word is missing, so
// queries never hit unknown words. The word space must outlive this object.
class ThemeVectors {
public:
    ThemeVectors(const Theming& theming, const EmbeddingSpace& words);

    const Theming& theming() const { return theming_; }
    const EmbeddingSpace& word_space() const { return *words_; }
    // Throws Error for tokens outside the domain (e.g. R0).
    const Vector& theme(GameToken token) const;

private:
    Theming theming_;
    const EmbeddingSpace* words_;
    std::map<GameToken, Vector> vectors_;
};

enum class GuideMode { Example, Field };

struct GuidingVector {
    Vector displacement;
    GuideMode mode = GuideMode::Example;
    std::string start_label;
    std::string finish_label;
};

// W_finish - W_start.
GuidingVector guiding_from_example(const EmbeddingSpace& words, const std::string& start,
                                   const std::string& finish);

// mean(target words) - mean(all theming words, duplicates kept). The labels
// are the vocabulary words nearest to each mean.
GuidingVector guiding_from_field(const EmbeddingSpace& words, const Theming& theming,
                                 const std::vector<std::string>& target);

// Comma-separated list or one word per line, trimmed, empty items dropped.
std::vector<std::string> parse_word_list(std::string_view text);

}  // namespace gretheme
