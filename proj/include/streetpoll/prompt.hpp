#pragma once

#include "streetpoll/captions.hpp"
#include "streetpoll/corpus.hpp"

#include <string>

namespace streetpoll {

// A locale's annotation question. `body` is the full text with
// `{captions}` and `{concepts}` placeholders; templates for other
// locales ship as plain-text resource files in the same shape.
struct PromptTemplate {
    std::string locale;
    std::string body;

    bool operator==(const PromptTemplate&) const = default;
};

// The built-in English template.
const PromptTemplate& english_template();

PromptTemplate load_template(const std::string& path, std::string locale);

struct PromptInstance {
    PromptTemplate tmpl;
    std::string captions_block;
    std::string concepts_block;
    std::string final_text;

    bool operator==(const PromptInstance&) const = default;
};

// Renders the inventory as `- name: explanation` lines, file order.
std::string render_concepts_block(const ConceptInventory& inventory);

PromptInstance build_prompt(const RawCaptionDocument& doc, const ConceptInventory& inventory,
                            const PromptTemplate& tmpl);
PromptInstance build_prompt(const ProcessedTranscript& transcript,
                            const ConceptInventory& inventory, const PromptTemplate& tmpl);

} // namespace streetpoll
