#include "streetpoll/prompt.hpp"

#include "streetpoll/text.hpp"

#include <sstream>
#include <stdexcept>

namespace streetpoll {

namespace {

constexpr const char* kEnglishBody =
    "Below, you can find the text of the interviews between the reporter and the "
    "citizens in the YouTube video for the election survey about whom they will vote "
    "in the elections, in timestamped form, and the list of concepts that will help "
    "us to conceptualize the reasons for the vote.\n"
    "\n"
    "Important Details:\n"
    "\n"
    "If more than one citizen is being interviewed at the same time, citizens are "
    "named as Citizen 1, Citizen 2.\n"
    "\n"
    "The answers given to the question \"Why not ... ?\" do not indicate the votes "
    "of the citizens.\n"
    "\n"
    "Captions:\n"
    "{captions}\n"
    "List of concepts:\n"
    "{concepts}\n"
    "Questions:\n"
    "\n"
    "Question 1: How many citizens were interviewed in total?\n"
    "\n"
    "Question 2: Provide each citizen's preferred candidate, the reason for voting, "
    "and the one-word concept summarizing the reason by choosing the most suitable "
    "concept from the list of concepts, in .csv format. If they didn't give a reason, "
    "please don't give a reason either. Choose \"other\" if you don't think there is "
    "a suitable concept from the list of concepts. If the citizen is undecided, mark "
    "the reason and the concept as undecided.\n"
    "\n"
    "Answers:\n"
    "\n"
    "Answer 1:\n"
    "\n"
    "Answer 2:\n";

std::string replace_placeholder(std::string body, std::string_view placeholder,
                                const std::string& value) {
    size_t pos = body.find(placeholder);
    if (pos == std::string::npos) {
        throw std::runtime_error("prompt template is missing the " + std::string(placeholder) +
                                 " placeholder");
    }
    body.replace(pos, placeholder.size(), value);
    return body;
}

PromptInstance assemble(const PromptTemplate& tmpl, std::string captions_block,
                        const ConceptInventory& inventory) {
    PromptInstance instance;
    instance.tmpl = tmpl;
    instance.captions_block = std::move(captions_block);
    instance.concepts_block = render_concepts_block(inventory);
    instance.final_text = replace_placeholder(tmpl.body, "{captions}", instance.captions_block);
    instance.final_text =
        replace_placeholder(std::move(instance.final_text), "{concepts}", instance.concepts_block);
    return instance;
}

} // namespace

const PromptTemplate& english_template() {
    static const PromptTemplate tmpl{"en", kEnglishBody};
    return tmpl;
}

PromptTemplate load_template(const std::string& path, std::string locale) {
    return PromptTemplate{std::move(locale), read_file(path)};
}

std::string render_concepts_block(const ConceptInventory& inventory) {
    std::ostringstream out;
    for (const ConceptEntry& e : inventory.entries) {
        out << "- " << e.name << ": " << e.explanation << '\n';
    }
    return out.str();
}

PromptInstance build_prompt(const RawCaptionDocument& doc, const ConceptInventory& inventory,
                            const PromptTemplate& tmpl) {
    if (doc.cues.empty()) throw std::invalid_argument("nothing to annotate");
    return assemble(tmpl, render_raw(doc), inventory);
}

PromptInstance build_prompt(const ProcessedTranscript& transcript,
                            const ConceptInventory& inventory, const PromptTemplate& tmpl) {
    if (transcript.segments.empty()) throw std::invalid_argument("nothing to annotate");
    return assemble(tmpl, render_processed(transcript), inventory);
}

} // namespace streetpoll
