"""The annotation guideline served to the labeling UI.

The rubric uses the standard 0-5 semantic-similarity degrees; 4 and 5
count as paraphrase. Annotators also flag near-paraphrases: close
non-paraphrase pairs that are easy to mistake for paraphrases.
"""

GUIDELINE = {
    "title": "Sentence-pair annotation guideline",
    "decision_rule": (
        "Grade each pair on the 0-5 similarity scale. Degrees 4 and 5 count as "
        "paraphrase; degrees 0 through 3 count as non-paraphrase. When you pick a "
        "degree of 3 or lower, also set the near-paraphrase flag if the pair fits "
        "one of the near-paraphrase categories below."
    ),
    "degrees": [
        {"degree": 5, "name": "Completely equivalent", "description": "The sentences mean exactly the same thing."},
        {"degree": 4, "name": "Mostly equivalent", "description": "Same meaning; only unimportant details differ."},
        {"degree": 3, "name": "Roughly equivalent", "description": "Close in meaning, but some important information differs or is missing."},
        {"degree": 2, "name": "Not equivalent, shared details", "description": "Different statements that still share some details."},
        {"degree": 1, "name": "Same topic only", "description": "Not equivalent, but about the same topic."},
        {"degree": 0, "name": "Unrelated", "description": "On different topics."},
    ],
    "near_paraphrase_categories": [
        {
            "id": "I",
            "name": "Partial overlap",
            "description": "One sentence covers only part of the other's content.",
            "example": {
                "sentence_1": "Նախարարը հայտարարեց, որ ճանապարհը վերանորոգվել է և երթևեկությունը վերսկսվել է:",
                "sentence_2": "Ճանապարհը վերանորոգվել է:",
            },
        },
        {
            "id": "II",
            "name": "One-way entailment",
            "description": "One sentence implies the other, but not the other way around.",
            "example": {
                "sentence_1": "Նա ամեն օր մարզվում է մարզադահլիճում:",
                "sentence_2": "Նա երբեմն մարզվում է:",
            },
        },
        {
            "id": "III",
            "name": "Different entities, same frame",
            "description": "Nearly identical sentences that refer to different people, places or numbers.",
            "example": {
                "sentence_1": "Անին աշխատում է Գյումրիի դպրոցում որպես ուսուցչուհի:",
                "sentence_2": "Մարիամն աշխատում է Վանաձորի դպրոցում որպես ուսուցչուհի:",
            },
        },
    ],
    "notes": (
        "Judge meaning, not wording: reworded sentences with the same content are "
        "paraphrases. Reject pairs mentally when a sentence is ungrammatical to the "
        "point of being unreadable; grade what the words actually say, not what the "
        "writer probably intended."
    ),
}


def guideline_markdown() -> str:
    lines = [f"# {GUIDELINE['title']}", "", GUIDELINE["decision_rule"], "", "## Similarity degrees", ""]
    for entry in GUIDELINE["degrees"]:
        lines.append(f"- **{entry['degree']} — {entry['name']}.** {entry['description']}")
    lines += ["", "## Near-paraphrase categories", ""]
    for cat in GUIDELINE["near_paraphrase_categories"]:
        lines.append(f"- **{cat['id']}. {cat['name']}.** {cat['description']}")
        lines.append(f"  - «{cat['example']['sentence_1']}»")
        lines.append(f"  - «{cat['example']['sentence_2']}»")
    lines += ["", GUIDELINE["notes"], ""]
    return "\n".join(lines)
