"""Stopword-vote language tagging for French/English exchanges.

Good enough to attribute talk time per language in FR/EN tandem sessions;
it is not a general language identifier. The two lists are kept disjoint so
a token never votes for both sides; ambiguous words ("on", "car") are left
out entirely.
"""

from __future__ import annotations

from .turns import tokenize

FRENCH = "fr"
ENGLISH = "en"
UNKNOWN = "unknown"

LANGUAGES = (ENGLISH, FRENCH, UNKNOWN)

FRENCH_STOPWORDS = frozenset(
    {
        "je", "tu", "il", "elle", "nous", "vous", "ils", "elles",
        "le", "la", "les", "un", "une", "des", "du", "de", "au", "à",
        "et", "ou", "où", "mais", "donc", "ne", "pas", "plus",
        "très", "bien", "oui", "non", "que", "qui", "ce", "cette",
        "mon", "ma", "son", "sa", "notre", "votre", "leur",
        "est", "sont", "ai", "ont", "fait",
        "avec", "pour", "dans", "sur", "alors", "comme", "si",
        "quand", "parce", "aussi", "ça", "moi", "lui", "y", "en",
    }
)

ENGLISH_STOPWORDS = frozenset(
    {
        "the", "a", "an", "i", "you", "he", "she", "we", "they", "it",
        "is", "are", "was", "were", "be", "been", "am",
        "do", "does", "did", "have", "has", "had",
        "and", "or", "but", "not", "no",
        "of", "to", "in", "for", "with", "at", "by", "from",
        "this", "that", "these", "those",
        "my", "your", "his", "her", "our", "their",
        "what", "which", "who", "how", "when", "why",
        "there", "here", "so", "just", "about", "if", "then", "because",
    }
)


def classify_language(text: str) -> str:
    """Tag text as "fr", "en" or "unknown" by counting stopword hits per
    language; ties (including zero hits on both sides) are unknown."""
    score_fr = 0
    score_en = 0
    for token in tokenize(text):
        if token in FRENCH_STOPWORDS:
            score_fr += 1
        elif token in ENGLISH_STOPWORDS:
            score_en += 1
    if score_fr > score_en:
        return FRENCH
    if score_en > score_fr:
        return ENGLISH
    return UNKNOWN
