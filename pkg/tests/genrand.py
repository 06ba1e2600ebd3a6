"""Seeded random transcript generation for oracle-equivalence and property
tests. Everything is driven by a caller-supplied random.Random so runs are
reproducible from a single integer seed."""

from __future__ import annotations

import random

from talkflow.vtt import RawCue, Transcript

SPEAKER_POOL = [
    "Alice",
    "Bob",
    "Chloé Martin",
    "Declan O'Neill",
    "Émilie",
    "José García",
    "Saoirse",
    "?",
]

FRENCH_WORDS = [
    "je", "pense", "que", "nous", "avons", "une", "bonne", "idée", "très",
    "bien", "alors", "est-ce", "qu’on", "peut", "parler", "de", "la",
    "semaine", "dernière", "c’est", "vraiment", "intéressant", "euh",
]
ENGLISH_WORDS = [
    "i", "think", "that", "we", "should", "talk", "about", "the", "last",
    "week", "it", "was", "really", "interesting", "and", "then", "you",
    "know", "um", "maybe", "a", "good", "idea",
]
BACKCHANNEL_WORDS = ["ouais", "oui", "yeah", "ok", "d'accord", "mm", "right", "ah"]
TRAILERS = ["", "", "", ".", ",", " ?", " !", "…"]


def random_text(rng: random.Random, min_words: int = 1, max_words: int = 14) -> str:
    vocab = FRENCH_WORDS if rng.random() < 0.5 else ENGLISH_WORDS
    n = rng.randint(min_words, max_words)
    words = [rng.choice(vocab) for _ in range(n)]
    return " ".join(words) + rng.choice(TRAILERS)


def random_cues(
    rng: random.Random,
    max_cues: int = 200,
    max_speakers: int = 5,
    allow_overlap: bool = True,
    speakers: list = None,
) -> list:
    """Random cue list sorted the way parsing would sort it. Mixes long
    utterances, short backchannel-ish cues, silences, and (optionally)
    overlapping speech; speakers include accents, apostrophes and the
    unknown-speaker sentinel. Pass an explicit speakers list to fix the
    roster (every listed speaker is guaranteed at least one cue when the
    list is non-empty and any cues are generated)."""
    fixed_roster = speakers is not None
    if speakers is None:
        speakers = rng.sample(SPEAKER_POOL, rng.randint(1, max_speakers))
    cues = []
    clock = rng.randint(0, 2000)
    for _ in range(rng.randint(0, max_cues)):
        roll = rng.random()
        if roll < 0.15:
            clock += rng.randint(3000, 9000)  # long silence
        elif roll < 0.55:
            clock += rng.randint(0, 900)  # mergeable-scale gap
        elif allow_overlap and roll < 0.75:
            clock -= rng.randint(1, 2500)  # overlap previous talk
        else:
            clock += rng.randint(900, 2800)
        start = max(0, clock)
        if rng.random() < 0.25:
            duration = rng.randint(150, 1400)
            text = " ".join(
                rng.choice(BACKCHANNEL_WORDS) for _ in range(rng.randint(1, 2))
            ) + rng.choice(TRAILERS)
        else:
            duration = rng.randint(400, 9000)
            text = random_text(rng)
        cues.append(
            RawCue(
                start_ms=start,
                end_ms=start + duration,
                speaker=rng.choice(speakers),
                text=text,
            )
        )
        clock = start + duration
    if fixed_roster and cues:
        present = {c.speaker for c in cues}
        for speaker in speakers:
            if speaker not in present:
                clock += rng.randint(400, 2000)
                cues.append(
                    RawCue(
                        start_ms=clock,
                        end_ms=clock + rng.randint(800, 4000),
                        speaker=speaker,
                        text=random_text(rng),
                    )
                )
                clock = cues[-1].end_ms
    order = sorted(range(len(cues)), key=lambda i: (cues[i].start_ms, cues[i].end_ms, i))
    out = []
    for new_index, old in enumerate(order):
        cue = cues[old]
        cue.index = new_index + 1
        out.append(cue)
    return out


def random_transcript(
    rng: random.Random,
    max_cues: int = 200,
    max_speakers: int = 5,
    allow_overlap: bool = True,
    speakers: list = None,
    source_name: str = "random.vtt",
) -> Transcript:
    return Transcript(
        source_name=source_name,
        cues=random_cues(
            rng,
            max_cues=max_cues,
            max_speakers=max_speakers,
            allow_overlap=allow_overlap,
            speakers=speakers,
        ),
    )
