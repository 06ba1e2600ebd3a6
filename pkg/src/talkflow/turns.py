"""Turn segmentation: floor-holding turns, backchannels and silence gaps.

All conversation metrics are defined over the units produced here, so the
merge/classification thresholds and the tokenizer are deliberately simple
and fully configurable.
"""

from __future__ import annotations

import json
import string
from bisect import bisect_right
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Optional, Union

from .vtt import Transcript

FLOOR = "floor"
BACKCHANNEL = "backchannel"

DEFAULT_BACKCHANNEL_LEXICON = frozenset(
    {
        "yeah", "yes", "ok", "okay", "right", "mm", "mmhm", "mhm",
        "oui", "ouais", "d'accord", "ah", "oh", "hm",
    }
)
DEFAULT_FILLED_PAUSE_LEXICON = frozenset(
    {"um", "uh", "er", "ehm", "hmm", "euh", "bah", "ben", "heu"}
)

# Leading/trailing characters stripped from tokens before lexicon lookup.
_STRIP_CHARS = string.punctuation + "…«»“”‘’"


def tokenize(text: str) -> list[str]:
    """Minimal tokenizer used for all lexicon matching: split on whitespace,
    normalize curly apostrophes, strip leading/trailing punctuation,
    lowercase. Tokens that strip to nothing are dropped."""
    out = []
    for word in text.replace("’", "'").split():
        token = word.strip(_STRIP_CHARS).lower()
        if token:
            out.append(token)
    return out


@dataclass(frozen=True)
class AnalysisConfig:
    """Thresholds and lexicons for segmentation and classification."""

    merge_gap_ms: int = 1000
    long_pause_ms: int = 3000
    backchannel_max_ms: int = 1500
    backchannel_max_tokens: int = 2
    backchannel_lexicon: frozenset = DEFAULT_BACKCHANNEL_LEXICON
    filled_pause_lexicon: frozenset = DEFAULT_FILLED_PAUSE_LEXICON

    def __post_init__(self):
        for name in ("merge_gap_ms", "long_pause_ms", "backchannel_max_ms", "backchannel_max_tokens"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        for name in ("backchannel_lexicon", "filled_pause_lexicon"):
            lexicon = getattr(self, name)
            if not lexicon:
                raise ValueError(f"{name} must not be empty")
            for token in lexicon:
                if not token or token != token.lower():
                    raise ValueError(f"{name} entries must be non-empty lowercase tokens")

    def to_dict(self) -> dict:
        return {
            "merge_gap_ms": self.merge_gap_ms,
            "long_pause_ms": self.long_pause_ms,
            "backchannel_max_ms": self.backchannel_max_ms,
            "backchannel_max_tokens": self.backchannel_max_tokens,
            "backchannel_lexicon": sorted(self.backchannel_lexicon),
            "filled_pause_lexicon": sorted(self.filled_pause_lexicon),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AnalysisConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        kwargs = dict(data)
        for name in ("backchannel_lexicon", "filled_pause_lexicon"):
            if name in kwargs:
                kwargs[name] = frozenset(kwargs[name])
        return cls(**kwargs)


def load_config(path: Union[str, Path]) -> AnalysisConfig:
    """Load an AnalysisConfig from a flat JSON file; absent keys keep their
    defaults, lexicons are given as arrays of lowercase tokens."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError("config file must contain a JSON object")
    return AnalysisConfig.from_dict(data)


@dataclass
class Turn:
    """A maximal merged interval of one speaker's consecutive cues."""

    speaker: str
    start_ms: int
    end_ms: int
    speech_ms: int  # sum of constituent cue durations, merged gaps excluded
    cue_indices: list[int]
    word_count: int
    text: str
    kind: str = FLOOR

    def duration_ms(self) -> int:
        return self.end_ms - self.start_ms


@dataclass
class Gap:
    """A maximal interval where no cue is active."""

    start_ms: int
    end_ms: int
    before_speaker: Optional[str] = None
    after_speaker: Optional[str] = None
    is_long: bool = False

    def duration_ms(self) -> int:
        return self.end_ms - self.start_ms


@dataclass
class TurnSequence:
    turns: list[Turn] = field(default_factory=list)
    gaps: list[Gap] = field(default_factory=list)
    duration_ms: int = 0


def segment_turns(transcript: Transcript, config: AnalysisConfig) -> TurnSequence:
    """Merge consecutive same-speaker cues (inter-cue gap <= merge_gap_ms)
    into floor turns; an intervening different-speaker cue or a larger gap
    closes the turn.

    Overlapping same-speaker cues are clipped to start where the speaker's
    earlier speech ended (a transcript glitch); a cue entirely swallowed by
    earlier same-speaker speech contributes no time but its index and words
    still land in that speaker's latest turn. Different-speaker overlap is
    preserved as genuine overlap.
    """
    cues = transcript.cues
    turns: list[Turn] = []
    last_speech_end: dict[str, int] = {}
    last_turn_of: dict[str, int] = {}

    for i, cue in enumerate(cues):
        words = len(cue.text.split())
        clip_at = last_speech_end.get(cue.speaker, 0)
        eff_start = max(cue.start_ms, clip_at)
        contributed = max(0, cue.end_ms - eff_start)

        current = turns[-1] if turns else None
        if (
            current is not None
            and current.speaker == cue.speaker
            and cue.start_ms - current.end_ms <= config.merge_gap_ms
        ):
            current.end_ms = max(current.end_ms, cue.end_ms)
            current.speech_ms += contributed
            current.cue_indices.append(i)
            current.word_count += words
            current.text = f"{current.text} {cue.text}"
        elif contributed == 0 and cue.speaker in last_turn_of:
            # Swallowed glitch cue: attach to the speaker's latest turn
            # without touching its boundaries.
            owner = turns[last_turn_of[cue.speaker]]
            owner.cue_indices.append(i)
            owner.word_count += words
            owner.text = f"{owner.text} {cue.text}"
        else:
            turns.append(
                Turn(
                    speaker=cue.speaker,
                    start_ms=eff_start,
                    end_ms=cue.end_ms,
                    speech_ms=contributed,
                    cue_indices=[i],
                    word_count=words,
                    text=cue.text,
                )
            )
            last_turn_of[cue.speaker] = len(turns) - 1
        last_speech_end[cue.speaker] = max(clip_at, cue.end_ms)

    # Clipping can push a turn's start past a later-created turn's start
    # (another speaker slotting in under a long cue); keep the sequence in
    # start order, stably, so downstream consumers can rely on it.
    turns.sort(key=lambda t: t.start_ms)

    return TurnSequence(
        turns=turns,
        gaps=_find_gaps(transcript, config),
        duration_ms=transcript.duration_ms,
    )


def _find_gaps(transcript: Transcript, config: AnalysisConfig) -> list[Gap]:
    """Maximal silent intervals over the union of all cue intervals."""
    cues = transcript.cues
    gaps: list[Gap] = []
    if not cues:
        return gaps
    reach = cues[0].end_ms
    reach_cue = cues[0]
    for cue in cues[1:]:
        if cue.start_ms > reach:
            gaps.append(
                Gap(
                    start_ms=reach,
                    end_ms=cue.start_ms,
                    before_speaker=reach_cue.speaker,
                    after_speaker=cue.speaker,
                    is_long=cue.start_ms - reach >= config.long_pause_ms,
                )
            )
        if cue.end_ms > reach:
            reach = cue.end_ms
            reach_cue = cue
    return gaps


def classify_backchannels(seq: TurnSequence, config: AnalysisConfig) -> TurnSequence:
    """Mark short lexicon-only turns produced against another speaker's
    adjoining or overlapping talk as backchannels.

    The adjacency test considers every other-speaker turn regardless of its
    kind, so the classification is idempotent and never moves boundaries.
    The first turn of a session is never a backchannel.
    """
    turns = seq.turns
    starts = [t.start_ms for t in turns]

    # Prefix snapshots of the two largest per-speaker running max-ends, so
    # "latest end among other speakers' turns" is an O(1) lookup.
    per_speaker_end: dict[str, int] = {}
    top: list[tuple[Optional[str], Optional[int], Optional[int]]] = []  # (speaker1, end1, end2)
    s1: Optional[str] = None
    e1: Optional[int] = None
    e2: Optional[int] = None
    for t in turns:
        val = max(per_speaker_end.get(t.speaker, t.end_ms), t.end_ms)
        per_speaker_end[t.speaker] = val
        if t.speaker == s1:
            e1 = val
        elif e1 is None or val > e1:
            s1, e1, e2 = t.speaker, val, e1
        elif e2 is None or val > e2:
            e2 = val
        top.append((s1, e1, e2))

    out: list[Turn] = []
    for j, t in enumerate(turns):
        out.append(replace(t, cue_indices=list(t.cue_indices), kind=_kind_for(j, t, starts, top, config)))
    return TurnSequence(turns=out, gaps=list(seq.gaps), duration_ms=seq.duration_ms)


def _kind_for(
    j: int,
    t: Turn,
    starts: list[int],
    top: list[tuple[Optional[str], Optional[int], Optional[int]]],
    config: AnalysisConfig,
) -> str:
    if j == 0:
        return FLOOR
    if t.duration_ms() > config.backchannel_max_ms:
        return FLOOR
    if t.word_count > config.backchannel_max_tokens:
        return FLOOR
    tokens = tokenize(t.text)
    if not tokens or any(tok not in config.backchannel_lexicon for tok in tokens):
        return FLOOR
    # Responds to talk: some other speaker's turn intersects
    # [start - merge_gap, end + merge_gap].
    k = bisect_right(starts, t.end_ms + config.merge_gap_ms) - 1
    if k < 0:
        return FLOOR
    s1, e1, e2 = top[k]
    other_end = e1 if s1 != t.speaker else e2
    if other_end is not None and other_end >= t.start_ms - config.merge_gap_ms:
        return BACKCHANNEL
    return FLOOR


def detect_long_pauses(seq: TurnSequence, config: AnalysisConfig) -> list[Gap]:
    """Gaps lasting at least long_pause_ms, with surrounding speakers."""
    return [g for g in seq.gaps if g.duration_ms() >= config.long_pause_ms]
