"""Individual and inter-individual conversation metrics.

Per-speaker talk time, conversation share, turn statistics, fluency signals
and an FR/EN talk-time breakdown; plus the directed who-follows-whom flow
matrix. Conversation share is a fraction of total speech time, not of
wall-clock session time; silence is reported separately through gaps.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .langid import LANGUAGES, classify_language
from .turns import (
    BACKCHANNEL,
    FLOOR,
    AnalysisConfig,
    TurnSequence,
    classify_backchannels,
    detect_long_pauses,
    segment_turns,
    tokenize,
)
from .vtt import Transcript


@dataclass
class SpeakerMetrics:
    """Everything reported about one speaker in one session.

    words_per_minute is word_count / (speaking_ms / 60000), i.e. an
    articulation rate over actual speech time, merged intra-turn gaps
    excluded. Turn lengths (mean/longest) measure the held span
    end_ms - start_ms of floor turns.
    """

    speaker: str
    speaking_ms: int = 0
    share: float = 0.0
    floor_turn_count: int = 0
    backchannel_count: int = 0
    mean_floor_turn_ms: float = 0.0
    longest_floor_turn_ms: int = 0
    word_count: int = 0
    words_per_minute: float = 0.0
    filled_pause_count: int = 0
    long_pauses_after: int = 0
    language_ms: dict = field(default_factory=lambda: {lang: 0 for lang in LANGUAGES})

    def to_dict(self) -> dict:
        return {
            "speaker": self.speaker,
            "speaking_ms": self.speaking_ms,
            "share": self.share,
            "floor_turn_count": self.floor_turn_count,
            "backchannel_count": self.backchannel_count,
            "mean_floor_turn_ms": self.mean_floor_turn_ms,
            "longest_floor_turn_ms": self.longest_floor_turn_ms,
            "word_count": self.word_count,
            "words_per_minute": self.words_per_minute,
            "filled_pause_count": self.filled_pause_count,
            "long_pauses_after": self.long_pauses_after,
            "language_ms": dict(self.language_ms),
        }


@dataclass
class FlowMatrix:
    """Directed floor-transition counts: counts[i][j] is how often speaker j
    took the floor right after speaker i. Self-transitions (speaker retakes
    the floor with no other floor turn in between) sit on the diagonal."""

    speakers: list[str] = field(default_factory=list)
    counts: list[list[int]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"speakers": list(self.speakers), "counts": [list(row) for row in self.counts]}

    def total(self) -> int:
        return sum(sum(row) for row in self.counts)


@dataclass
class SessionMetrics:
    per_speaker: dict  # label -> SpeakerMetrics
    flow: FlowMatrix
    total_speaking_ms: int
    session_duration_ms: int
    long_pause_count: int
    config_used: AnalysisConfig

    def to_dict(self) -> dict:
        return {
            "per_speaker": {label: m.to_dict() for label, m in self.per_speaker.items()},
            "flow": self.flow.to_dict(),
            "total_speaking_ms": self.total_speaking_ms,
            "session_duration_ms": self.session_duration_ms,
            "long_pause_count": self.long_pause_count,
            "config_used": self.config_used.to_dict(),
        }


def count_filled_pauses(text: str, config: AnalysisConfig) -> int:
    """Number of hesitation tokens ("um", "euh", ...) in the text."""
    return sum(1 for token in tokenize(text) if token in config.filled_pause_lexicon)


def compute_speaker_metrics(seq: TurnSequence, config: AnalysisConfig) -> dict:
    """Per-speaker metrics over a backchannel-classified TurnSequence,
    keyed by speaker label in order of first appearance."""
    result: dict[str, SpeakerMetrics] = {}
    for turn in seq.turns:
        m = result.get(turn.speaker)
        if m is None:
            m = result[turn.speaker] = SpeakerMetrics(speaker=turn.speaker)
        m.speaking_ms += turn.speech_ms
        m.word_count += turn.word_count
        m.filled_pause_count += count_filled_pauses(turn.text, config)
        m.language_ms[classify_language(turn.text)] += turn.speech_ms
        if turn.kind == BACKCHANNEL:
            m.backchannel_count += 1
        else:
            m.floor_turn_count += 1
            m.longest_floor_turn_ms = max(m.longest_floor_turn_ms, turn.duration_ms())

    for label, m in result.items():
        floor_spans = [t.duration_ms() for t in seq.turns if t.speaker == label and t.kind == FLOOR]
        if floor_spans:
            m.mean_floor_turn_ms = sum(floor_spans) / len(floor_spans)
        if m.speaking_ms > 0:
            m.words_per_minute = m.word_count / (m.speaking_ms / 60000.0)

    total = sum(m.speaking_ms for m in result.values())
    if total > 0:
        for m in result.values():
            m.share = m.speaking_ms / total

    for gap in detect_long_pauses(seq, config):
        if gap.before_speaker in result:
            result[gap.before_speaker].long_pauses_after += 1

    return result


def compute_flow(seq: TurnSequence) -> FlowMatrix:
    """Count consecutive floor-turn pairs; backchannels are invisible here,
    so a speaker flanking a backchannel counts as retaking the floor."""
    speakers: list[str] = []
    pos: dict[str, int] = {}
    for turn in seq.turns:
        if turn.speaker not in pos:
            pos[turn.speaker] = len(speakers)
            speakers.append(turn.speaker)

    n = len(speakers)
    counts = [[0] * n for _ in range(n)]
    prev = None
    for turn in seq.turns:
        if turn.kind != FLOOR:
            continue
        if prev is not None:
            counts[pos[prev]][pos[turn.speaker]] += 1
        prev = turn.speaker
    return FlowMatrix(speakers=speakers, counts=counts)


def compute_session_metrics(transcript: Transcript, config: AnalysisConfig) -> SessionMetrics:
    """Full pipeline: segment turns, classify backchannels, then derive all
    per-speaker metrics and the flow matrix."""
    seq = classify_backchannels(segment_turns(transcript, config), config)
    per_speaker = compute_speaker_metrics(seq, config)
    return SessionMetrics(
        per_speaker=per_speaker,
        flow=compute_flow(seq),
        total_speaking_ms=sum(m.speaking_ms for m in per_speaker.values()),
        session_duration_ms=transcript.duration_ms,
        long_pause_count=len(detect_long_pauses(seq, config)),
        config_used=config,
    )
