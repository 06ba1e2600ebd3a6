"""Render-ready per-speaker timeline tracks and instant-to-playback mapping.

Tracks carry speech-activity intervals derived from turns, not audio
amplitude; the speaker_index is the stable colour key a front end should
use so a participant keeps their colour across weeks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .turns import TurnSequence
from .vtt import Transcript


@dataclass
class TimelineTrack:
    speaker: str
    speaker_index: int
    segments: list = field(default_factory=list)  # (start_ms, end_ms, kind)

    def to_dict(self) -> dict:
        return {
            "speaker": self.speaker,
            "speaker_index": self.speaker_index,
            "segments": [
                {"start_ms": s, "end_ms": e, "kind": kind} for s, e, kind in self.segments
            ],
        }


@dataclass
class SeekResult:
    """Playback mapping for a chosen instant: the clamped media offset, the
    cue containing the instant (if any) and the first cue at or after it."""

    offset_ms: int
    active_cue: Optional[int] = None
    next_cue: Optional[int] = None

    def to_dict(self) -> dict:
        return {
            "offset_ms": self.offset_ms,
            "active_cue": self.active_cue,
            "next_cue": self.next_cue,
        }


def build_timeline(seq: TurnSequence, speaker_order: list[str]) -> list[TimelineTrack]:
    """One track per speaker in the given order, holding that speaker's turn
    spans with their floor/backchannel kind.

    Raises ValueError when the sequence contains a speaker missing from
    speaker_order.
    """
    index = {speaker: i for i, speaker in enumerate(speaker_order)}
    tracks = [TimelineTrack(speaker=s, speaker_index=i) for s, i in index.items()]
    for turn in seq.turns:
        if turn.speaker not in index:
            raise ValueError(f"speaker {turn.speaker!r} missing from speaker order")
        tracks[index[turn.speaker]].segments.append((turn.start_ms, turn.end_ms, turn.kind))
    for track in tracks:
        track.segments.sort()
    return tracks


def seek(transcript: Transcript, t_ms: int) -> SeekResult:
    """Map an instant to a playback offset (clamped to the transcript
    duration) plus the active cue and the next cue starting at or after it."""
    if t_ms < 0:
        raise ValueError("seek instant must be non-negative")
    result = SeekResult(offset_ms=min(t_ms, transcript.duration_ms))
    for i, cue in enumerate(transcript.cues):
        if result.active_cue is None and cue.start_ms <= t_ms < cue.end_ms:
            result.active_cue = i
        if result.next_cue is None and cue.start_ms >= t_ms:
            result.next_cue = i
        if result.active_cue is not None and result.next_cue is not None:
            break
        if cue.start_ms > t_ms:
            break
    return result
