"""WebVTT transcript ingestion.

Parses exported WebVTT files (Zoom dialect and generic WebVTT) into a
validated, speaker-attributed cue sequence. Zoom writes one cue per caption
chunk with a "Speaker Name: text" payload prefix.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import IO, Iterable, Optional, Union

#: Speaker label used when a payload carries no "Name: text" prefix.
UNKNOWN_SPEAKER = "?"

# Speaker prefix: the first colon of the payload line, only when it is
# followed by a space and sits within the first 64 characters. Keeps clock
# times ("10:30 sharp") and URLs from being mis-split into speaker names.
_SPEAKER_COLON_LIMIT = 64

# H*:MM:SS.mmm with the hours part optional (generic WebVTT); Zoom always
# writes two-digit hours.
_TS = r"(?:(\d{1,9}):)?([0-5]\d):([0-5]\d)\.(\d{3})"
_TIMING_RE = re.compile(rf"^\s*{_TS}[ \t]*-->[ \t]*{_TS}(?:[ \t].*)?$")

_OVERLONG_CUE_MS = 120_000
_UNKNOWN_RATIO_LIMIT = 0.40
_MIN_SPEECH_COVERAGE = 0.05


@dataclass
class RawCue:
    """One timed caption block with its speaker attribution."""

    start_ms: int
    end_ms: int
    speaker: str
    text: str
    index: Optional[int] = None

    def duration_ms(self) -> int:
        return self.end_ms - self.start_ms

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "start_ms": self.start_ms,
            "end_ms": self.end_ms,
            "speaker": self.speaker,
            "text": self.text,
        }


@dataclass
class Transcript:
    """Parsed transcript: cues sorted by start time, distinct speakers in
    order of first appearance, duration = max cue end."""

    source_name: str = ""
    cues: list[RawCue] = field(default_factory=list)

    @property
    def speakers(self) -> list[str]:
        seen: dict[str, None] = {}
        for cue in self.cues:
            seen.setdefault(cue.speaker)
        return list(seen)

    @property
    def duration_ms(self) -> int:
        return max((c.end_ms for c in self.cues), default=0)

    def to_dict(self) -> dict:
        return {
            "source_name": self.source_name,
            "duration_ms": self.duration_ms,
            "speakers": self.speakers,
            "cues": [c.to_dict() for c in self.cues],
        }


@dataclass
class ParseIssue:
    """A problem found while parsing or validating a transcript.

    severity "error" means the file or a cue was unrecoverable; everything
    else is a warning.
    """

    line_number: int
    severity: str  # "warning" | "error"
    message: str

    def to_dict(self) -> dict:
        return {
            "line_number": self.line_number,
            "severity": self.severity,
            "message": self.message,
        }


def _ts_to_ms(hours: Optional[str], minutes: str, seconds: str, millis: str) -> int:
    h = int(hours) if hours else 0
    return ((h * 60 + int(minutes)) * 60 + int(seconds)) * 1000 + int(millis)


def format_timestamp(ms: int) -> str:
    """Format milliseconds as the canonical HH:MM:SS.mmm timestamp."""
    if ms < 0:
        ms = 0
    h, rest = divmod(ms, 3_600_000)
    m, rest = divmod(rest, 60_000)
    s, milli = divmod(rest, 1000)
    return f"{h:02d}:{m:02d}:{s:02d}.{milli:03d}"


def _split_speaker(line: str) -> tuple[str, str]:
    """Split a payload line into (speaker, text).

    Returns (UNKNOWN_SPEAKER, line) when the line carries no usable
    "Name: text" prefix.
    """
    pos = line.find(":")
    if 0 < pos < _SPEAKER_COLON_LIMIT and pos + 1 < len(line) and line[pos + 1] == " ":
        name = line[:pos].strip()
        if name:
            return name, line[pos + 2 :].strip()
    return UNKNOWN_SPEAKER, line.strip()


def _decode(source: Union[str, bytes, IO]) -> str:
    if isinstance(source, bytes):
        return source.decode("utf-8", errors="replace")
    if isinstance(source, str):
        return source
    data = source.read()
    if isinstance(data, bytes):
        return data.decode("utf-8", errors="replace")
    return data


def parse_vtt(source: Union[str, bytes, IO], source_name: str = "") -> tuple[Transcript, list[ParseIssue]]:
    """Parse WebVTT content into a Transcript plus a list of parse issues.

    Never raises on malformed input: a missing header yields an error issue
    and an empty Transcript; a malformed cue is skipped with an error issue
    and parsing continues. Out-of-order cues are re-sorted (warning) and
    overlapping cues are kept as-is (warning).
    """
    text = _decode(source)
    if text.startswith("﻿"):
        text = text[1:]
    lines = text.replace("\r\n", "\n").replace("\r", "\n").split("\n")

    issues: list[ParseIssue] = []
    transcript = Transcript(source_name=source_name)

    # Locate the header: the first non-blank line must begin with WEBVTT.
    pos = 0
    while pos < len(lines) and not lines[pos].strip():
        pos += 1
    if pos >= len(lines) or not lines[pos].lstrip().startswith("WEBVTT"):
        issues.append(
            ParseIssue(pos + 1 if pos < len(lines) else 1, "error", "missing WEBVTT header")
        )
        return transcript, issues
    pos += 1
    # Header metadata lines (if any) run until the first blank line.
    while pos < len(lines) and lines[pos].strip():
        pos += 1

    cues: list[RawCue] = []
    cue_lines: list[int] = []  # start line of each cue, for issue reporting

    for block_start, block in _blocks(lines, pos):
        first = block[0][1].strip()
        # NOTE/STYLE/REGION blocks are legal WebVTT but carry no cue.
        if first.startswith(("NOTE", "STYLE", "REGION")):
            continue

        timing_at = 0
        if "-->" not in block[0][1]:
            timing_at = 1
            if len(block) < 2 or "-->" not in block[1][1]:
                issues.append(ParseIssue(block_start, "error", "expected timestamp line"))
                continue

        index: Optional[int] = None
        if timing_at == 1 and first.isdigit():
            index = int(first)

        timing_line_no, timing_line = block[timing_at]
        match = _TIMING_RE.match(timing_line)
        if not match:
            issues.append(
                ParseIssue(timing_line_no, "error", f"malformed timestamp line: {timing_line.strip()!r}")
            )
            continue
        start_ms = _ts_to_ms(*match.groups()[0:4])
        end_ms = _ts_to_ms(*match.groups()[4:8])
        if start_ms >= end_ms:
            issues.append(
                ParseIssue(timing_line_no, "error", "cue start must precede cue end")
            )
            continue

        payload = [ln for _, ln in block[timing_at + 1 :]]
        if not payload or not " ".join(payload).strip():
            issues.append(ParseIssue(timing_line_no, "warning", "empty cue payload dropped"))
            continue
        speaker, head = _split_speaker(payload[0])
        rest = [p.strip() for p in payload[1:]]
        text_joined = " ".join(part for part in [head, *rest] if part).strip()
        if not text_joined:
            issues.append(ParseIssue(timing_line_no, "warning", "empty cue payload dropped"))
            continue

        cues.append(RawCue(start_ms=start_ms, end_ms=end_ms, speaker=speaker, text=text_joined, index=index))
        cue_lines.append(timing_line_no)

    order = sorted(range(len(cues)), key=lambda i: (cues[i].start_ms, cues[i].end_ms, i))
    if order != list(range(len(cues))):
        issues.append(ParseIssue(0, "warning", "cues out of order; re-sorted by start time"))
        cues = [cues[i] for i in order]
        cue_lines = [cue_lines[i] for i in order]

    running_end = 0
    for cue, line_no in zip(cues, cue_lines):
        if cue.start_ms < running_end:
            issues.append(ParseIssue(line_no, "warning", "cue overlaps an earlier cue"))
        running_end = max(running_end, cue.end_ms)

    transcript.cues = cues
    return transcript, issues


def _blocks(lines: list[str], start: int) -> Iterable[tuple[int, list[tuple[int, str]]]]:
    """Yield (first_line_number, [(line_number, line), ...]) for each
    blank-line-separated block. Line numbers are 1-based."""
    block: list[tuple[int, str]] = []
    for offset in range(start, len(lines)):
        line = lines[offset]
        if line.strip():
            block.append((offset + 1, line))
        elif block:
            yield block[0][0], block
            block = []
    if block:
        yield block[0][0], block


def serialize_vtt(transcript: Transcript) -> str:
    """Serialize a Transcript to canonical WebVTT: numbered cues, two-digit
    hours, a "Speaker: text" payload per cue."""
    parts = ["WEBVTT\n"]
    for n, cue in enumerate(transcript.cues, start=1):
        parts.append(
            f"\n{n}\n"
            f"{format_timestamp(cue.start_ms)} --> {format_timestamp(cue.end_ms)}\n"
            f"{cue.speaker}: {cue.text}\n"
        )
    return "".join(parts)


def _normalize_alias_key(label: str) -> str:
    return " ".join(label.split()).casefold()


def normalize_speakers(transcript: Transcript, alias_map: dict[str, str]) -> Transcript:
    """Replace cue speaker labels found in alias_map with their canonical
    label. Key matching is case- and whitespace-insensitive; labels not in
    the map pass through unchanged."""
    canonical = {_normalize_alias_key(k): v for k, v in alias_map.items()}
    if not canonical:
        return Transcript(source_name=transcript.source_name, cues=list(transcript.cues))
    cues = []
    for cue in transcript.cues:
        target = canonical.get(_normalize_alias_key(cue.speaker))
        cues.append(replace(cue, speaker=target) if target is not None else cue)
    return Transcript(source_name=transcript.source_name, cues=cues)


def validate(transcript: Transcript) -> list[ParseIssue]:
    """Report suspicious transcript shapes as warnings (pure report).

    Flags: no speakers at all, a high unknown-speaker ratio, overlong cues
    (suspected transcript glitches), and very low speech coverage.
    """
    issues: list[ParseIssue] = []
    cues = transcript.cues
    if not transcript.speakers:
        issues.append(ParseIssue(0, "warning", "no speakers found"))
        return issues

    unknown = sum(1 for c in cues if c.speaker == UNKNOWN_SPEAKER)
    if cues and unknown / len(cues) > _UNKNOWN_RATIO_LIMIT:
        issues.append(
            ParseIssue(
                0,
                "warning",
                f"unknown speaker ratio {unknown}/{len(cues)} exceeds {_UNKNOWN_RATIO_LIMIT:.0%}",
            )
        )

    for n, cue in enumerate(cues, start=1):
        if cue.duration_ms() > _OVERLONG_CUE_MS:
            issues.append(
                ParseIssue(0, "warning", f"overlong cue #{n} ({cue.duration_ms()} ms)")
            )

    duration = transcript.duration_ms
    if duration > 0:
        covered = _union_ms(sorted((c.start_ms, c.end_ms) for c in cues))
        if covered < _MIN_SPEECH_COVERAGE * duration:
            issues.append(
                ParseIssue(
                    0,
                    "warning",
                    f"total speech {covered} ms is under {_MIN_SPEECH_COVERAGE:.0%} of duration {duration} ms",
                )
            )
    return issues


def _union_ms(sorted_intervals: list[tuple[int, int]]) -> int:
    total = 0
    reach = 0
    for start, end in sorted_intervals:
        if end <= reach:
            continue
        total += end - max(start, reach)
        reach = end
    return total
