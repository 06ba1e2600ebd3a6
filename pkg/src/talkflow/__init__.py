"""talkflow: conversation metrics, flow graphs and seekable timelines from
videoconference transcripts of language-exchange sessions."""

from .langid import ENGLISH, FRENCH, LANGUAGES, UNKNOWN, classify_language
from .metrics import (
    FlowMatrix,
    SessionMetrics,
    SpeakerMetrics,
    compute_flow,
    compute_session_metrics,
    compute_speaker_metrics,
)
from .timeline import SeekResult, TimelineTrack, build_timeline, seek
from .turns import (
    BACKCHANNEL,
    FLOOR,
    AnalysisConfig,
    Gap,
    Turn,
    TurnSequence,
    classify_backchannels,
    detect_long_pauses,
    load_config,
    segment_turns,
    tokenize,
)
from .vtt import (
    UNKNOWN_SPEAKER,
    ParseIssue,
    RawCue,
    Transcript,
    normalize_speakers,
    parse_vtt,
    serialize_vtt,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisConfig",
    "BACKCHANNEL",
    "ENGLISH",
    "FLOOR",
    "FRENCH",
    "FlowMatrix",
    "Gap",
    "LANGUAGES",
    "ParseIssue",
    "RawCue",
    "SeekResult",
    "SessionMetrics",
    "SpeakerMetrics",
    "TimelineTrack",
    "Transcript",
    "Turn",
    "TurnSequence",
    "UNKNOWN",
    "UNKNOWN_SPEAKER",
    "build_timeline",
    "classify_backchannels",
    "classify_language",
    "compute_flow",
    "compute_session_metrics",
    "compute_speaker_metrics",
    "detect_long_pauses",
    "load_config",
    "normalize_speakers",
    "parse_vtt",
    "seek",
    "segment_turns",
    "serialize_vtt",
    "tokenize",
    "__version__",
]
