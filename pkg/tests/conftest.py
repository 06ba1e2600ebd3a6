"""Shared fixtures: fixture paths, the bundled sample session, a quadruplet
cohort, schema validation against the published JSON Schemas, and a
deterministic seven-week cohort builder."""

from __future__ import annotations

import json
import random
from pathlib import Path

import pytest
from jsonschema import Draft202012Validator
from referencing import Registry, Resource

from talkflow.metrics import compute_session_metrics
from talkflow.store import Cohort, Group, Participant, SessionRecord, SessionStore
from talkflow.turns import AnalysisConfig
from talkflow.vtt import Transcript, parse_vtt, serialize_vtt

from .genrand import random_cues

FIXTURES = Path(__file__).parent / "fixtures"
CORPUS = FIXTURES / "corpus"
SCHEMA_DIR = Path(__file__).parent.parent / "docs" / "schemas"

QUAD_SPEAKERS = ["Aoife Byrne", "Liam Walsh", "Camille Dubois", "Théo Mercier"]
QUAD_SPEAKER_MAP = {
    "Aoife Byrne": "p-aoife",
    "Liam Walsh": "p-liam",
    "Camille Dubois": "p-camille",
    "Théo Mercier": "p-theo",
    "?": None,
}

_registry = None


def _schema_registry() -> Registry:
    global _registry
    if _registry is None:
        resources = []
        for path in SCHEMA_DIR.glob("*.json"):
            contents = json.loads(path.read_text(encoding="utf-8"))
            resources.append((contents["$id"], Resource.from_contents(contents)))
        _registry = Registry().with_resources(resources)
    return _registry


def assert_valid(instance, schema_name: str) -> None:
    """Validate a payload against docs/schemas/<schema_name>."""
    contents = json.loads((SCHEMA_DIR / schema_name).read_text(encoding="utf-8"))
    validator = Draft202012Validator(contents, registry=_schema_registry())
    errors = sorted(validator.iter_errors(instance), key=lambda e: list(e.path))
    assert not errors, f"{schema_name}: {[e.message for e in errors[:5]]}"


@pytest.fixture
def cfg() -> AnalysisConfig:
    return AnalysisConfig()


@pytest.fixture(scope="session")
def sample_vtt_bytes() -> bytes:
    return (FIXTURES / "sample_session.vtt").read_bytes()


@pytest.fixture
def sample_transcript(sample_vtt_bytes) -> Transcript:
    transcript, issues = parse_vtt(sample_vtt_bytes, source_name="sample_session.vtt")
    assert not issues
    return transcript


@pytest.fixture(scope="session")
def golden_metrics_bytes() -> bytes:
    return (FIXTURES / "golden_session_metrics.json").read_bytes()


def quad_cohort(cohort_id: str = "c1") -> Cohort:
    """The bundled sample's cohort: two Dublin students learning French and
    two Paris students learning English, in one group of four."""
    return Cohort(
        cohort_id=cohort_id,
        name="Autumn exchange",
        participants=[
            Participant("p-aoife", "Aoife Byrne", "Dublin", "fr"),
            Participant("p-liam", "Liam Walsh", "Dublin", "fr"),
            Participant("p-camille", "Camille Dubois", "Paris", "en"),
            Participant("p-theo", "Théo Mercier", "Paris", "en"),
        ],
        groups=[Group("g1", ["p-aoife", "p-liam", "p-camille", "p-theo"])],
    )


def build_week_transcript(week: int, seed: int = 4200) -> Transcript:
    """Deterministic synthetic transcript for one week of the fixed
    quadruplet; every speaker is guaranteed to appear."""
    rng = random.Random(seed + week)
    cues = random_cues(
        rng,
        max_cues=120,
        allow_overlap=False,
        speakers=list(QUAD_SPEAKERS),
    )
    if not cues:  # degenerate draw: force a non-empty week
        cues = random_cues(rng, max_cues=120, allow_overlap=False, speakers=list(QUAD_SPEAKERS))
    return Transcript(source_name=f"week{week}.vtt", cues=cues)


def populate_seven_weeks(store: SessionStore, tmp_path: Path, cohort_id: str = "c1") -> list:
    """Create the quadruplet cohort and store seven weekly sessions built
    from seeded synthetic transcripts. Returns the transcripts by week."""
    store.save_cohort(quad_cohort(cohort_id))
    cfg = AnalysisConfig()
    transcripts = []
    for week in range(1, 8):
        transcript = build_week_transcript(week)
        transcripts.append(transcript)
        path = tmp_path / f"week{week}.vtt"
        path.write_text(serialize_vtt(transcript), encoding="utf-8")
        metrics = compute_session_metrics(transcript, cfg)
        speaker_map = {label: QUAD_SPEAKER_MAP.get(label) for label in transcript.speakers}
        store.save_session(
            SessionRecord(
                session_id=f"s-week{week}",
                cohort_id=cohort_id,
                group_id="g1",
                week_number=week,
                recorded_at=f"2026-10-{week:02d}",
                transcript_path=str(path),
                media_path=None,
                speaker_map=speaker_map,
                metrics=metrics.to_dict(),
            )
        )
    return transcripts
