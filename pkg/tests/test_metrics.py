"""Per-speaker metrics, flow matrix, filled pauses and the full-session
pipeline, checked against spec'd examples and the brute-force oracle."""

from __future__ import annotations

import random

from talkflow.jsonio import canonical_json
from talkflow.metrics import (
    compute_flow,
    compute_session_metrics,
    compute_speaker_metrics,
    count_filled_pauses,
)
from talkflow.turns import AnalysisConfig, classify_backchannels, segment_turns
from talkflow.vtt import RawCue, Transcript

from .genrand import random_transcript
from .oracle import (
    oracle_flow,
    oracle_kinds,
    oracle_segment,
    oracle_session_metrics,
    oracle_share,
    oracle_speaking_ms,
    oracle_word_count,
)

CFG = AnalysisConfig()


def T(*cues: tuple) -> Transcript:
    raw = [RawCue(start_ms=s, end_ms=e, speaker=sp, text=tx) for s, e, sp, tx in cues]
    raw.sort(key=lambda c: (c.start_ms, c.end_ms))
    return Transcript(source_name="test", cues=raw)


def _classified(transcript):
    return classify_backchannels(segment_turns(transcript, CFG), CFG)


# -- speaker metrics --------------------------------------------------------


def test_equal_talk_means_equal_share():
    metrics = compute_speaker_metrics(
        _classified(T((0, 30_000, "A", "long talk"), (31_500, 61_500, "B", "also long"))), CFG
    )
    assert metrics["A"].share == 0.5
    assert metrics["B"].share == 0.5
    assert metrics["A"].speaking_ms == 30_000


def test_single_speaker_share_is_one():
    metrics = compute_speaker_metrics(_classified(T((0, 1234, "A", "hi there"))), CFG)
    assert metrics["A"].share == 1.0


def test_empty_sequence_empty_map():
    assert compute_speaker_metrics(_classified(Transcript(source_name="x")), CFG) == {}


def test_speaker_metrics_match_oracle_on_synthetic_session():
    rng = random.Random(99)
    transcript = random_transcript(rng, max_cues=100)
    metrics = compute_speaker_metrics(_classified(transcript), CFG)
    speaking = oracle_speaking_ms(transcript.cues)
    words = oracle_word_count(transcript.cues)
    shares = oracle_share(speaking)
    assert set(metrics) == set(speaking)
    for speaker, m in metrics.items():
        assert m.speaking_ms == speaking[speaker]
        assert m.word_count == words[speaker]
        assert m.share == shares[speaker]


def test_turn_length_stats():
    metrics = compute_speaker_metrics(
        _classified(
            T((0, 2000, "A", "short"), (8000, 14000, "A", "a much longer stretch of talk"))
        ),
        CFG,
    )
    m = metrics["A"]
    assert m.floor_turn_count == 2
    assert m.longest_floor_turn_ms == 6000
    assert m.mean_floor_turn_ms == 4000.0
    assert m.longest_floor_turn_ms >= m.mean_floor_turn_ms


def test_words_per_minute():
    metrics = compute_speaker_metrics(_classified(T((0, 30_000, "A", "one two three four five"))), CFG)
    assert metrics["A"].words_per_minute == 5 / (30_000 / 60000.0)  # 10 wpm


def test_long_pauses_attributed_to_preceding_speaker():
    metrics = compute_speaker_metrics(
        _classified(T((0, 5000, "A", "before silence"), (9000, 10000, "B", "after"))), CFG
    )
    assert metrics["A"].long_pauses_after == 1
    assert metrics["B"].long_pauses_after == 0


def test_language_ms_partition():
    metrics = compute_speaker_metrics(
        _classified(
            T(
                (0, 2000, "A", "je pense que nous avons le temps"),
                (4000, 6000, "A", "and now I switch to the other language"),
                (8000, 9000, "A", "xyzzy plugh"),
            )
        ),
        CFG,
    )
    m = metrics["A"]
    assert m.language_ms == {"fr": 2000, "en": 2000, "unknown": 1000}
    assert sum(m.language_ms.values()) == m.speaking_ms


# -- filled pauses -----------------------------------------------------------


def test_count_filled_pauses_examples():
    assert count_filled_pauses("euh je pense que euh oui", CFG) == 2
    assert count_filled_pauses("", CFG) == 0
    assert count_filled_pauses("um... uh, well um", CFG) == 3  # "well" not in lexicon


# -- flow ---------------------------------------------------------------------


def test_flow_alternation():
    flow = compute_flow(
        _classified(
            T(
                (0, 2000, "A", "first"),
                (2500, 4000, "B", "second"),
                (4500, 6000, "A", "third"),
                (6500, 8000, "B", "fourth"),
            )
        )
    )
    idx = {s: i for i, s in enumerate(flow.speakers)}
    assert flow.counts[idx["A"]][idx["B"]] == 2
    assert flow.counts[idx["B"]][idx["A"]] == 1
    assert flow.total() == 3


def test_single_turn_zero_matrix():
    flow = compute_flow(_classified(T((0, 2000, "A", "alone"))))
    assert flow.total() == 0
    assert flow.counts == [[0]]


def test_self_transition_on_diagonal():
    # A talks, pauses past the merge gap, talks again: A -> A.
    flow = compute_flow(_classified(T((0, 2000, "A", "first"), (4500, 6000, "A", "again"))))
    assert flow.counts[0][0] == 1


def test_backchannels_invisible_to_flow():
    seq = _classified(
        T(
            (0, 10_000, "A", "a long explanation that keeps going"),
            (3000, 3400, "B", "ouais"),
            (11_000, 15_000, "A", "and continues after a breath"),
        )
    )
    assert [t.kind for t in seq.turns] == ["floor", "backchannel", "floor"]
    flow = compute_flow(seq)
    idx = {s: i for i, s in enumerate(flow.speakers)}
    assert flow.counts[idx["A"]][idx["A"]] == 1  # A retook the floor
    assert flow.counts[idx["B"]][idx["A"]] == 0
    assert flow.total() == 1


def test_flow_matches_oracle_on_random_sequences():
    rng = random.Random(123)
    for _ in range(30):
        transcript = random_transcript(rng, max_cues=60)
        flow = compute_flow(_classified(transcript)).to_dict()
        turns = oracle_segment(transcript.cues, CFG)
        assert flow == oracle_flow(turns, oracle_kinds(turns, CFG))


def test_flow_total_is_floor_turns_minus_one():
    rng = random.Random(321)
    for _ in range(30):
        seq = _classified(random_transcript(rng, max_cues=80))
        flow = compute_flow(seq)
        floor_turns = sum(1 for t in seq.turns if t.kind == "floor")
        assert flow.total() == max(0, floor_turns - 1)


# -- session metrics ----------------------------------------------------------


def test_single_cue_session():
    metrics = compute_session_metrics(T((0, 2000, "Alice", "bonjour à tous")), CFG)
    assert metrics.per_speaker["Alice"].share == 1.0
    assert metrics.flow.counts == [[0]]
    assert metrics.per_speaker["Alice"].language_ms == {"fr": 2000, "en": 0, "unknown": 0}
    assert metrics.total_speaking_ms == 2000
    assert metrics.session_duration_ms == 2000


def test_empty_transcript_session():
    metrics = compute_session_metrics(Transcript(source_name="empty"), CFG)
    assert metrics.per_speaker == {}
    assert metrics.flow.speakers == []
    assert metrics.total_speaking_ms == 0
    assert metrics.session_duration_ms == 0
    assert metrics.long_pause_count == 0


def test_determinism_byte_for_byte():
    rng = random.Random(5)
    transcript = random_transcript(rng, max_cues=120)
    first = canonical_json(compute_session_metrics(transcript, CFG).to_dict())
    second = canonical_json(compute_session_metrics(transcript, CFG).to_dict())
    assert first == second


def test_full_serialization_matches_oracle():
    rng = random.Random(777)
    for _ in range(20):
        transcript = random_transcript(rng, max_cues=80)
        engine = compute_session_metrics(transcript, CFG).to_dict()
        oracle = oracle_session_metrics(transcript.cues, CFG)
        assert canonical_json(engine) == canonical_json(oracle)


def test_shares_sum_to_one():
    rng = random.Random(31)
    for _ in range(30):
        transcript = random_transcript(rng, max_cues=60)
        metrics = compute_session_metrics(transcript, CFG)
        if metrics.total_speaking_ms > 0:
            total = sum(m.share for m in metrics.per_speaker.values())
            assert abs(total - 1.0) <= 1e-9
            for m in metrics.per_speaker.values():
                assert 0.0 <= m.share <= 1.0
