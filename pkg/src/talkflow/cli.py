"""Command-line entry points: offline analysis, transcript validation,
progression reports, and launching the HTTP service.

Exit codes: 0 success, 1 input error (unreadable/unparseable files, unknown
ids, occupied port), 2 internal error.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import socket
import sys
from pathlib import Path
from typing import Optional

from .jsonio import canonical_json
from .metrics import compute_session_metrics
from .store import NotFoundError, SessionStore, StoreError
from .turns import AnalysisConfig, load_config
from .vtt import parse_vtt

log = logging.getLogger(__name__)

# Fixed column order for --format csv (scalar SpeakerMetrics fields, with
# the per-language milliseconds flattened into one column per language).
CSV_COLUMNS = [
    "speaker",
    "speaking_ms",
    "share",
    "floor_turn_count",
    "backchannel_count",
    "mean_floor_turn_ms",
    "longest_floor_turn_ms",
    "word_count",
    "words_per_minute",
    "filled_pause_count",
    "long_pauses_after",
    "language_ms_fr",
    "language_ms_en",
    "language_ms_unknown",
]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="talkflow",
        description="Conversation metrics, flow graphs and timelines from videoconference transcripts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="compute session metrics for one transcript")
    p_analyze.add_argument("transcript", help="path to a WebVTT transcript")
    p_analyze.add_argument("--config", help="JSON analysis config file")
    p_analyze.add_argument("--format", choices=["json", "csv"], default="json")
    p_analyze.add_argument("--out", help="write output here instead of stdout")

    p_validate = sub.add_parser("validate", help="report parse issues; exit 0 iff no errors")
    p_validate.add_argument("transcript", help="path to a WebVTT transcript")

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--data-dir", required=True, help="store directory")
    p_serve.add_argument("--listen", default="127.0.0.1:8000", help="host:port to bind")
    p_serve.add_argument("--config", help="JSON analysis config file")
    p_serve.add_argument("--cors", action="store_true", help="send permissive CORS headers")

    p_report = sub.add_parser("report", help="per-participant weekly summary for a cohort")
    p_report.add_argument("--data-dir", required=True, help="store directory")
    p_report.add_argument("--cohort", required=True, help="cohort id")
    p_report.add_argument("--week", type=int, help="restrict to one week")

    return parser


def _load_cfg(path: Optional[str]) -> AnalysisConfig:
    if path is None:
        return AnalysisConfig()
    return load_config(path)


def _read_transcript(path_str: str):
    """Parse a transcript file; returns (transcript, issues) or None after
    printing errors (missing file, or parse errors) to stderr."""
    path = Path(path_str)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        print(f"error: cannot read {path_str}: {exc}", file=sys.stderr)
        return None
    transcript, issues = parse_vtt(raw, source_name=path.name)
    errors = [i for i in issues if i.severity == "error"]
    if errors:
        for issue in errors:
            print(f"error line {issue.line_number}: {issue.message}", file=sys.stderr)
        return None
    return transcript, issues


def _speaker_csv(metrics) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for sm in metrics.per_speaker.values():
        writer.writerow(
            [
                sm.speaker,
                sm.speaking_ms,
                repr(sm.share),
                sm.floor_turn_count,
                sm.backchannel_count,
                repr(sm.mean_floor_turn_ms),
                sm.longest_floor_turn_ms,
                sm.word_count,
                repr(sm.words_per_minute),
                sm.filled_pause_count,
                sm.long_pauses_after,
                sm.language_ms["fr"],
                sm.language_ms["en"],
                sm.language_ms["unknown"],
            ]
        )
    return buf.getvalue()


def _flow_csv(metrics) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["speaker"] + metrics.flow.speakers)
    for speaker, row in zip(metrics.flow.speakers, metrics.flow.counts):
        writer.writerow([speaker] + list(row))
    return buf.getvalue()


def cmd_analyze(args) -> int:
    parsed = _read_transcript(args.transcript)
    if parsed is None:
        return 1
    transcript, issues = parsed
    for issue in issues:
        print(f"warning line {issue.line_number}: {issue.message}", file=sys.stderr)
    try:
        cfg = _load_cfg(args.config)
    except (OSError, ValueError) as exc:
        print(f"error: bad config: {exc}", file=sys.stderr)
        return 1
    metrics = compute_session_metrics(transcript, cfg)

    if args.format == "json":
        text = canonical_json(metrics.to_dict())
        if args.out:
            Path(args.out).write_bytes(text.encode("utf-8"))
        else:
            print(text)
        return 0

    speakers_csv = _speaker_csv(metrics)
    flow_csv = _flow_csv(metrics)
    if args.out:
        out = Path(args.out)
        out.write_text(speakers_csv, encoding="utf-8")
        flow_path = out.with_suffix(".flow.csv")
        flow_path.write_text(flow_csv, encoding="utf-8")
        print(f"wrote {out} and {flow_path}", file=sys.stderr)
    else:
        sys.stdout.write(speakers_csv)
        sys.stdout.write("\n")
        sys.stdout.write(flow_csv)
    return 0


def cmd_validate(args) -> int:
    path = Path(args.transcript)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        print(f"error: cannot read {args.transcript}: {exc}", file=sys.stderr)
        return 1
    _, issues = parse_vtt(raw, source_name=path.name)
    for issue in issues:
        print(f"{issue.severity} line {issue.line_number}: {issue.message}")
    return 1 if any(i.severity == "error" for i in issues) else 0


def cmd_serve(args) -> int:
    try:
        cfg = _load_cfg(args.config)
    except (OSError, ValueError) as exc:
        print(f"error: bad config: {exc}", file=sys.stderr)
        return 1
    try:
        host, port_str = args.listen.rsplit(":", 1)
        port = int(port_str)
    except ValueError:
        print(f"error: --listen must be host:port, got {args.listen!r}", file=sys.stderr)
        return 1

    # Fail fast with a readable message when the port is taken.
    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.bind((host, port))
    except OSError as exc:
        print(f"error: cannot bind {args.listen}: {exc}", file=sys.stderr)
        return 1
    finally:
        probe.close()

    import uvicorn

    from .api import create_app

    app = create_app(args.data_dir, config=cfg, cors=args.cors)
    uvicorn.run(app, host=host, port=port, log_level="warning")
    return 0


def cmd_report(args) -> int:
    store = SessionStore(args.data_dir)
    try:
        cohort = store.get_cohort(args.cohort)
    except NotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    rows = []
    for participant in cohort.participants:
        try:
            rep = store.progression_report(participant.participant_id, args.cohort)
        except StoreError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        for point in rep.points:
            if args.week is not None and point.week_number != args.week:
                continue
            rows.append(
                (
                    participant.participant_id,
                    point.week_number,
                    f"{point.share:.3f}",
                    point.floor_turn_count,
                    point.speaking_ms,
                    point.filled_pause_count,
                )
            )
    header = ("participant", "week", "share", "floor_turns", "speaking_ms", "filled_pauses")
    widths = [
        max(len(str(header[i])), max((len(str(r[i])) for r in rows), default=0))
        for i in range(len(header))
    ]
    print("  ".join(str(h).ljust(widths[i]) for i, h in enumerate(header)))
    for row in rows:
        print("  ".join(str(v).ljust(widths[i]) for i, v in enumerate(row)))
    return 0


def main(argv: Optional[list] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    handlers = {
        "analyze": cmd_analyze,
        "validate": cmd_validate,
        "serve": cmd_serve,
        "report": cmd_report,
    }
    try:
        return handlers[args.command](args)
    except KeyboardInterrupt:
        return 130
    except Exception as exc:  # pragma: no cover - safety net
        log.error("internal error: %s", exc, exc_info=True)
        return 2


if __name__ == "__main__":
    sys.exit(main())
