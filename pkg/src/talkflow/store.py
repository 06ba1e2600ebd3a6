"""Durable session/cohort storage and week-over-week progression.

Plain JSON documents in a data directory: one subdirectory per cohort with
a cohort document, a session index, and one directory per session holding
the session document plus the copied transcript and media files. All
document writes go through a temporary file and an atomic rename, so
readers never observe torn documents. Writes to one cohort are serialized
by a per-cohort lock within the process; cross-cohort writes may run in
parallel.
"""

from __future__ import annotations

import shutil
import threading
import uuid
from dataclasses import dataclass, field
from datetime import date, datetime, timezone
from pathlib import Path
from typing import Optional, Union

from .jsonio import read_json, write_json_atomic

TARGET_LANGUAGES = ("fr", "en")


class StoreError(Exception):
    """Base class for store failures."""


class NotFoundError(StoreError):
    pass


class ConflictError(StoreError):
    pass


class ValidationError(StoreError):
    pass


@dataclass
class Participant:
    participant_id: str
    display_name: str
    institution: str
    target_language: str  # "fr" | "en"

    def to_dict(self) -> dict:
        return {
            "participant_id": self.participant_id,
            "display_name": self.display_name,
            "institution": self.institution,
            "target_language": self.target_language,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Participant":
        return cls(
            participant_id=data["participant_id"],
            display_name=data["display_name"],
            institution=data["institution"],
            target_language=data["target_language"],
        )


@dataclass
class Group:
    group_id: str
    participant_ids: list

    def to_dict(self) -> dict:
        return {"group_id": self.group_id, "participant_ids": list(self.participant_ids)}

    @classmethod
    def from_dict(cls, data: dict) -> "Group":
        return cls(group_id=data["group_id"], participant_ids=list(data["participant_ids"]))


@dataclass
class Cohort:
    cohort_id: str
    name: str
    participants: list = field(default_factory=list)
    groups: list = field(default_factory=list)

    def validate(self) -> None:
        if not self.cohort_id:
            raise ValidationError("cohort_id must be non-empty")
        ids = [p.participant_id for p in self.participants]
        if len(set(ids)) != len(ids):
            raise ValidationError("participant_id values must be unique within a cohort")
        known = set(ids)
        for p in self.participants:
            if p.target_language not in TARGET_LANGUAGES:
                raise ValidationError(
                    f"participant {p.participant_id!r}: target_language must be one of {TARGET_LANGUAGES}"
                )
        for g in self.groups:
            if len(g.participant_ids) < 2:
                raise ValidationError(f"group {g.group_id!r} must have at least 2 members")
            for pid in g.participant_ids:
                if pid not in known:
                    raise ValidationError(f"group {g.group_id!r} references unknown participant {pid!r}")

    def to_dict(self) -> dict:
        return {
            "cohort_id": self.cohort_id,
            "name": self.name,
            "participants": [p.to_dict() for p in self.participants],
            "groups": [g.to_dict() for g in self.groups],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Cohort":
        return cls(
            cohort_id=data["cohort_id"],
            name=data.get("name", ""),
            participants=[Participant.from_dict(p) for p in data.get("participants", [])],
            groups=[Group.from_dict(g) for g in data.get("groups", [])],
        )


@dataclass
class SessionRecord:
    """One stored weekly session. transcript_path/media_path are relative to
    the data directory once stored; before save_session they may point at
    the source files to copy in. metrics holds the serialized SessionMetrics
    document."""

    session_id: str
    cohort_id: str
    group_id: str
    week_number: int
    recorded_at: str  # ISO date
    transcript_path: str
    media_path: Optional[str]
    speaker_map: dict  # transcript label -> participant_id (or None)
    metrics: dict
    created_at: str = ""

    def to_dict(self) -> dict:
        return {
            "session_id": self.session_id,
            "cohort_id": self.cohort_id,
            "group_id": self.group_id,
            "week_number": self.week_number,
            "recorded_at": self.recorded_at,
            "transcript_path": self.transcript_path,
            "media_path": self.media_path,
            "speaker_map": dict(self.speaker_map),
            "metrics": self.metrics,
            "created_at": self.created_at,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SessionRecord":
        return cls(
            session_id=data["session_id"],
            cohort_id=data["cohort_id"],
            group_id=data["group_id"],
            week_number=data["week_number"],
            recorded_at=data["recorded_at"],
            transcript_path=data["transcript_path"],
            media_path=data.get("media_path"),
            speaker_map=dict(data.get("speaker_map", {})),
            metrics=data["metrics"],
            created_at=data.get("created_at", ""),
        )


@dataclass
class ProgressionPoint:
    week_number: int
    share: float
    floor_turn_count: int
    speaking_ms: int
    filled_pause_count: int

    def to_dict(self) -> dict:
        return {
            "week_number": self.week_number,
            "share": self.share,
            "floor_turn_count": self.floor_turn_count,
            "speaking_ms": self.speaking_ms,
            "filled_pause_count": self.filled_pause_count,
        }


@dataclass
class ProgressionReport:
    """Weekly participation series for one participant, with pointwise
    differences between consecutive points."""

    participant_id: str
    points: list = field(default_factory=list)
    deltas: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "participant_id": self.participant_id,
            "points": [p.to_dict() for p in self.points],
            "deltas": [d.to_dict() for d in self.deltas],
        }


class SessionStore:
    """Filesystem-backed store for cohorts, sessions and their artifacts."""

    def __init__(self, data_dir: Union[str, Path]):
        self.data_dir = Path(data_dir)
        (self.data_dir / "cohorts").mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    # -- paths ----------------------------------------------------------

    def _cohort_dir(self, cohort_id: str) -> Path:
        safe = cohort_id.replace("/", "_").replace("\\", "_").replace("..", "_")
        return self.data_dir / "cohorts" / safe

    def resolve(self, stored_path: str) -> Path:
        """Absolute path for a stored (data-dir-relative) file reference."""
        return self.data_dir / stored_path

    def _lock_for(self, cohort_id: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(cohort_id, threading.Lock())

    # -- cohorts --------------------------------------------------------

    def save_cohort(self, cohort: Cohort) -> str:
        cohort.validate()
        with self._lock_for(cohort.cohort_id):
            cdir = self._cohort_dir(cohort.cohort_id)
            if (cdir / "cohort.json").exists():
                raise ConflictError(f"cohort {cohort.cohort_id!r} already exists")
            (cdir / "sessions").mkdir(parents=True, exist_ok=True)
            write_json_atomic(cdir / "cohort.json", cohort.to_dict())
            write_json_atomic(cdir / "index.json", {"sessions": {}})
        return cohort.cohort_id

    def get_cohort(self, cohort_id: str) -> Cohort:
        path = self._cohort_dir(cohort_id) / "cohort.json"
        if not path.exists():
            raise NotFoundError(f"cohort {cohort_id!r} not found")
        return Cohort.from_dict(read_json(path))

    def list_cohorts(self) -> list:
        out = []
        for path in sorted((self.data_dir / "cohorts").glob("*/cohort.json")):
            out.append(Cohort.from_dict(read_json(path)))
        return out

    # -- sessions -------------------------------------------------------

    def save_session(self, record: SessionRecord) -> str:
        """Copy the transcript (and media, when present) into the store and
        persist the session document. Fails with ConflictError when the
        (cohort, group, week) slot is already taken."""
        cohort = self.get_cohort(record.cohort_id)
        self._validate_record(record, cohort)

        with self._lock_for(record.cohort_id):
            cdir = self._cohort_dir(record.cohort_id)
            index = read_json(cdir / "index.json")
            for entry in index["sessions"].values():
                if entry["group_id"] == record.group_id and entry["week_number"] == record.week_number:
                    raise ConflictError(
                        f"session for group {record.group_id!r} week {record.week_number} already exists"
                    )

            session_id = record.session_id or uuid.uuid4().hex
            final_dir = cdir / "sessions" / session_id
            if final_dir.exists():
                raise ConflictError(f"session id {session_id!r} already exists")
            tmp_dir = cdir / "sessions" / f".tmp-{session_id}"
            if tmp_dir.exists():
                shutil.rmtree(tmp_dir)
            tmp_dir.mkdir(parents=True)
            try:
                rel = f"cohorts/{cdir.name}/sessions/{session_id}"
                shutil.copyfile(record.transcript_path, tmp_dir / "transcript.vtt")
                stored = SessionRecord(
                    session_id=session_id,
                    cohort_id=record.cohort_id,
                    group_id=record.group_id,
                    week_number=record.week_number,
                    recorded_at=record.recorded_at,
                    transcript_path=f"{rel}/transcript.vtt",
                    media_path=None,
                    speaker_map=dict(record.speaker_map),
                    metrics=record.metrics,
                    created_at=record.created_at
                    or datetime.now(timezone.utc).isoformat(timespec="seconds"),
                )
                if record.media_path:
                    suffix = Path(record.media_path).suffix or ".bin"
                    shutil.copyfile(record.media_path, tmp_dir / f"media{suffix}")
                    stored.media_path = f"{rel}/media{suffix}"
                write_json_atomic(tmp_dir / "session.json", stored.to_dict())
                tmp_dir.rename(final_dir)
            except BaseException:
                shutil.rmtree(tmp_dir, ignore_errors=True)
                raise

            index["sessions"][session_id] = {
                "group_id": stored.group_id,
                "week_number": stored.week_number,
                "recorded_at": stored.recorded_at,
            }
            write_json_atomic(cdir / "index.json", index)
        return session_id

    def _validate_record(self, record: SessionRecord, cohort: Cohort) -> None:
        if record.week_number < 1:
            raise ValidationError("week_number must be >= 1")
        try:
            date.fromisoformat(record.recorded_at)
        except ValueError as exc:
            raise ValidationError(f"recorded_at must be an ISO date: {exc}") from exc
        if record.group_id not in {g.group_id for g in cohort.groups}:
            raise ValidationError(f"unknown group {record.group_id!r} in cohort {cohort.cohort_id!r}")
        known = {p.participant_id for p in cohort.participants}
        for label, pid in record.speaker_map.items():
            if pid is not None and pid not in known:
                raise ValidationError(f"speaker_map maps {label!r} to unknown participant {pid!r}")
        metric_speakers = set(record.metrics.get("per_speaker", {}))
        unmapped = metric_speakers - set(record.speaker_map)
        if unmapped:
            raise ValidationError(f"speakers not covered by speaker_map: {sorted(unmapped)}")

    def _session_path(self, session_id: str) -> Optional[Path]:
        for cdir in (self.data_dir / "cohorts").iterdir():
            candidate = cdir / "sessions" / session_id / "session.json"
            if candidate.exists():
                return candidate
        return None

    def load_session(self, session_id: str) -> SessionRecord:
        path = self._session_path(session_id)
        if path is None:
            raise NotFoundError(f"session {session_id!r} not found")
        return SessionRecord.from_dict(read_json(path))

    def list_sessions(
        self,
        cohort_id: Optional[str] = None,
        group_id: Optional[str] = None,
        week_number: Optional[int] = None,
    ) -> list:
        records = []
        cohort_dirs = (
            [self._cohort_dir(cohort_id)] if cohort_id else sorted((self.data_dir / "cohorts").iterdir())
        )
        for cdir in cohort_dirs:
            index_path = cdir / "index.json"
            if not index_path.exists():
                if cohort_id:
                    raise NotFoundError(f"cohort {cohort_id!r} not found")
                continue
            for sid in read_json(index_path)["sessions"]:
                record = SessionRecord.from_dict(read_json(cdir / "sessions" / sid / "session.json"))
                if group_id is not None and record.group_id != group_id:
                    continue
                if week_number is not None and record.week_number != week_number:
                    continue
                records.append(record)
        records.sort(key=lambda r: (r.week_number, r.recorded_at, r.session_id))
        return records

    def delete_session(self, session_id: str) -> None:
        """Remove a stored session and its copied files (the documented
        erase operation)."""
        path = self._session_path(session_id)
        if path is None:
            raise NotFoundError(f"session {session_id!r} not found")
        session_dir = path.parent
        cdir = session_dir.parent.parent
        cohort_id = read_json(cdir / "cohort.json")["cohort_id"]
        with self._lock_for(cohort_id):
            index = read_json(cdir / "index.json")
            index["sessions"].pop(session_id, None)
            write_json_atomic(cdir / "index.json", index)
            shutil.rmtree(session_dir, ignore_errors=True)

    # -- progression ------------------------------------------------------

    def progression_report(self, participant_id: str, cohort_id: str) -> ProgressionReport:
        """One point per stored session whose speaker_map assigns a metrics
        speaker to this participant, ordered by week; deltas are pointwise
        differences of consecutive points."""
        cohort = self.get_cohort(cohort_id)
        if participant_id not in {p.participant_id for p in cohort.participants}:
            raise NotFoundError(f"participant {participant_id!r} not in cohort {cohort_id!r}")

        points = []
        for record in self.list_sessions(cohort_id=cohort_id):
            labels = [lbl for lbl, pid in record.speaker_map.items() if pid == participant_id]
            rows = [
                record.metrics["per_speaker"][lbl]
                for lbl in labels
                if lbl in record.metrics.get("per_speaker", {})
            ]
            if not rows:
                continue
            points.append(
                ProgressionPoint(
                    week_number=record.week_number,
                    share=sum(r["share"] for r in rows),
                    floor_turn_count=sum(r["floor_turn_count"] for r in rows),
                    speaking_ms=sum(r["speaking_ms"] for r in rows),
                    filled_pause_count=sum(r["filled_pause_count"] for r in rows),
                )
            )

        deltas = [
            ProgressionPoint(
                week_number=b.week_number - a.week_number,
                share=b.share - a.share,
                floor_turn_count=b.floor_turn_count - a.floor_turn_count,
                speaking_ms=b.speaking_ms - a.speaking_ms,
                filled_pause_count=b.filled_pause_count - a.filled_pause_count,
            )
            for a, b in zip(points, points[1:])
        ]
        return ProgressionReport(participant_id=participant_id, points=points, deltas=deltas)
