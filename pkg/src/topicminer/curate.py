"""Cleaning and iterative merging of a ranked phrase window.

A curation session walks the top window of a ranked list, most popular
phrase first.  Each phrase gets one live decision: accept it as a
canonical topic, block it as irrelevant, or merge it into an already
accepted topic (its counts are attributed to the target).  The session
ends when target_k distinct topics are accepted.

Decisions are journaled append-only (one JSON record per line, fsynced)
so a crashed or resumed session replays to exactly the live state.
Batch cleaning uses a RuleSet: a blocklist plus merge groups, the same
operations in non-interactive form.
"""

from __future__ import annotations

import json
import os
import uuid
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable

from .errors import DataError
from .rank import PlotRow, RankedList, RankedRow, export_plot_data

ACTIONS = ("accept", "block", "merge")


class RulesError(DataError):
    pass


class CurationError(DataError):
    """Session-level failure with an API-friendly code."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code  # not_found | conflict | invalid | complete
        self.message = message


@dataclass(frozen=True)
class RuleSet:
    blocklist: frozenset[str] = frozenset()
    merge_groups: dict[str, frozenset[str]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for canonical, members in self.merge_groups.items():
            if canonical in members:
                raise RulesError(f"merge group {canonical!r} contains itself")
            group = {canonical} | set(members)
            overlap = seen & group
            if overlap:
                raise RulesError(f"overlapping merge groups: {sorted(overlap)}")
            seen |= group
        blocked = self.blocklist & seen
        if blocked:
            raise RulesError(f"phrases both blocked and merged: {sorted(blocked)}")


def load_rules(path: str | Path) -> RuleSet:
    """Parse a rules file.

    Sections: ``[blocklist]`` holds one stemmed phrase per line;
    ``[merge:<canonical>]`` lists the member phrases absorbed by
    <canonical>.  '#' starts a comment.
    """
    path = Path(path)
    if not path.exists():
        raise RulesError(f"rules file not found: {path}")
    blocklist: set[str] = set()
    groups: dict[str, set[str]] = {}
    section: str | None = None
    target: str | None = None
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            header = line[1:-1].strip()
            if header == "blocklist":
                section, target = "blocklist", None
            elif header.startswith("merge:"):
                section = "merge"
                target = header.split(":", 1)[1].strip()
                if not target:
                    raise RulesError(f"{path}:{lineno}: empty merge target")
                groups.setdefault(target, set())
            else:
                raise RulesError(f"{path}:{lineno}: unknown section {header!r}")
            continue
        if section == "blocklist":
            blocklist.add(line.lower())
        elif section == "merge":
            groups[target].add(line.lower())
        else:
            raise RulesError(f"{path}:{lineno}: phrase outside any section")
    return RuleSet(
        blocklist=frozenset(blocklist),
        merge_groups={k: frozenset(v) for k, v in sorted(groups.items())},
    )


def write_rules(path: str | Path, rules: RuleSet) -> None:
    lines = ["[blocklist]"]
    lines += sorted(rules.blocklist)
    for canonical in sorted(rules.merge_groups):
        lines.append(f"[merge:{canonical}]")
        lines += sorted(rules.merge_groups[canonical])
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _resort(rows: Iterable[RankedRow]) -> RankedList:
    ordered = sorted(rows, key=lambda r: (-r.weighted_total, r.phrase))
    return [replace(row, rank=i) for i, row in enumerate(ordered, start=1)]


def _merge_rows(target: RankedRow, members: list[RankedRow]) -> RankedRow:
    per_source = dict(target.per_source)
    total = target.weighted_total
    for member in members:
        for source_id, n in member.per_source.items():
            per_source[source_id] = per_source.get(source_id, 0) + n
        total += member.weighted_total
    return replace(
        target, per_source=dict(sorted(per_source.items())), weighted_total=total
    )


def apply_rules(ranked: RankedList, rules: RuleSet) -> RankedList:
    """Drop blocklisted rows, fold merge-group members into canonicals,
    re-sort by the standard total order."""
    member_to_target = {
        member: canonical
        for canonical, members in rules.merge_groups.items()
        for member in members
    }
    kept: dict[str, RankedRow] = {}
    pending: dict[str, list[RankedRow]] = {}
    for row in ranked:
        if row.phrase in rules.blocklist:
            continue
        if row.phrase in member_to_target:
            pending.setdefault(member_to_target[row.phrase], []).append(row)
            continue
        kept[row.phrase] = row
    for canonical, members in sorted(pending.items()):
        base = kept.get(canonical)
        if base is None:
            base = RankedRow(
                rank=0, phrase=canonical, display_form=canonical,
                weighted_total=0.0, per_source={},
            )
        kept[canonical] = _merge_rows(base, sorted(members, key=lambda r: r.phrase))
    return _resort(kept.values())


@dataclass(frozen=True)
class Decision:
    seq: int
    phrase: str
    action: str
    target: str | None
    ts: str


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="milliseconds")


class DecisionJournal:
    """Append-only JSONL event log, fsynced per append."""

    def __init__(self, path: str | Path):
        self.path = Path(path)

    def append(self, event: dict) -> None:
        with self.path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(event, sort_keys=True) + "\n")
            fh.flush()
            os.fsync(fh.fileno())

    def events(self) -> list[dict]:
        if not self.path.exists():
            return []
        events = []
        for lineno, line in enumerate(self.path.read_text(encoding="utf-8").splitlines(), 1):
            line = line.strip()
            if not line:
                continue
            try:
                events.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise DataError(f"{self.path}:{lineno}: invalid journal line ({exc.msg})") from exc
        return events


class CurationSession:
    """Single-writer curation state over a frozen ranked window."""

    def __init__(
        self,
        window: RankedList,
        target_k: int = 10,
        session_id: str | None = None,
        journal: DecisionJournal | None = None,
    ):
        if target_k < 1:
            raise CurationError("invalid", "target_k must be >= 1")
        self.session_id = session_id or uuid.uuid4().hex[:12]
        self.window: RankedList = list(window)
        self.target_k = target_k
        self.journal = journal
        self.decisions: list[Decision] = []
        self._by_phrase: dict[str, RankedRow] = {row.phrase: row for row in self.window}
        self._decided: dict[str, Decision] = {}
        self.accepted: list[str] = []
        self.absorbed: dict[str, str] = {}  # member phrase -> accepted target

    # -- queries ------------------------------------------------------

    @property
    def complete(self) -> bool:
        return len(self.accepted) >= self.target_k

    def next_candidate(self) -> str | None:
        """Highest-ranked undecided phrase, or None when done."""
        if self.complete:
            return None
        for row in self.window:
            if row.phrase not in self._decided:
                return row.phrase
        return None

    def candidates(self, limit: int | None = None) -> RankedList:
        rows = [row for row in self.window if row.phrase not in self._decided]
        return rows if limit is None else rows[: max(limit, 0)]

    def summary(self) -> dict:
        return {
            "session_id": self.session_id,
            "target_k": self.target_k,
            "accepted": list(self.accepted),
            "decisions_count": len(self.decisions),
            "window_size": len(self.window),
            "complete": self.complete,
        }

    # -- mutations ----------------------------------------------------

    def decide(self, phrase: str, action: str, target: str | None = None, ts: str | None = None) -> Decision:
        self._validate(phrase, action, target)
        decision = Decision(
            seq=len(self.decisions) + 1,
            phrase=phrase,
            action=action,
            target=target if action == "merge" else None,
            ts=ts or _now(),
        )
        self._apply(decision)
        if self.journal is not None:
            self.journal.append(
                {
                    "event": "decision",
                    "seq": decision.seq,
                    "phrase": decision.phrase,
                    "action": decision.action,
                    "target": decision.target,
                    "ts": decision.ts,
                }
            )
        return decision

    def undo(self) -> Decision:
        """Remove exactly the highest-seq decision and rebuild state."""
        if not self.decisions:
            raise CurationError("not_found", "decision log is empty")
        removed = self.decisions.pop()
        remaining = self.decisions
        self.decisions = []
        self._decided = {}
        self.accepted = []
        self.absorbed = {}
        for d in remaining:
            self._apply(d)
        if self.journal is not None:
            self.journal.append({"event": "undo", "seq": removed.seq, "ts": _now()})
        return removed

    def _validate(self, phrase: str, action: str, target: str | None) -> None:
        if action not in ACTIONS:
            raise CurationError("invalid", f"unknown action {action!r}")
        if phrase not in self._by_phrase:
            raise CurationError("not_found", f"phrase {phrase!r} not in window")
        if phrase in self._decided:
            raise CurationError("conflict", f"phrase {phrase!r} already decided")
        if action == "accept" and self.complete:
            raise CurationError("complete", "session complete: target_k topics accepted")
        if action == "merge":
            if not target:
                raise CurationError("invalid", "merge requires a target topic")
            if target not in self.accepted:
                raise CurationError("invalid", f"merge target {target!r} is not an accepted topic")
            if target == phrase:
                raise CurationError("invalid", "cannot merge a phrase into itself")

    def _apply(self, decision: Decision) -> None:
        self.decisions.append(decision)
        self._decided[decision.phrase] = decision
        if decision.action == "accept":
            self.accepted.append(decision.phrase)
        elif decision.action == "merge":
            self.absorbed[decision.phrase] = decision.target

    # -- persistence --------------------------------------------------

    @classmethod
    def replay(
        cls,
        events: Iterable[dict],
        window: RankedList,
        target_k: int = 10,
        session_id: str | None = None,
        journal: DecisionJournal | None = None,
    ) -> "CurationSession":
        """Rebuild a session from journal events, validating each step."""
        session = cls(window=window, target_k=target_k, session_id=session_id)
        for event in events:
            kind = event.get("event", "decision")
            if kind == "undo":
                if not session.decisions:
                    raise DataError(f"replay: undo with empty log (seq {event.get('seq')})")
                session.undo()
                continue
            seq = event.get("seq")
            expected = len(session.decisions) + 1
            if seq != expected:
                raise DataError(f"replay: expected seq {expected}, got {seq}")
            try:
                session.decide(
                    phrase=event["phrase"],
                    action=event["action"],
                    target=event.get("target"),
                    ts=event.get("ts"),
                )
            except CurationError as exc:
                raise DataError(f"replay: invalid decision at seq {seq}: {exc.message}") from exc
            except KeyError as exc:
                raise DataError(f"replay: missing field {exc} at seq {seq}") from exc
        session.journal = journal
        return session

    @classmethod
    def open(
        cls,
        window: RankedList,
        journal_path: str | Path,
        target_k: int = 10,
        session_id: str | None = None,
    ) -> "CurationSession":
        """Open a journaled session, resuming from the journal if present."""
        journal = DecisionJournal(journal_path)
        return cls.replay(
            journal.events(), window=window, target_k=target_k,
            session_id=session_id, journal=journal,
        )

    # -- exports ------------------------------------------------------

    def export_rules(self) -> RuleSet:
        """Blocks become the blocklist, merges the groups per target."""
        groups: dict[str, set[str]] = {}
        blocklist = set()
        for d in self.decisions:
            if d.action == "block":
                blocklist.add(d.phrase)
            elif d.action == "merge":
                groups.setdefault(d.target, set()).add(d.phrase)
        return RuleSet(
            blocklist=frozenset(blocklist),
            merge_groups={k: frozenset(v) for k, v in sorted(groups.items())},
        )

    def export_topics(self) -> RankedList:
        """Final table: accepted topics with absorbed counts, then the
        remaining undecided rows, in the standard total order."""
        absorbed_by_target: dict[str, list[RankedRow]] = {}
        for member, target in self.absorbed.items():
            absorbed_by_target.setdefault(target, []).append(self._by_phrase[member])
        rows = []
        for row in self.window:
            decision = self._decided.get(row.phrase)
            if decision is None:
                rows.append(row)
            elif decision.action == "accept":
                members = sorted(absorbed_by_target.get(row.phrase, []), key=lambda r: r.phrase)
                rows.append(_merge_rows(row, members))
        return _resort(rows)

    def export_plot(self, upto: int = 20) -> list[PlotRow]:
        return export_plot_data(self.export_topics(), highlight_k=self.target_k, upto=upto)
