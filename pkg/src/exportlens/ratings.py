"""Per-element sensitivity ratings with local file persistence.

Ratings are the one piece of state that outlives a session. They key on
stable element ids, so re-parsing the same archive keeps every rating. The
store never leaves the local machine; persistence is a plain JSON file the
user can inspect or delete.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from .errors import UnknownElementError, ValidationError
from .model import format_time


@dataclass(frozen=True)
class SensitivityRating:
    element_id: str
    value: float  # 0 = not very sensitive, 1 = very sensitive
    rated_at: datetime


class SensitivityStore:
    """Latest-wins rating store. Single writer; reads see consistent state."""

    def __init__(self, path: str | Path | None = None):
        self.path = Path(path) if path else None
        self._ratings: dict[str, SensitivityRating] = {}
        if self.path and self.path.exists():
            self.load(self.path)

    def __len__(self) -> int:
        return len(self._ratings)

    def get(self, element_id: str) -> SensitivityRating | None:
        return self._ratings.get(element_id)

    def ratings(self) -> list[SensitivityRating]:
        return sorted(self._ratings.values(), key=lambda r: r.element_id)

    def rate(
        self,
        element_id: str,
        value: float,
        known_ids=None,
        rated_at: datetime | None = None,
    ) -> SensitivityRating:
        """Record a rating, replacing any earlier one for the same element.

        ``known_ids`` (a container supporting ``in``) guards against rating
        elements that are not part of any loaded dataset; pass None to skip
        the check (e.g. when replaying a ratings file).
        """
        if not (0.0 <= value <= 1.0):
            raise ValidationError(f"rating {value} outside [0, 1]", field="value")
        if known_ids is not None and element_id not in known_ids:
            raise UnknownElementError(f"no loaded element with id {element_id}")
        if rated_at is None:
            rated_at = datetime.now(timezone.utc).replace(microsecond=0)
        rating = SensitivityRating(element_id=element_id, value=value, rated_at=rated_at)
        self._ratings[element_id] = rating
        return rating

    def average(self, element_ids=None) -> float | None:
        """Arithmetic mean over rated elements, optionally restricted to a
        selection of element ids. None when nothing in scope is rated.

        Ids are content-derived, so identical records in different datasets
        share one id (and one rating); duplicates in the selection are
        counted once.
        """
        if element_ids is None:
            values = [r.value for r in self._ratings.values()]
        else:
            seen = set()
            values = []
            for eid in element_ids:
                if eid in seen:
                    continue
                seen.add(eid)
                rating = self._ratings.get(eid)
                if rating is not None:
                    values.append(rating.value)
        if not values:
            return None
        return sum(values) / len(values)

    def save(self, path: str | Path | None = None) -> None:
        """Atomic write (temp file + rename) of all ratings, sorted by id."""
        target = Path(path) if path else self.path
        if target is None:
            raise ValueError("no ratings file path configured")
        doc = [
            {
                "element_id": r.element_id,
                "value": r.value,
                "rated_at": format_time(r.rated_at),
            }
            for r in self.ratings()
        ]
        payload = json.dumps(doc, ensure_ascii=False, indent=2) + "\n"
        target.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp_name = tempfile.mkstemp(dir=target.parent, prefix=".ratings-", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(payload)
            os.replace(tmp_name, target)
        except BaseException:
            try:
                os.unlink(tmp_name)
            except OSError:
                pass
            raise

    def load(self, path: str | Path) -> None:
        """Replace in-memory state with the contents of a ratings file."""
        with open(path, "rb") as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ValidationError(f"ratings file is not JSON: {exc}") from None
        if not isinstance(doc, list):
            raise ValidationError("ratings file must hold an array")
        ratings = {}
        for item in doc:
            try:
                eid = item["element_id"]
                value = float(item["value"])
                rated_at = datetime.strptime(item["rated_at"], "%Y-%m-%dT%H:%M:%SZ").replace(
                    tzinfo=timezone.utc
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise ValidationError(f"bad rating entry: {exc}") from None
            if not (0.0 <= value <= 1.0):
                raise ValidationError(f"rating {value} outside [0, 1]", field="value")
            ratings[eid] = SensitivityRating(element_id=eid, value=value, rated_at=rated_at)
        self._ratings = ratings
