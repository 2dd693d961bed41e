"""Repairs for the encoding and wrapping quirks found in real exports.

Services ship machine-readable files with three recurring defects: text
fields whose UTF-8 bytes were decoded as a single-byte charset (mojibake),
JSON payloads wrapped in a JavaScript variable assignment, and timestamps
in whatever unit the exporting team preferred that year. Each repair here is
total: bad input degrades to an unchanged value or None, never an exception,
except where the caller explicitly asked for a wrapped file.
"""

from __future__ import annotations

import json
import re
from datetime import datetime, timedelta, timezone

from .errors import WrapperFormatError

# Epoch values at or above this are taken as milliseconds. 10^11 seconds is
# year 5138, 10^11 ms is March 1973; real export data sits cleanly on either
# side of the threshold.
_EPOCH_MS_THRESHOLD = 10**11


def repair_mojibake(s: str) -> str:
    """Undo latin-1-decoded UTF-8, repeatedly, until the text is stable.

    A string is repairable when every codepoint is below 256 and those
    codepoints, taken as bytes, form valid UTF-8 that decodes to something
    else. Repair loops because real exports occasionally double-wrap; the
    result is a fixpoint, so the function is idempotent.
    """
    current = s
    while True:
        if not current:
            return current
        try:
            data = current.encode("latin-1")  # exact iff all codepoints < 256
        except UnicodeEncodeError:
            return current
        try:
            decoded = data.decode("utf-8")
        except UnicodeDecodeError:
            return current
        if decoded == current:
            return current
        current = decoded


_ASSIGNMENT_TARGET = re.compile(r"^\s*[A-Za-z_$][\w$]*(?:\.[A-Za-z_$][\w$]*)*\s*$")


def unwrap_js_export(content: str) -> str:
    """Strip the `some.dotted.name = <literal>;` wrapper off a JS export file.

    Returns the literal text (everything after the first '=', trimmed, one
    trailing semicolon removed). The literal must parse as JSON; anything
    else is a wrapper-format error.
    """
    target, sep, literal = content.partition("=")
    if not sep or not _ASSIGNMENT_TARGET.match(target):
        raise WrapperFormatError("no variable assignment found")
    literal = literal.strip()
    if literal.endswith(";"):
        literal = literal[:-1].rstrip()
    try:
        json.loads(literal)
    except json.JSONDecodeError as exc:
        raise WrapperFormatError(f"assigned value is not JSON: {exc}") from None
    return literal


_ISO_FORMATS = (
    "%Y-%m-%dT%H:%M:%S",
    "%Y-%m-%d %H:%M:%S",
    "%Y-%m-%dT%H:%M",
    "%Y-%m-%d",
)


def parse_timestamp(raw, hint: str | None = None) -> datetime | None:
    """Best-effort conversion of an export timestamp to UTC, second precision.

    Accepts epoch seconds, epoch milliseconds (magnitude >= 10^11, possibly
    as a digit string), and ISO-8601 text with Z/offset/space variants.
    ``hint`` can force "s", "ms", or "iso". Anything unparseable is None.
    """
    if raw is None:
        return None
    if isinstance(raw, bool):
        return None
    if isinstance(raw, (int, float)):
        return _from_epoch(raw, hint)
    if isinstance(raw, str):
        text = raw.strip()
        if not text:
            return None
        if hint in ("s", "ms") or _looks_numeric(text):
            try:
                return _from_epoch(float(text), hint)
            except ValueError:
                return None
        return _from_iso(text)
    return None


def _looks_numeric(text: str) -> bool:
    body = text[1:] if text[:1] in "+-" else text
    return body.replace(".", "", 1).isdigit() and body != ""


def _from_epoch(value: float, hint: str | None) -> datetime | None:
    if hint == "ms" or (hint != "s" and abs(value) >= _EPOCH_MS_THRESHOLD):
        value = value / 1000.0
    try:
        return datetime.fromtimestamp(int(value), tz=timezone.utc)
    except (OverflowError, OSError, ValueError):
        return None


def _from_iso(text: str) -> datetime | None:
    # Normalize the tail: Z suffix, fractional seconds, numeric offsets.
    tz = timezone.utc
    body = text
    if body.endswith(("Z", "z")):
        body = body[:-1]
    else:
        m = re.search(r"([+-])(\d{2}):?(\d{2})$", body)
        if m:
            sign = -1 if m.group(1) == "-" else 1
            offset = sign * (int(m.group(2)) * 60 + int(m.group(3)))
            tz = timezone(timedelta(minutes=offset))
            body = body[: m.start()]
    body = re.sub(r"\.\d+$", "", body)  # drop fractional seconds
    for fmt in _ISO_FORMATS:
        try:
            dt = datetime.strptime(body, fmt)
        except ValueError:
            continue
        return dt.replace(tzinfo=tz).astimezone(timezone.utc)
    return None
