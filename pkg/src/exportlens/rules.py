"""Declarative per-service parser rules.

A rule maps a path glob to a record location inside the file plus a recipe
for turning each record into (time, text, subcategory). Services are added
by writing a rule file, not code; the built-in tables for facebook, google,
twitter and instagram live in exportlens/data/rules/ and double as the
format reference.

Rule file schema (JSON):

    {
      "service": "twitter",
      "rules": [
        {
          "name": "tweets",                      # also the default subcategory
          "glob": "data/tweet.js",               # fnmatch, * crosses "/"
          "format": "js-wrapped-json",           # json | js-wrapped-json | csv
          "category": "PostsAndComments",
          "records": "$",                        # where the record list lives
          "time": "tweet.created_at",            # optional; dotted path
          "time_unit": "auto",                   # auto | s | ms | iso
          "text": "Tweeted: \"{tweet.full_text}\"",
          "subcategory": "Tweets"                # optional template
        }
      ]
    }

``records`` addresses the list of records: "$" means the document root is
the list, "a.b" a nested list, and "a[].b" one level of nested iteration
(for each item of list a, iterate item.b; the outer item stays visible to
templates). Template placeholders like {tweet.full_text} resolve against the
record, then the enclosing outer item, then the document root; missing
fields render as empty text.
"""

from __future__ import annotations

import fnmatch
import json
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .model import Category

FORMATS = ("json", "js-wrapped-json", "csv")
SERVICES = ("facebook", "google", "twitter", "instagram")


@dataclass(frozen=True)
class ParserRule:
    service: str
    name: str
    path_glob: str
    format: str
    category: Category
    records: str
    time_path: str | None = None
    time_unit: str = "auto"
    text_template: str = ""
    subcategory_template: str | None = None

    def matches(self, path: str) -> bool:
        return fnmatch.fnmatchcase(path, self.path_glob)


@dataclass(frozen=True)
class RuleTable:
    service: str
    rules: tuple[ParserRule, ...] = field(default_factory=tuple)

    def rule_for(self, path: str) -> ParserRule | None:
        # First match wins; tables are expected to keep globs disjoint.
        for rule in self.rules:
            if rule.matches(path):
                return rule
        return None


def load_rule_table(path: str | Path) -> RuleTable:
    with open(path, "rb") as fh:
        return _table_from_doc(json.load(fh), origin=str(path))


def default_rule_table(service: str) -> RuleTable:
    """Built-in rules for one of the stock services."""
    if service not in SERVICES:
        raise ValueError(f"no built-in rules for service {service!r}")
    doc = json.loads(
        resources.files("exportlens").joinpath("data", "rules", f"{service}.json").read_text("utf-8")
    )
    return _table_from_doc(doc, origin=f"built-in {service} rules")


def rule_table_for(service: str, rules_dir: str | None = None) -> RuleTable:
    """Rule table for a service, preferring ``rules_dir/<service>.json``."""
    if rules_dir:
        candidate = Path(rules_dir) / f"{service}.json"
        if candidate.exists():
            return load_rule_table(candidate)
    return default_rule_table(service)


def _table_from_doc(doc: dict, origin: str) -> RuleTable:
    try:
        service = doc["service"]
        rules = []
        for item in doc["rules"]:
            fmt = item["format"]
            if fmt not in FORMATS:
                raise ValueError(f"unknown format {fmt!r}")
            rules.append(
                ParserRule(
                    service=service,
                    name=item["name"],
                    path_glob=item["glob"],
                    format=fmt,
                    category=Category(item["category"]),
                    records=item["records"],
                    time_path=item.get("time"),
                    time_unit=item.get("time_unit", "auto"),
                    text_template=item["text"],
                    subcategory_template=item.get("subcategory"),
                )
            )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"{origin}: bad rule table ({exc})") from None
    return RuleTable(service=service, rules=tuple(rules))


# --- record location and templates ----------------------------------------

def resolve_path(obj, dotted: str):
    """Walk a dotted key path through nested dicts; None when absent."""
    current = obj
    for key in dotted.split("."):
        if not isinstance(current, dict) or key not in current:
            return None
        current = current[key]
    return current


def iter_records(doc, records_spec: str):
    """Yield (record, outer) pairs per a rule's ``records`` spec.

    outer is the enclosing item for "a[].b" specs, else None. Non-list hits
    and non-dict records are skipped silently; parse-level reporting happens
    in the caller, which knows the file path.
    """
    if "[]." in records_spec:
        outer_path, inner_path = records_spec.split("[].", 1)
        outer_list = _list_at(doc, outer_path)
        for outer in outer_list:
            if not isinstance(outer, dict):
                continue
            for record in _list_at(outer, inner_path):
                yield record, outer
    else:
        for record in _list_at(doc, records_spec):
            yield record, None


def _list_at(obj, path: str) -> list:
    target = obj if path in ("$", "") else resolve_path(obj, path)
    return target if isinstance(target, list) else []


_PLACEHOLDER = re.compile(r"\{([^{}]+)\}")


def render_template(template: str, record, outer, root, transform=None) -> str:
    """Fill {dotted.path} placeholders from record, then outer, then root.

    ``transform`` post-processes each substituted value (the parser passes
    the mojibake repair here, so only field content is touched, never the
    template's own literal text).
    """

    def lookup(match: re.Match) -> str:
        dotted = match.group(1)
        for scope in (record, outer, root):
            if scope is None:
                continue
            value = resolve_path(scope, dotted)
            if value is not None:
                text = _stringify(value)
                return transform(text) if transform else text
        return ""

    return _PLACEHOLDER.sub(lookup, template)


def _stringify(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float) and value.is_integer():
        return str(int(value))
    if isinstance(value, (dict, list)):
        return json.dumps(value, ensure_ascii=False, sort_keys=True)
    return str(value)
