"""Deterministic synthetic export archives for tests and demos.

Real exports cannot be redistributed, so every test runs against archives
built here: same structure as the four stock services (close enough to
exercise every built-in parser rule, including one JS-wrapped file per
twitter archive and double-encoded text in a configurable fraction of
facebook messages), filled with words from fixed lists instead of personal
data. Identical spec plus seed always yields byte-identical archives.

Volume knobs map onto categories as follows: conversations times
messages_per_conversation gives Messages, posts gives PostsAndComments,
logins Security, locations Location, searches Search, media_files Media
(one metadata record plus one binary file each). The remaining categories
derive from the knobs: one Contacts record per conversation, one Account
record when the archive has any data at all, and 3*searches + media_files
Activity records (browse and watch events trail search and upload volume).
"""

from __future__ import annotations

import csv
import io
import json
import random
import zipfile
from dataclasses import dataclass
from datetime import datetime, timezone

from .errors import UnknownServiceError
from .model import Category, classify_file
from .rules import SERVICES

OWNER = "Drew"
DEFAULT_PARTNERS = ("Sam", "Robin", "Charlie", "Morgan", "Jordan", "Taylor", "Casey", "Riley")
FRIEND_NAMES = ("Pat", "Lee", "Ash", "Kim", "Max", "Sol", "Nia", "Ren")
WORDS = (
    "report coffee birthday meeting weather garden travel ticket recipe photo "
    "music sunset library bicycle dinner holiday concert puzzle mountain river "
    "window breakfast station museum harbor lantern notebook orchard pepper"
).split()
ACCENT_WORDS = ("café", "touché", "naïve", "jalapeño", "résumé", "señor")
PLACES = ("Northside", "Old Town", "Harbor", "Midtown", "Riverside", "Hillcrest")
DEVICES = ("Android Phone", "iPhone", "Desktop Browser", "Tablet")
ACTIONS = ("Login", "Logout", "Password change", "Session terminated")


@dataclass(frozen=True)
class Volume:
    conversations: int = 0
    messages_per_conversation: int = 0
    posts: int = 0
    logins: int = 0
    locations: int = 0
    searches: int = 0
    media_files: int = 0

    def __post_init__(self):
        for name, value in self.__dict__.items():
            if value < 0:
                raise ValueError(f"volume.{name} must be >= 0")


@dataclass(frozen=True)
class FixtureSpec:
    service: str
    seed: int
    volume: Volume
    time_span: tuple[datetime, datetime]
    partner_names: tuple[str, ...] = DEFAULT_PARTNERS
    mojibake_fraction: float = 0.0  # facebook messages only

    def __post_init__(self):
        if self.time_span[0] > self.time_span[1]:
            raise ValueError("time_span start after end")
        if not self.partner_names:
            raise ValueError("partner_names must not be empty")


@dataclass
class _File:
    path: str
    data: bytes
    category: Category | None = None
    count: int = 0


def generate(spec: FixtureSpec) -> tuple[bytes, dict]:
    """Build (archive bytes, manifest) for a fixture spec.

    The manifest records the expected service, every file element, and the
    per-category element counts a parse of the archive must produce.
    """
    if spec.service not in SERVICES:
        raise UnknownServiceError(f"unsupported fixture service {spec.service!r}")
    builder = {
        "facebook": _facebook_files,
        "google": _google_files,
        "twitter": _twitter_files,
        "instagram": _instagram_files,
    }[spec.service]
    files = builder(spec, _Ctx(spec))
    files.sort(key=lambda f: f.path)
    return _zip_bytes(files), _manifest(spec, files)


def write_fixture(spec: FixtureSpec, archive_path: str, manifest_path: str | None = None) -> dict:
    data, manifest = generate(spec)
    with open(archive_path, "wb") as fh:
        fh.write(data)
    if manifest_path:
        with open(manifest_path, "w", encoding="utf-8") as fh:
            json.dump(manifest, fh, ensure_ascii=False, indent=2)
            fh.write("\n")
    return manifest


class _Ctx:
    """Seeded draw helpers; all randomness flows through one Random."""

    def __init__(self, spec: FixtureSpec):
        self.rng = random.Random(spec.seed)
        self.start = int(spec.time_span[0].timestamp())
        self.end = int(spec.time_span[1].timestamp())
        self.spec = spec

    def epoch(self) -> int:
        return self.rng.randint(self.start, self.end)

    def sentence(self, low: int = 3, high: int = 8) -> str:
        return " ".join(self.rng.choice(WORDS) for _ in range(self.rng.randint(low, high)))

    def message_text(self) -> str:
        text = self.sentence(4, 10)
        if self.rng.random() < 0.5:
            text += " " + self.rng.choice(ACCENT_WORDS)
        return text

    def ip(self) -> str:
        return f"192.0.2.{self.rng.randint(1, 254)}"

    def coords(self) -> tuple[float, float]:
        return (
            round(self.rng.uniform(-80.0, 80.0), 5),
            round(self.rng.uniform(-170.0, 170.0), 5),
        )

    def jpeg(self) -> bytes:
        return b"\xff\xd8\xff\xe0" + self.rng.randbytes(self.rng.randint(800, 3000))

    def maybe_mojibake(self, text: str) -> str:
        if self.rng.random() < self.spec.mojibake_fraction:
            return text.encode("utf-8").decode("latin-1")
        return text


def _derived_counts(vol: Volume) -> dict[str, int]:
    messages = vol.conversations * vol.messages_per_conversation
    any_data = any(
        (messages, vol.posts, vol.logins, vol.locations, vol.searches, vol.media_files,
         vol.conversations)
    )
    return {
        "contacts": vol.conversations,
        "account": 1 if any_data else 0,
        "activity": 3 * vol.searches + vol.media_files,
    }


def _iso_z(t: int) -> str:
    return datetime.fromtimestamp(t, tz=timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _iso_ms(t: int) -> str:
    return datetime.fromtimestamp(t, tz=timezone.utc).strftime("%Y-%m-%dT%H:%M:%S.000Z")


def _iso_offset(t: int) -> str:
    return datetime.fromtimestamp(t, tz=timezone.utc).strftime("%Y-%m-%dT%H:%M:%S+00:00")


def _json_bytes(doc) -> bytes:
    return json.dumps(doc, ensure_ascii=True, indent=2).encode("utf-8")


def _js_bytes(key: str, doc) -> bytes:
    return (f"window.YTD.{key}.part0 = " + json.dumps(doc, ensure_ascii=True, indent=2)).encode(
        "utf-8"
    )


def _csv_bytes(header: list[str], rows: list[list[str]]) -> bytes:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue().encode("utf-8")


def _partners(spec: FixtureSpec) -> list[str]:
    names = spec.partner_names
    return [names[i % len(names)] for i in range(spec.volume.conversations)]


# --- per-service builders ---------------------------------------------------

def _facebook_files(spec: FixtureSpec, ctx: _Ctx) -> list[_File]:
    vol, extra = spec.volume, _derived_counts(spec.volume)
    files = [
        _File(
            "profile_information/profile_information.json",
            _json_bytes({"profile_v2": {"name": OWNER, "registration_timestamp": ctx.start}}),
        )
    ]
    for ci, partner in enumerate(_partners(spec)):
        if vol.messages_per_conversation == 0:
            continue
        messages = []
        for _ in range(vol.messages_per_conversation):
            sender = ctx.rng.choice((OWNER, partner))
            messages.append(
                {
                    "sender_name": sender,
                    "timestamp_ms": ctx.epoch() * 1000,
                    "content": ctx.maybe_mojibake(ctx.message_text()),
                }
            )
        files.append(
            _File(
                f"messages/inbox/{partner.lower()}_{ci}/message_1.json",
                _json_bytes(
                    {
                        "title": partner,
                        "participants": [{"name": OWNER}, {"name": partner}],
                        "messages": messages,
                        "thread_path": f"inbox/{partner.lower()}_{ci}",
                    }
                ),
                Category.MESSAGES,
                len(messages),
            )
        )
    if vol.posts:
        files.append(
            _File(
                "posts/your_posts_1.json",
                _json_bytes(
                    [
                        {"timestamp": ctx.epoch(), "post": ctx.sentence(), "title": f"{OWNER} update"}
                        for _ in range(vol.posts)
                    ]
                ),
                Category.POSTS_AND_COMMENTS,
                vol.posts,
            )
        )
    if vol.logins:
        files.append(
            _File(
                "security_and_login_information/account_activity.json",
                _json_bytes(
                    {
                        "account_activity_v2": [
                            {"action": ctx.rng.choice(ACTIONS), "timestamp": ctx.epoch(),
                             "ip_address": ctx.ip()}
                            for _ in range(vol.logins)
                        ]
                    }
                ),
                Category.SECURITY,
                vol.logins,
            )
        )
    if vol.searches:
        files.append(
            _File(
                "search/your_search_history.json",
                _json_bytes(
                    {
                        "searches_v2": [
                            {"timestamp": ctx.epoch(), "text": ctx.sentence(1, 3)}
                            for _ in range(vol.searches)
                        ]
                    }
                ),
                Category.SEARCH,
                vol.searches,
            )
        )
    if extra["contacts"]:
        files.append(
            _File(
                "friends/friends.json",
                _json_bytes(
                    {
                        "friends_v2": [
                            {"name": FRIEND_NAMES[i % len(FRIEND_NAMES)], "timestamp": ctx.epoch()}
                            for i in range(extra["contacts"])
                        ]
                    }
                ),
                Category.CONTACTS,
                extra["contacts"],
            )
        )
    if extra["account"]:
        files.append(
            _File(
                "profile_information/profile_update_history.json",
                _json_bytes({"profile_updates_v2": [{"timestamp": ctx.start, "event": "Profile created"}]}),
                Category.ACCOUNT,
                1,
            )
        )
    if vol.locations:
        records = []
        for _ in range(vol.locations):
            lat, lon = ctx.coords()
            records.append(
                {
                    "creation_timestamp": ctx.epoch(),
                    "name": ctx.rng.choice(PLACES),
                    "coordinate": {"latitude": lat, "longitude": lon},
                }
            )
        files.append(
            _File(
                "location/location_history.json",
                _json_bytes({"location_history_v2": records}),
                Category.LOCATION,
                vol.locations,
            )
        )
    if extra["activity"]:
        files.append(
            _File(
                "activity/viewed.json",
                _json_bytes(
                    {
                        "viewed": [
                            {"timestamp": ctx.epoch(), "title": ctx.sentence()}
                            for _ in range(extra["activity"])
                        ]
                    }
                ),
                Category.ACTIVITY,
                extra["activity"],
            )
        )
    if vol.media_files:
        photos = []
        for i in range(vol.media_files):
            uri = f"photos_and_videos/media/photo_{i:03d}.jpg"
            photos.append({"creation_timestamp": ctx.epoch(), "uri": uri})
            files.append(_File(uri, ctx.jpeg()))
        files.append(
            _File(
                "photos_and_videos/album_0/photos.json",
                _json_bytes({"photos": photos}),
                Category.MEDIA,
                vol.media_files,
            )
        )
    return files


def _google_files(spec: FixtureSpec, ctx: _Ctx) -> list[_File]:
    vol, extra = spec.volume, _derived_counts(spec.volume)
    files = [
        _File(
            "Takeout/archive_browser.html",
            b"<!DOCTYPE html><html><body>Archive overview</body></html>",
        )
    ]
    conversations = []
    for ci, partner in enumerate(_partners(spec)):
        if vol.messages_per_conversation == 0:
            continue
        conversations.append(
            {
                "name": partner,
                "id": f"conv_{ci}",
                "messages": [
                    {
                        "sender": ctx.rng.choice((OWNER, partner)),
                        "timestamp": ctx.epoch() * 1000,
                        "content": ctx.message_text(),
                    }
                    for _ in range(vol.messages_per_conversation)
                ],
            }
        )
    if conversations:
        files.append(
            _File(
                "Takeout/Hangouts/Hangouts.json",
                _json_bytes({"conversations": conversations}),
                Category.MESSAGES,
                sum(len(c["messages"]) for c in conversations),
            )
        )
    if vol.posts:
        files.append(
            _File(
                "Takeout/YouTube/my-comments.json",
                _json_bytes(
                    {
                        "comments": [
                            {"time": _iso_z(ctx.epoch()), "content": ctx.sentence()}
                            for _ in range(vol.posts)
                        ]
                    }
                ),
                Category.POSTS_AND_COMMENTS,
                vol.posts,
            )
        )
    if vol.logins:
        rows = [
            [_iso_z(ctx.epoch()), ctx.rng.choice(ACTIONS), ctx.ip()] for _ in range(vol.logins)
        ]
        files.append(
            _File(
                "Takeout/Access Log Activity/Activities.csv",
                _csv_bytes(["time", "activity_type", "ip_address"], rows),
                Category.SECURITY,
                vol.logins,
            )
        )
    if vol.searches:
        files.append(
            _File(
                "Takeout/My Activity/Search/MyActivity.json",
                _json_bytes(
                    [
                        {"header": "Search", "title": ctx.sentence(1, 3), "time": _iso_z(ctx.epoch())}
                        for _ in range(vol.searches)
                    ]
                ),
                Category.SEARCH,
                vol.searches,
            )
        )
    if extra["contacts"]:
        rows = [
            [
                FRIEND_NAMES[i % len(FRIEND_NAMES)],
                f"{FRIEND_NAMES[i % len(FRIEND_NAMES)].lower()}@example.com",
                _iso_z(ctx.epoch()),
            ]
            for i in range(extra["contacts"])
        ]
        files.append(
            _File(
                "Takeout/Contacts/All Contacts/All Contacts.csv",
                _csv_bytes(["name", "email", "added"], rows),
                Category.CONTACTS,
                extra["contacts"],
            )
        )
    if extra["account"]:
        files.append(
            _File(
                "Takeout/Profile/Profile.json",
                _json_bytes(
                    {"name": OWNER, "history": [{"time": _iso_z(ctx.start), "event": "Account created"}]}
                ),
                Category.ACCOUNT,
                1,
            )
        )
    if vol.locations:
        records = []
        for _ in range(vol.locations):
            lat, lon = ctx.coords()
            records.append(
                {
                    "timestampMs": str(ctx.epoch() * 1000),
                    "latitudeE7": int(lat * 1e7),
                    "longitudeE7": int(lon * 1e7),
                }
            )
        files.append(
            _File(
                "Takeout/Location History/Location History.json",
                _json_bytes({"locations": records}),
                Category.LOCATION,
                vol.locations,
            )
        )
    if extra["activity"]:
        files.append(
            _File(
                "Takeout/My Activity/YouTube/MyActivity.json",
                _json_bytes(
                    [
                        {"header": "YouTube", "title": ctx.sentence(), "time": _iso_z(ctx.epoch())}
                        for _ in range(extra["activity"])
                    ]
                ),
                Category.ACTIVITY,
                extra["activity"],
            )
        )
    if vol.media_files:
        photos = []
        for i in range(vol.media_files):
            name = f"photo_{i:03d}.jpg"
            photos.append({"title": name, "creationTime": _iso_z(ctx.epoch())})
            files.append(_File(f"Takeout/Google Photos/album_0/{name}", ctx.jpeg()))
        files.append(
            _File(
                "Takeout/Google Photos/album_0/metadata.json",
                _json_bytes({"photos": photos}),
                Category.MEDIA,
                vol.media_files,
            )
        )
    return files


def _twitter_files(spec: FixtureSpec, ctx: _Ctx) -> list[_File]:
    vol, extra = spec.volume, _derived_counts(spec.volume)
    files = [
        _File(
            "data/manifest.js",
            (
                "window.__THAR_CONFIG = "
                + json.dumps({"userInfo": {"userName": OWNER.lower()}}, indent=2)
            ).encode("utf-8"),
        )
    ]
    conversations = []
    for ci, partner in enumerate(_partners(spec)):
        if vol.messages_per_conversation == 0:
            continue
        conversations.append(
            {
                "conversationId": f"{partner.lower()}-{ci}",
                "messages": [
                    {
                        "senderName": ctx.rng.choice((OWNER, partner)),
                        "text": ctx.message_text(),
                        "createdAt": _iso_ms(ctx.epoch()),
                    }
                    for _ in range(vol.messages_per_conversation)
                ],
            }
        )
    if conversations:
        files.append(
            _File(
                "data/direct-messages.js",
                _js_bytes("direct_messages", conversations),
                Category.MESSAGES,
                sum(len(c["messages"]) for c in conversations),
            )
        )
    if vol.posts:
        files.append(
            _File(
                "data/tweet.js",
                _js_bytes(
                    "tweet",
                    [
                        {
                            "tweet": {
                                "created_at": _iso_ms(ctx.epoch()),
                                "full_text": ctx.sentence(),
                                "id_str": str(1000 + i),
                            }
                        }
                        for i in range(vol.posts)
                    ],
                ),
                Category.POSTS_AND_COMMENTS,
                vol.posts,
            )
        )
    if vol.logins:
        files.append(
            _File(
                "data/ip-audit.js",
                _js_bytes(
                    "ip_audit",
                    [
                        {"ipAudit": {"createdAt": _iso_ms(ctx.epoch()), "loginIp": ctx.ip()}}
                        for _ in range(vol.logins)
                    ],
                ),
                Category.SECURITY,
                vol.logins,
            )
        )
    if vol.searches:
        files.append(
            _File(
                "data/saved-search.js",
                _js_bytes(
                    "saved_search",
                    [
                        {"savedSearch": {"savedSearchId": str(i), "query": ctx.sentence(1, 3)}}
                        for i in range(vol.searches)
                    ],
                ),
                Category.SEARCH,
                vol.searches,
            )
        )
    if extra["contacts"]:
        files.append(
            _File(
                "data/follower.js",
                _js_bytes(
                    "follower",
                    [
                        {"follower": {"accountId": str(ctx.rng.randint(10**8, 10**9))}}
                        for _ in range(extra["contacts"])
                    ],
                ),
                Category.CONTACTS,
                extra["contacts"],
            )
        )
    if extra["account"]:
        files.append(
            _File(
                "data/account.js",
                _js_bytes(
                    "account",
                    [
                        {
                            "account": {
                                "username": OWNER.lower(),
                                "email": f"{OWNER.lower()}@example.com",
                                "createdAt": _iso_ms(ctx.start),
                                "accountId": "1",
                            }
                        }
                    ],
                ),
                Category.ACCOUNT,
                1,
            )
        )
    if vol.locations:
        files.append(
            _File(
                "data/location-history.js",
                _js_bytes(
                    "location_history",
                    [
                        {"locationHistory": {"time": _iso_ms(ctx.epoch()), "place": ctx.rng.choice(PLACES)}}
                        for _ in range(vol.locations)
                    ],
                ),
                Category.LOCATION,
                vol.locations,
            )
        )
    if extra["activity"]:
        files.append(
            _File(
                "data/ad-engagements.js",
                _js_bytes(
                    "ad_engagements",
                    [
                        {
                            "adEngagement": {
                                "time": _iso_ms(ctx.epoch()),
                                "action": ctx.rng.choice(("impression", "click", "view")),
                            }
                        }
                        for _ in range(extra["activity"])
                    ],
                ),
                Category.ACTIVITY,
                extra["activity"],
            )
        )
    if vol.media_files:
        records = []
        for i in range(vol.media_files):
            name = f"photo_{i:03d}.jpg"
            records.append({"media": {"time": _iso_ms(ctx.epoch()), "filename": name}})
            files.append(_File(f"data/tweet_media/{name}", ctx.jpeg()))
        files.append(
            _File("data/media-metadata.js", _js_bytes("media_metadata", records), Category.MEDIA,
                  vol.media_files)
        )
    return files


def _instagram_files(spec: FixtureSpec, ctx: _Ctx) -> list[_File]:
    vol, extra = spec.volume, _derived_counts(spec.volume)
    files = [
        _File(
            "profile.json",
            _json_bytes(
                {
                    "username": OWNER.lower(),
                    "email": f"{OWNER.lower()}@example.com",
                    "date_joined": _iso_offset(ctx.start),
                }
            ),
        )
    ]
    threads = []
    for _, partner in enumerate(_partners(spec)):
        if vol.messages_per_conversation == 0:
            continue
        threads.append(
            {
                "thread_title": partner,
                "participants": [OWNER.lower(), partner.lower()],
                "conversation": [
                    {
                        "sender": ctx.rng.choice((OWNER, partner)),
                        "created_at": _iso_offset(ctx.epoch()),
                        "text": ctx.message_text(),
                    }
                    for _ in range(vol.messages_per_conversation)
                ],
            }
        )
    if threads:
        files.append(
            _File(
                "messages.json",
                _json_bytes(threads),
                Category.MESSAGES,
                sum(len(t["conversation"]) for t in threads),
            )
        )
    if vol.posts:
        files.append(
            _File(
                "comments.json",
                _json_bytes(
                    {
                        "media_comments": [
                            {"created_at": _iso_offset(ctx.epoch()), "text": ctx.sentence()}
                            for _ in range(vol.posts)
                        ]
                    }
                ),
                Category.POSTS_AND_COMMENTS,
                vol.posts,
            )
        )
    if vol.logins:
        files.append(
            _File(
                "account_history.json",
                _json_bytes(
                    {
                        "login_history": [
                            {
                                "timestamp": _iso_offset(ctx.epoch()),
                                "ip_address": ctx.ip(),
                                "device": ctx.rng.choice(DEVICES),
                            }
                            for _ in range(vol.logins)
                        ]
                    }
                ),
                Category.SECURITY,
                vol.logins,
            )
        )
    if vol.searches:
        files.append(
            _File(
                "searches.json",
                _json_bytes(
                    {
                        "main_search_history": [
                            {"time": _iso_offset(ctx.epoch()), "search_click": ctx.sentence(1, 3)}
                            for _ in range(vol.searches)
                        ]
                    }
                ),
                Category.SEARCH,
                vol.searches,
            )
        )
    if extra["contacts"]:
        files.append(
            _File(
                "connections.json",
                _json_bytes(
                    {
                        "followers": [
                            {"name": FRIEND_NAMES[i % len(FRIEND_NAMES)], "added": _iso_offset(ctx.epoch())}
                            for i in range(extra["contacts"])
                        ]
                    }
                ),
                Category.CONTACTS,
                extra["contacts"],
            )
        )
    if extra["account"]:
        files.append(
            _File(
                "account_information.json",
                _json_bytes({"events": [{"time": _iso_offset(ctx.start), "event": "Account created"}]}),
                Category.ACCOUNT,
                1,
            )
        )
    if vol.locations:
        records = []
        for _ in range(vol.locations):
            lat, lon = ctx.coords()
            records.append({"time": _iso_offset(ctx.epoch()), "latitude": lat, "longitude": lon})
        files.append(
            _File("location_history.json", _json_bytes({"locations": records}), Category.LOCATION,
                  vol.locations)
        )
    if extra["activity"]:
        files.append(
            _File(
                "likes.json",
                _json_bytes(
                    {
                        "media_likes": [
                            {"time": _iso_offset(ctx.epoch()), "owner": ctx.rng.choice(FRIEND_NAMES)}
                            for _ in range(extra["activity"])
                        ]
                    }
                ),
                Category.ACTIVITY,
                extra["activity"],
            )
        )
    if vol.media_files:
        photos = []
        for i in range(vol.media_files):
            path = f"photos/photo_{i:03d}.jpg"
            photos.append({"taken_at": _iso_offset(ctx.epoch()), "caption": ctx.sentence(),
                           "path": path})
            files.append(_File(path, ctx.jpeg()))
        files.append(
            _File("media.json", _json_bytes({"photos": photos}), Category.MEDIA, vol.media_files)
        )
    return files


# --- packaging ---------------------------------------------------------------

def _zip_bytes(files: list[_File]) -> bytes:
    buf = io.BytesIO()
    with zipfile.ZipFile(buf, "w", zipfile.ZIP_DEFLATED) as zf:
        for f in files:
            info = zipfile.ZipInfo(f.path, date_time=(1980, 1, 1, 0, 0, 0))
            info.external_attr = 0o600 << 16
            info.compress_type = zipfile.ZIP_DEFLATED
            zf.writestr(info, f.data)
    return buf.getvalue()


def _manifest(spec: FixtureSpec, files: list[_File]) -> dict:
    counts = {cat.value: 0 for cat in Category}
    entries = []
    for f in files:
        folder, _, name = f.path.rpartition("/")
        entries.append(
            {
                "name": name,
                "folder": folder + "/" if folder else "",
                "size_bytes": len(f.data),
                "file_category": classify_file(name).value,
                "data_category": f.category.value if f.category else None,
                "element_count": f.count,
            }
        )
        if f.category:
            counts[f.category.value] += f.count
    return {
        "expected_service": spec.service,
        "seed": spec.seed,
        "files": entries,
        "expected_counts": counts,
        "total_elements": sum(counts.values()),
    }


# --- scenario presets --------------------------------------------------------

def year_span(y0: int, y1: int) -> tuple[datetime, datetime]:
    return (
        datetime(y0, 1, 1, tzinfo=timezone.utc),
        datetime(y1, 12, 31, 23, 59, 59, tzinfo=timezone.utc),
    )


def preset_use_case_1() -> FixtureSpec:
    """Single facebook export whose one big conversation (with Alice) sits
    around 2011 and dwarfs every other file."""
    return FixtureSpec(
        service="facebook",
        seed=510,
        volume=Volume(
            conversations=1,
            messages_per_conversation=250,
            posts=40,
            logins=25,
            locations=30,
            searches=35,
            media_files=8,
        ),
        time_span=year_span(2009, 2013),
        partner_names=("Alice",),
        mojibake_fraction=0.25,
    )


def preset_use_case_2() -> list[tuple[str, FixtureSpec]]:
    """Two people, two services each: message-heavy facebook for Alice,
    constant location plus activity tracking on Bob's google account."""
    return [
        (
            "alice-facebook",
            FixtureSpec(
                service="facebook",
                seed=101,
                volume=Volume(conversations=3, messages_per_conversation=80, posts=30,
                              logins=15, locations=10, searches=20, media_files=6),
                time_span=year_span(2009, 2020),
                mojibake_fraction=0.2,
            ),
        ),
        (
            "alice-google",
            FixtureSpec(
                service="google",
                seed=102,
                volume=Volume(conversations=2, messages_per_conversation=15, posts=5,
                              logins=10, locations=5, searches=10, media_files=3),
                time_span=year_span(2014, 2016),
            ),
        ),
        (
            "bob-facebook",
            FixtureSpec(
                service="facebook",
                seed=103,
                volume=Volume(conversations=2, messages_per_conversation=25, posts=20,
                              logins=20, locations=10, searches=15, media_files=5),
                time_span=year_span(2010, 2020),
            ),
        ),
        (
            "bob-google",
            FixtureSpec(
                service="google",
                seed=104,
                volume=Volume(conversations=1, messages_per_conversation=5, posts=5,
                              logins=20, locations=600, searches=80, media_files=10),
                time_span=year_span(2014, 2020),
            ),
        ),
    ]


PRESETS = {
    "use-case-1": lambda: [("bob-facebook", preset_use_case_1())],
    "use-case-2": preset_use_case_2,
}
