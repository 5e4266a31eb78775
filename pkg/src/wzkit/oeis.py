"""Minimal OEIS b-file client with an on-disk cache.

This is the only module that touches the network.
"""
from __future__ import annotations

import logging
import os
import re
import urllib.error
import urllib.request
from pathlib import Path

log = logging.getLogger(__name__)

DEFAULT_BASE_URL = "https://oeis.org"
CACHE_ENV = "TELESCOPE_CACHE"
TIMEOUT = 30


class OEISUnavailable(RuntimeError):
    """No b-file could be obtained (network failure and no cached copy)."""


def normalize_id(seq_id):
    m = re.fullmatch(r"[Aa]?(\d{1,6})", seq_id.strip())
    if not m:
        raise ValueError(f"not an OEIS id: {seq_id!r}")
    return f"A{int(m.group(1)):06d}"


def default_cache_dir():
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "wzkit"


def bfile_url(seq_id, base_url=DEFAULT_BASE_URL):
    seq_id = normalize_id(seq_id)
    return f"{base_url.rstrip('/')}/{seq_id}/b{seq_id[1:]}.txt"


def parse_bfile(text):
    """{n: a(n)} from b-file text; comments, blank and malformed lines are skipped."""
    out = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        parts = line.split()
        if len(parts) < 2:
            continue
        try:
            out[int(parts[0])] = int(parts[1])
        except ValueError:
            continue
    return out


def fetch_bfile(seq_id, cache_dir=None, offline=False, base_url=DEFAULT_BASE_URL):
    """b-file text, from the cache when present, otherwise by HTTP GET (then cached)."""
    seq_id = normalize_id(seq_id)
    cache_dir = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    path = cache_dir / f"b{seq_id[1:]}.txt"
    if path.exists():
        log.info("using cached %s", path)
        return path.read_text(encoding="utf-8", errors="replace")
    if offline:
        raise OEISUnavailable(f"offline and no cached b-file at {path}")
    url = bfile_url(seq_id, base_url)
    log.info("fetching %s", url)
    try:
        with urllib.request.urlopen(url, timeout=TIMEOUT) as resp:
            text = resp.read().decode("utf-8", errors="replace")
    except (urllib.error.URLError, OSError) as exc:
        raise OEISUnavailable(f"could not fetch {url}: {exc}") from None
    cache_dir.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return text
