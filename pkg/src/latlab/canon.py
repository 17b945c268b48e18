"""Canonical keys for planar diagrams, with mirror images identified."""

from __future__ import annotations

import hashlib


def _traversal_key(lower, upper, bottom):
    # Diagram isomorphisms fix the bottom and preserve both cover orders, so
    # numbering elements in breadth-first order over the ordered upper covers
    # is label-invariant.
    order = [bottom]
    seen = {bottom: 0}
    i = 0
    while i < len(order):
        for b in upper[order[i]]:
            if b not in seen:
                seen[b] = len(order)
                order.append(b)
        i += 1
    parts = []
    for a in order:
        ups = ",".join(str(seen[b]) for b in upper[a])
        dns = ",".join(str(seen[b]) for b in lower[a])
        parts.append(f"{ups}/{dns}")
    return f"{len(order)}:" + ";".join(parts)


def canonical_form(D):
    """Byte string equal for two diagrams iff they are isomorphic or mirror images."""
    direct = _traversal_key(D.lower, D.upper, D.bottom)
    mirrored = _traversal_key([x[::-1] for x in D.lower], [x[::-1] for x in D.upper], D.bottom)
    return min(direct, mirrored).encode("ascii")


def canonical_digest(D):
    """Short hex digest of the canonical form, for reports and file names."""
    return hashlib.sha1(canonical_form(D)).hexdigest()[:16]
