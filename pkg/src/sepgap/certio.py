"""Certificate documents: a language-neutral JSON encoding with a digest.

Every rational is stored verbatim as a ``num/den`` string, edges as
``[i, j]`` pairs with i < j, and the whole document carries a sha256 digest
of its canonical rendering (sorted keys, compact separators, digest field
excluded) as tamper evidence.  Serialisation is deterministic: equal
certificates produce byte-identical files.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path

from .bounding import GapBoundCertificate
from .graphs import SepPoint
from .rationals import format_rational, parse_rational
from .walks import Walk

__all__ = [
    "FORMAT_VERSION",
    "CertificateFormatError",
    "certificate_to_document",
    "certificate_from_document",
    "dump_certificate",
    "load_certificate",
]

FORMAT_VERSION = "sepgap-certificate/1"


class CertificateFormatError(ValueError):
    """The document is not a well-formed certificate (or fails its digest)."""


def _document_digest(doc: dict) -> str:
    body = {k: v for k, v in doc.items() if k != "digest"}
    payload = json.dumps(body, sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(payload.encode("utf-8")).hexdigest()


def certificate_to_document(cert: GapBoundCertificate) -> dict:
    doc = {
        "format": FORMAT_VERSION,
        "point": {
            "n": cert.point.n,
            "weights": [[i, j, format_rational(w)] for (i, j), w in cert.point.items()],
        },
        "value": format_rational(cert.value),
        "gap_plus": format_rational(cert.gap_plus),
        "costs": [[i, j, format_rational(c)] for (i, j), c in cert.costs],
        "walks": [
            {
                "mult": [[i, j, m] for (i, j), m in w.mult],
                "mu": format_rational(v),
            }
            for w, v in cert.mu
        ],
        "constants": [[i, j, format_rational(c)] for (i, j), c in cert.constants],
        "c_star": format_rational(cert.c_star),
        "bound": format_rational(cert.bound),
        "scope": cert.scope,
    }
    doc["digest"] = _document_digest(doc)
    return doc


def certificate_from_document(doc: dict, check_digest: bool = True) -> GapBoundCertificate:
    try:
        if doc.get("format") != FORMAT_VERSION:
            raise CertificateFormatError(f"unsupported format {doc.get('format')!r}")
        if check_digest and doc.get("digest") != _document_digest(doc):
            raise CertificateFormatError("digest mismatch: document was altered")
        point = SepPoint(
            doc["point"]["n"],
            {(i, j): parse_rational(w) for i, j, w in doc["point"]["weights"]},
        )
        gap_plus = parse_rational(doc["gap_plus"])
        value = parse_rational(doc["value"])
        if gap_plus != 1 / value:
            raise CertificateFormatError("gap_plus does not match the value")
        cert = GapBoundCertificate(
            point=point,
            value=value,
            costs=tuple(sorted(((i, j), parse_rational(c)) for i, j, c in doc["costs"])),
            mu=tuple(
                sorted(
                    (
                        (
                            Walk.from_dict(point.n, {(i, j): m for i, j, m in w["mult"]}),
                            parse_rational(w["mu"]),
                        )
                        for w in doc["walks"]
                    ),
                    key=lambda p: p[0].mult,
                )
            ),
            constants=tuple(sorted(((i, j), parse_rational(c)) for i, j, c in doc["constants"])),
            c_star=parse_rational(doc["c_star"]),
            bound=parse_rational(doc["bound"]),
            scope=doc["scope"],
        )
        return cert
    except CertificateFormatError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise CertificateFormatError(f"malformed certificate document: {exc}") from exc


def dump_certificate(cert: GapBoundCertificate, path: str | Path) -> None:
    doc = certificate_to_document(cert)
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def load_certificate(path: str | Path, check_digest: bool = True) -> GapBoundCertificate:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    return certificate_from_document(doc, check_digest=check_digest)
