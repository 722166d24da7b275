"""JSON and text wire formats for channels, matroids, noise and certificates.

Probabilities travel as rational strings ("1/2", "0", "1"); subset, vector
and matrix renderings use the shared bitstring convention (element 1
leftmost).  All emitters are deterministic: sorted keys, no timestamps.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .channel import Channel
from .extremal import ExtremalCertificate
from .gf2 import F2Matrix, kernel, vector_matroid
from .matroid import Matroid, matroid_from_rank
from .subsets import render


def dumps_canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _fraction_str(p: Fraction) -> str:
    return str(p)


def channel_to_dict(W: Channel) -> dict:
    return {
        "m": W.m,
        "q": W.q,
        "output_size": W.output_size,
        "rows": [[_fraction_str(p) for p in row] for row in W.rows],
    }


def channel_from_dict(data: dict) -> Channel:
    for field in ("m", "q", "output_size", "rows"):
        if field not in data:
            raise ValueError(f"channel JSON missing field {field!r}")
    return Channel(data["m"], data["q"], data["output_size"], data["rows"])


def noise_from_dict(data: dict) -> list:
    for field in ("m", "probs"):
        if field not in data:
            raise ValueError(f"noise JSON missing field {field!r}")
    probs = [Fraction(p) for p in data["probs"]]
    if len(probs) != 1 << data["m"]:
        raise ValueError(
            f"noise JSON field 'probs' has length {len(probs)}, expected {1 << data['m']}"
        )
    return probs


def matroid_to_dict(M: Matroid) -> dict:
    return {"m": M.m, "rank": list(M.rank)}


def matroid_from_dict(data: dict) -> Matroid:
    for field in ("m", "rank"):
        if field not in data:
            raise ValueError(f"matroid JSON missing field {field!r}")
    return matroid_from_rank(data["m"], data["rank"])


def certificate_to_dict(cert: ExtremalCertificate) -> dict:
    m = cert.matroid.m
    return {
        "matroid": matroid_to_dict(cert.matroid),
        "matrix": cert.matrix.to_text(),
        "kernel_basis": [render(v, m) for v in cert.kernel_basis],
        "residual_max": cert.residual_max,
        "star": _fraction_str(cert.star),
    }


def certificate_matroid_matrix(data: dict) -> tuple:
    """Validate a certificate dict; returns (matroid, matrix, kernel basis).

    Rejects certificates whose kernel basis disagrees with the kernel of the
    stated matrix or whose matrix does not realize the stated matroid.
    """
    for field in ("matroid", "matrix", "kernel_basis", "residual_max"):
        if field not in data:
            raise ValueError(f"certificate JSON missing field {field!r}")
    M = matroid_from_dict(data["matroid"])
    if data["matrix"]:
        A = F2Matrix.from_text(data["matrix"])
    else:
        A = F2Matrix((), M.m)
    if vector_matroid(A).rank != M.rank:
        raise ValueError("certificate matrix does not realize the certificate matroid")
    from .subsets import parse

    basis = []
    for text in data["kernel_basis"]:
        mask, width = parse(text)
        if width != M.m:
            raise ValueError(f"kernel vector {text!r} has width {width}, expected {M.m}")
        basis.append(mask)
    from .gf2 import F2Subspace

    if F2Subspace(M.m, basis) != kernel(A):
        raise ValueError("certificate kernel basis does not span kernel(matrix)")
    return M, A, tuple(basis)


def read_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)
