"""graph6 codec (the nauty interchange format), restricted to n <= 64."""
from __future__ import annotations

from rt_lab.graph import MAX_VERTICES, CapacityError, Graph

HEADER = ">>graph6<<"


class Graph6Error(ValueError):
    pass


def _size_bytes(n: int) -> str:
    if n <= 62:
        return chr(63 + n)
    return chr(126) + "".join(chr(63 + (n >> shift & 63)) for shift in (12, 6, 0))


def encode(g: Graph) -> str:
    n = g.n
    if n > MAX_VERTICES:
        raise CapacityError(f"graph on {n} vertices exceeds capacity")
    bits = []
    for j in range(1, n):
        row = g.adj[j]
        for i in range(j):
            bits.append(row >> i & 1)
    bits.extend([0] * (-len(bits) % 6))
    body = []
    for k in range(0, len(bits), 6):
        chunk = 0
        for b in bits[k:k + 6]:
            chunk = chunk << 1 | b
        body.append(chr(63 + chunk))
    return _size_bytes(n) + "".join(body)


def decode(line: str) -> Graph:
    text = line.strip()
    if text.startswith(HEADER):
        text = text[len(HEADER):]
    if not text:
        raise Graph6Error("empty graph6 string")
    data = [ord(c) - 63 for c in text]
    if any(not 0 <= d <= 63 for d in data):
        raise Graph6Error("character outside the printable graph6 range")
    if data[0] == 63:
        if len(data) < 4:
            raise Graph6Error("truncated size header")
        if data[1] == 63:
            raise Graph6Error("36-bit size form is beyond capacity")
        n = data[1] << 12 | data[2] << 6 | data[3]
        payload = data[4:]
    else:
        n = data[0]
        payload = data[1:]
    if n > MAX_VERTICES:
        raise CapacityError(f"graph6 string encodes {n} vertices")
    nbits = n * (n - 1) // 2
    need = -(-nbits // 6)
    if len(payload) < need:
        raise Graph6Error(f"truncated payload: need {need} bytes, got {len(payload)}")
    if len(payload) > need:
        raise Graph6Error(f"trailing data: need {need} bytes, got {len(payload)}")
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if payload[k // 6] >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, tuple(rows))
